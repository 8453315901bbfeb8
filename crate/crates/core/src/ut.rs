//! The group `UT(n, q)` of upper unitriangular matrices, its canonical
//! polycyclic generating sequence, and collection into normal-form words.
//!
//! Generators are `1 + delta_k e_{i,i+d}`, ordered by diagonal distance
//! `d`, then row `i`, then basis index `k`. For `n = 4`, `gamma = 1` this is
//! `a_1 = 1+e12, a_2 = 1+e23, a_3 = 1+e34, a_4 = 1+e13, a_5 = 1+e24,
//! a_6 = 1+e14`. Every generator has relative order `p`.

use std::ops::Range;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldParams};

/// Label of a polycyclic generator `1 + delta_k e_{i,i+d}` (all 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenIndex {
    pub d: usize,
    pub i: usize,
    pub k: usize,
}

/// An element of `UT(n, q)`: the `n(n-1)/2` entries strictly above the
/// diagonal, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UTMatrix {
    entries: Vec<FieldElement>,
}

impl UTMatrix {
    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }
}

/// Exponents over the canonical generator sequence, each in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CollectedWord {
    exps: Vec<u64>,
}

impl CollectedWord {
    pub fn new(exps: Vec<u64>) -> Self {
        Self { exps }
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn into_exps(self) -> Vec<u64> {
        self.exps
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UTParams {
    field: FieldParams,
    n: usize,
    row_offset: Vec<usize>,
    gens: Vec<GenIndex>,
}

impl UTParams {
    pub fn new(field: FieldParams, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("matrix dimension {n} < 2")));
        }
        if n > 64 {
            return Err(Error::InvalidParams(format!("matrix dimension {n} > 64")));
        }
        let mut row_offset = Vec::with_capacity(n);
        let mut acc = 0;
        for i in 0..n {
            row_offset.push(acc);
            acc += n - 1 - i;
        }
        let mut gens = Vec::new();
        for d in 1..n {
            for i in 1..=n - d {
                for k in 1..=field.gamma() {
                    gens.push(GenIndex { d, i, k });
                }
            }
        }
        Ok(Self {
            field,
            n,
            row_offset,
            gens,
        })
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n(n-1)/2`.
    pub fn num_entries(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// `gamma * n(n-1)/2`.
    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generator_indices(&self) -> &[GenIndex] {
        &self.gens
    }

    /// Positions in the generator sequence of all generators at distance `d`.
    pub fn layer_range(&self, d: usize) -> Range<usize> {
        assert!(d >= 1 && d < self.n, "distance {d} out of range");
        let g = self.field.gamma();
        let start: usize = (1..d).map(|dd| (self.n - dd) * g).sum();
        start..start + (self.n - d) * g
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        self.row_offset[i] + (j - i - 1)
    }

    pub fn identity(&self) -> UTMatrix {
        UTMatrix {
            entries: vec![self.field.zero(); self.num_entries()],
        }
    }

    pub fn from_entries(&self, entries: Vec<FieldElement>) -> Result<UTMatrix> {
        if entries.len() != self.num_entries() {
            return Err(Error::ParamMismatch(format!(
                "expected {} entries, got {}",
                self.num_entries(),
                entries.len()
            )));
        }
        for e in &entries {
            self.field.check(e)?;
        }
        Ok(UTMatrix { entries })
    }

    /// `1 + a e_{ij}` (1-based, `i < j`).
    pub fn elementary(&self, i: usize, j: usize, a: FieldElement) -> Result<UTMatrix> {
        if !(1 <= i && i < j && j <= self.n) {
            return Err(Error::ParamMismatch(format!(
                "position ({i},{j}) is not above the diagonal of a {0}x{0} matrix",
                self.n
            )));
        }
        self.field.check(&a)?;
        let mut x = self.identity();
        let k = self.idx(i - 1, j - 1);
        x.entries[k] = a;
        Ok(x)
    }

    /// Entry `a_{ij}` (1-based). Diagonal entries read as 1, below as 0.
    pub fn get(&self, x: &UTMatrix, i: usize, j: usize) -> FieldElement {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => x.entries[self.idx(i - 1, j - 1)],
            std::cmp::Ordering::Equal => self.field.one(),
            std::cmp::Ordering::Greater => self.field.zero(),
        }
    }

    pub fn check(&self, x: &UTMatrix) -> Result<()> {
        if x.entries.len() != self.num_entries() {
            return Err(Error::ParamMismatch(format!(
                "matrix has {} entries, UT({}, q) needs {}",
                x.entries.len(),
                self.n,
                self.num_entries()
            )));
        }
        x.entries.iter().try_for_each(|e| self.field.check(e))
    }

    pub fn is_identity(&self, x: &UTMatrix) -> bool {
        x.entries.iter().all(FieldElement::is_zero)
    }

    pub fn mul(&self, x: &UTMatrix, y: &UTMatrix) -> UTMatrix {
        let f = &self.field;
        let n = self.n;
        let mut out = Vec::with_capacity(self.num_entries());
        for i in 0..n {
            for j in i + 1..n {
                let mut acc = f.add(&x.entries[self.idx(i, j)], &y.entries[self.idx(i, j)]);
                for k in i + 1..j {
                    let a = &x.entries[self.idx(i, k)];
                    let b = &y.entries[self.idx(k, j)];
                    if !a.is_zero() && !b.is_zero() {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                out.push(acc);
            }
        }
        UTMatrix { entries: out }
    }

    /// Checked product.
    pub fn try_mul(&self, x: &UTMatrix, y: &UTMatrix) -> Result<UTMatrix> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn inv(&self, x: &UTMatrix) -> UTMatrix {
        let f = &self.field;
        let n = self.n;
        let mut z = self.identity();
        for i in (0..n).rev() {
            for j in i + 1..n {
                let mut acc = x.entries[self.idx(i, j)];
                for k in i + 1..j {
                    let a = &x.entries[self.idx(i, k)];
                    let b = &z.entries[self.idx(k, j)];
                    if !a.is_zero() && !b.is_zero() {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                let at = self.idx(i, j);
                z.entries[at] = f.neg(&acc);
            }
        }
        z
    }

    pub fn pow(&self, x: &UTMatrix, mut e: u64) -> UTMatrix {
        let mut acc = self.identity();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn pow_big(&self, x: &UTMatrix, e: &BigUint) -> UTMatrix {
        let mut acc = self.identity();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(&self, x: &UTMatrix, y: &UTMatrix) -> UTMatrix {
        let xi = self.inv(x);
        let yi = self.inv(y);
        self.mul(&self.mul(&xi, &yi), &self.mul(x, y))
    }

    /// True iff `x = 1 + k e_{1,n}`.
    pub fn is_central(&self, x: &UTMatrix) -> bool {
        let corner = self.idx(0, self.n - 1);
        x.entries
            .iter()
            .enumerate()
            .all(|(k, e)| k == corner || e.is_zero())
    }

    /// The generator at position `pos` of the canonical sequence.
    pub fn generator(&self, pos: usize) -> UTMatrix {
        let g = self.gens[pos];
        self.elementary(g.i, g.i + g.d, self.field.basis(g.k - 1))
            .expect("generator index in range")
    }

    pub fn generators(&self) -> Vec<(GenIndex, UTMatrix)> {
        (0..self.gens.len())
            .map(|pos| (self.gens[pos], self.generator(pos)))
            .collect()
    }

    /// Collected word of `x`, by peeling one superdiagonal at a time.
    pub fn collect(&self, x: &UTMatrix) -> CollectedWord {
        let f = &self.field;
        let g = f.gamma();
        let n = self.n;
        let mut r = x.clone();
        let mut exps = Vec::with_capacity(self.num_generators());
        for d in 1..n {
            let layer: Vec<FieldElement> =
                (0..n - d).map(|i| r.entries[self.idx(i, i + d)]).collect();
            for c in &layer {
                exps.extend_from_slice(&f.coeffs(c)[..g]);
            }
            // r <- (1 - c_last e) ... (1 - c_first e) r
            for (i, c) in layer.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let j = i + d;
                let at = self.idx(i, j);
                r.entries[at] = f.sub(&r.entries[at], c);
                for col in j + 1..n {
                    let src = r.entries[self.idx(j, col)];
                    if !src.is_zero() {
                        let dst = self.idx(i, col);
                        r.entries[dst] = f.sub(&r.entries[dst], &f.mul(c, &src));
                    }
                }
            }
        }
        debug_assert!(self.is_identity(&r));
        CollectedWord { exps }
    }

    /// The product `a_1^{e_1} a_2^{e_2} ...` in canonical order.
    pub fn expand(&self, w: &CollectedWord) -> Result<UTMatrix> {
        if w.exps.len() != self.num_generators() {
            return Err(Error::ParamMismatch(format!(
                "word has {} exponents, expected {}",
                w.exps.len(),
                self.num_generators()
            )));
        }
        let p = self.field.p();
        if let Some((position, &exponent)) = w.exps.iter().enumerate().find(|(_, &e)| e >= p) {
            return Err(Error::ExponentOutOfRange {
                position,
                exponent,
                bound: p,
            });
        }
        Ok(self.expand_unchecked(&w.exps))
    }

    pub(crate) fn expand_unchecked(&self, exps: &[u64]) -> UTMatrix {
        let f = &self.field;
        let mut m = self.identity();
        for (gi, &e) in self.gens.iter().zip(exps) {
            if e == 0 {
                continue;
            }
            let c = f.scale(&f.basis(gi.k - 1), e);
            self.right_mul_elementary(&mut m, gi.i - 1, gi.i - 1 + gi.d, &c);
        }
        m
    }

    /// `m <- m (1 + c e_{ij})`, 0-based.
    fn right_mul_elementary(&self, m: &mut UTMatrix, i: usize, j: usize, c: &FieldElement) {
        let f = &self.field;
        let at = self.idx(i, j);
        m.entries[at] = f.add(&m.entries[at], c);
        for row in 0..i {
            let src = m.entries[self.idx(row, i)];
            if !src.is_zero() {
                let dst = self.idx(row, j);
                m.entries[dst] = f.add(&m.entries[dst], &f.mul(&src, c));
            }
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> UTMatrix {
        UTMatrix {
            entries: (0..self.num_entries())
                .map(|_| self.field.random(rng))
                .collect(),
        }
    }

    /// Every element of the group. Only sensible for tiny `(n, q)`.
    pub fn elements(&self) -> Vec<UTMatrix> {
        let field_elems: Vec<FieldElement> = self.field.elements().collect();
        let mut out = vec![self.identity()];
        for slot in 0..self.num_entries() {
            let mut next = Vec::with_capacity(out.len() * field_elems.len());
            for m in &out {
                for e in &field_elems {
                    let mut m2 = m.clone();
                    m2.entries[slot] = *e;
                    next.push(m2);
                }
            }
            out = next;
        }
        out
    }

    /// Full `n x n` matrix, for display and cross-checks.
    pub fn to_dense(&self, x: &UTMatrix) -> Vec<Vec<FieldElement>> {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.get(x, i, j)).collect())
            .collect()
    }
}
