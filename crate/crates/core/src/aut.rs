//! Automorphisms of `UT(n, q)`: diagonal, inner and central families, their
//! compositions, and generator-image tables (the public form of a key).
//!
//! Composition is left to right throughout: for `f, g` the product `f.g`
//! applies `f` first.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ff::{AdditiveEndo, FieldElement};
use crate::numtheory::solve_mod;
use crate::ut::{UTMatrix, UTParams};

/// Conjugation by `diag(w_1, ..., w_n)`: `a_ij -> w_i^-1 a_ij w_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagonalAut {
    w: Vec<FieldElement>,
}

impl DiagonalAut {
    pub fn new(g: &UTParams, w: Vec<FieldElement>) -> Result<Self> {
        if w.len() != g.n() {
            return Err(Error::ParamMismatch(format!(
                "diagonal needs {} entries, got {}",
                g.n(),
                w.len()
            )));
        }
        for x in &w {
            g.field().check(x)?;
            if x.is_zero() {
                return Err(Error::InvalidParams("diagonal entry is zero".into()));
            }
        }
        Ok(Self { w })
    }

    pub fn w(&self) -> &[FieldElement] {
        &self.w
    }

    /// `w_i^-1 w_j` (1-based).
    pub fn ratio(&self, g: &UTParams, i: usize, j: usize) -> FieldElement {
        let f = g.field();
        f.mul(&f.inv(&self.w[i - 1]).expect("nonzero"), &self.w[j - 1])
    }

    pub fn apply(&self, g: &UTParams, x: &UTMatrix) -> Result<UTMatrix> {
        g.check(x)?;
        if self.w.len() != g.n() {
            return Err(Error::ParamMismatch("diagonal length".into()));
        }
        let f = g.field();
        let n = g.n();
        let inv: Vec<FieldElement> = self.w.iter().map(|w| f.inv(w)).collect::<Result<_>>()?;
        let mut out = Vec::with_capacity(g.num_entries());
        for i in 1..=n {
            for j in i + 1..=n {
                let a = g.get(x, i, j);
                out.push(f.mul(&f.mul(&inv[i - 1], &a), &self.w[j - 1]));
            }
        }
        g.from_entries(out)
    }
}

/// `x -> h^-1 x h`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InnerAut {
    h: UTMatrix,
}

impl InnerAut {
    pub fn new(g: &UTParams, h: UTMatrix) -> Result<Self> {
        g.check(&h)?;
        Ok(Self { h })
    }

    pub fn h(&self) -> &UTMatrix {
        &self.h
    }

    pub fn apply(&self, g: &UTParams, x: &UTMatrix) -> Result<UTMatrix> {
        g.check(x)?;
        g.check(&self.h)?;
        Ok(g.mul(&g.mul(&g.inv(&self.h), x), &self.h))
    }
}

/// Product of the `zeta_r(lambda_r)`: `x -> x (1 + sum_r lambda_r(a_{r,r+1}) e_{1,n})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CentralAut {
    lambdas: Vec<AdditiveEndo>,
}

impl CentralAut {
    pub fn new(g: &UTParams, lambdas: Vec<AdditiveEndo>) -> Result<Self> {
        if g.n() < 3 {
            return Err(Error::Unsupported(
                "central automorphisms need n >= 3".into(),
            ));
        }
        if lambdas.len() != g.n() - 1 {
            return Err(Error::ParamMismatch(format!(
                "expected {} endomorphisms, got {}",
                g.n() - 1,
                lambdas.len()
            )));
        }
        let gamma = g.field().gamma();
        if lambdas.iter().any(|l| l.matrix().len() != gamma) {
            return Err(Error::ParamMismatch(format!(
                "endomorphisms must be {gamma}x{gamma}"
            )));
        }
        Ok(Self { lambdas })
    }

    pub fn lambdas(&self) -> &[AdditiveEndo] {
        &self.lambdas
    }

    pub fn apply(&self, g: &UTParams, x: &UTMatrix) -> Result<UTMatrix> {
        if g.n() < 3 {
            return Err(Error::Unsupported(
                "central automorphisms need n >= 3".into(),
            ));
        }
        g.check(x)?;
        let f = g.field();
        let mut shift = f.zero();
        for (r, lambda) in self.lambdas.iter().enumerate() {
            let a = g.get(x, r + 1, r + 2);
            shift = f.add(&shift, &lambda.apply(f, &a)?);
        }
        let z = g.elementary(1, g.n(), shift)?;
        Ok(g.mul(x, &z))
    }
}

/// One factor of a composed automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Automorphism {
    Diagonal(DiagonalAut),
    Inner(InnerAut),
    Central(CentralAut),
}

impl Automorphism {
    pub fn apply(&self, g: &UTParams, x: &UTMatrix) -> Result<UTMatrix> {
        match self {
            Automorphism::Diagonal(d) => d.apply(g, x),
            Automorphism::Inner(i) => i.apply(g, x),
            Automorphism::Central(c) => c.apply(g, x),
        }
    }

    pub fn to_table(&self, g: &UTParams) -> Result<GenImageTable> {
        tabulate(g, |x| self.apply(g, x))
    }
}

impl From<DiagonalAut> for Automorphism {
    fn from(d: DiagonalAut) -> Self {
        Automorphism::Diagonal(d)
    }
}

impl From<InnerAut> for Automorphism {
    fn from(i: InnerAut) -> Self {
        Automorphism::Inner(i)
    }
}

impl From<CentralAut> for Automorphism {
    fn from(c: CentralAut) -> Self {
        Automorphism::Central(c)
    }
}

/// A composition of factors, applied first to last. Empty is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AutWord {
    factors: Vec<Automorphism>,
}

impl AutWord {
    pub fn new(factors: Vec<Automorphism>) -> Self {
        Self { factors }
    }

    pub fn factors(&self) -> &[Automorphism] {
        &self.factors
    }

    pub fn apply(&self, g: &UTParams, x: &UTMatrix) -> Result<UTMatrix> {
        self.factors
            .iter()
            .try_fold(x.clone(), |acc, a| a.apply(g, &acc))
    }

    pub fn to_table(&self, g: &UTParams) -> Result<GenImageTable> {
        tabulate(g, |x| self.apply(g, x))
    }
}

fn tabulate(
    g: &UTParams,
    mut image: impl FnMut(&UTMatrix) -> Result<UTMatrix>,
) -> Result<GenImageTable> {
    let images = (0..g.num_generators())
        .map(|pos| image(&g.generator(pos)))
        .collect::<Result<_>>()?;
    Ok(GenImageTable { images })
}

/// An endomorphism given by the image of each canonical generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenImageTable {
    images: Vec<UTMatrix>,
}

impl GenImageTable {
    /// Wraps images without checking that they define an automorphism;
    /// see [`GenImageTable::validate`].
    pub fn new(g: &UTParams, images: Vec<UTMatrix>) -> Result<Self> {
        if images.len() != g.num_generators() {
            return Err(Error::ParamMismatch(format!(
                "table has {} images, expected {}",
                images.len(),
                g.num_generators()
            )));
        }
        for x in &images {
            g.check(x)?;
        }
        Ok(Self { images })
    }

    pub fn identity(g: &UTParams) -> Self {
        Self {
            images: (0..g.num_generators())
                .map(|pos| g.generator(pos))
                .collect(),
        }
    }

    pub fn images(&self) -> &[UTMatrix] {
        &self.images
    }

    fn check_shape(&self, g: &UTParams) -> Result<()> {
        if self.images.len() != g.num_generators() {
            return Err(Error::ParamMismatch(format!(
                "table has {} images, expected {}",
                self.images.len(),
                g.num_generators()
            )));
        }
        Ok(())
    }

    /// Image of `x`: collect `x`, substitute each generator by its image.
    pub fn apply(&self, g: &UTParams, x: &UTMatrix) -> UTMatrix {
        let word = g.collect(x);
        self.apply_word(g, word.exps())
    }

    fn apply_word(&self, g: &UTParams, exps: &[u64]) -> UTMatrix {
        let mut acc = g.identity();
        for (img, &e) in self.images.iter().zip(exps) {
            if e != 0 {
                acc = g.mul(&acc, &g.pow(img, e));
            }
        }
        acc
    }

    /// `self` then `other`.
    pub fn compose(&self, g: &UTParams, other: &GenImageTable) -> Result<GenImageTable> {
        self.check_shape(g)?;
        other.check_shape(g)?;
        Ok(GenImageTable {
            images: self.images.iter().map(|x| other.apply(g, x)).collect(),
        })
    }

    pub fn pow(&self, g: &UTParams, e: &BigUint) -> GenImageTable {
        let mut acc = GenImageTable::identity(g);
        for i in (0..e.bits()).rev() {
            acc = acc.compose(g, &acc).expect("same shape");
            if e.bit(i) {
                acc = acc.compose(g, self).expect("same shape");
            }
        }
        acc
    }

    pub fn pow_u64(&self, g: &UTParams, e: u64) -> GenImageTable {
        self.pow(g, &BigUint::from(e))
    }

    pub fn is_identity(&self, g: &UTParams) -> bool {
        *self == GenImageTable::identity(g)
    }

    fn words(&self, g: &UTParams) -> Vec<Vec<u64>> {
        self.images
            .iter()
            .map(|x| g.collect(x).into_exps())
            .collect()
    }

    fn layer_from_words(g: &UTParams, words: &[Vec<u64>], d: usize) -> Vec<Vec<u64>> {
        let range = g.layer_range(d);
        range
            .clone()
            .map(|row| range.clone().map(|col| words[col][row]).collect())
            .collect()
    }

    /// Linear action on the distance-`d` layer: column `c` holds the
    /// distance-`d` exponents of the image of the `c`-th distance-`d`
    /// generator. Size `gamma (n - d)`.
    pub fn layer_matrix(&self, g: &UTParams, d: usize) -> Vec<Vec<u64>> {
        Self::layer_from_words(g, &self.words(g), d)
    }

    /// Checks the table maps each distance-`d` generator into the subgroup
    /// generated at distance `>= d` and that every layer matrix is
    /// invertible.
    pub fn validate(&self, g: &UTParams) -> Result<()> {
        self.layers(g).map(|_| ())
    }

    fn layers(&self, g: &UTParams) -> Result<Vec<Vec<Vec<u64>>>> {
        self.check_shape(g)?;
        let words = self.words(g);
        for (pos, gi) in g.generator_indices().iter().enumerate() {
            let start = g.layer_range(gi.d).start;
            if words[pos][..start].iter().any(|&e| e != 0) {
                return Err(Error::InvalidTable(format!(
                    "image of generator {} (distance {}) has exponents at a shallower distance",
                    pos + 1,
                    gi.d
                )));
            }
        }
        let p = g.field().p();
        (1..g.n())
            .map(|d| {
                let m = Self::layer_from_words(g, &words, d);
                if crate::numtheory::is_invertible_mod(&m, p) {
                    Ok(m)
                } else {
                    Err(Error::SingularLayer { layer: d })
                }
            })
            .collect()
    }

    /// The unique `a` with `self.apply(a) = c`, solved one layer at a time.
    pub fn invert_apply(&self, g: &UTParams, c: &UTMatrix) -> Result<UTMatrix> {
        g.check(c)?;
        let layers = self.layers(g)?;
        self.invert_with_layers(g, &layers, c)
    }

    fn invert_with_layers(
        &self,
        g: &UTParams,
        layers: &[Vec<Vec<u64>>],
        c: &UTMatrix,
    ) -> Result<UTMatrix> {
        let f = g.field();
        let p = f.p();
        let n = g.n();
        let mut alpha = vec![0u64; g.num_generators()];
        let mut residual = c.clone();
        for d in 1..n {
            let range = g.layer_range(d);
            let mut rhs = Vec::with_capacity(range.len());
            for i in 1..=n - d {
                rhs.extend_from_slice(f.coeffs(&g.get(&residual, i, i + d)));
            }
            let sol =
                solve_mod(&layers[d - 1], &rhs, p).ok_or(Error::SingularLayer { layer: d })?;
            let mut partial = g.identity();
            for (pos, &e) in range.clone().zip(&sol) {
                if e != 0 {
                    partial = g.mul(&partial, &g.pow(&self.images[pos], e));
                }
            }
            residual = g.mul(&g.inv(&partial), &residual);
            alpha[range].copy_from_slice(&sol);
        }
        if !g.is_identity(&residual) {
            return Err(Error::InvalidTable(
                "layer peeling left a nontrivial residual".into(),
            ));
        }
        Ok(g.expand_unchecked(&alpha))
    }

    /// Table of the inverse automorphism. Meaningful only when `self` is a
    /// homomorphism.
    pub fn inverse(&self, g: &UTParams) -> Result<GenImageTable> {
        let layers = self.layers(g)?;
        let images = (0..g.num_generators())
            .map(|pos| self.invert_with_layers(g, &layers, &g.generator(pos)))
            .collect::<Result<_>>()?;
        Ok(GenImageTable { images })
    }
}

/// Order of the subgroup `(IL) x| D`:
/// `q^((n^2-n-2)/2) (q-1)^(n-1) q^(gamma (n-3))`, with the last factor
/// taken as 1 for `n < 4`.
pub fn order_bound(g: &UTParams) -> BigUint {
    let n = g.n() as u32;
    let q = g.field().order();
    let gamma = g.field().gamma() as u32;
    let inner = q.pow((n * n - n - 2) / 2);
    let diag = (&q - 1u32).pow(n - 1);
    let central = if n >= 4 {
        q.pow(gamma * (n - 3))
    } else {
        BigUint::from(1u32)
    };
    inner * diag * central
}
