//! Prime fields `Z_p` and extension fields `F_q = F_{p^gamma}` in the
//! polynomial basis, together with `Z_p`-linear endomorphisms of `F_q^+`.
//!
//! Elements are plain `Copy` values; every operation goes through the
//! owning [`FieldParams`], which holds `p` and the reduction polynomial.

use std::cell::Cell;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::error::{Error, Result};
use crate::numtheory::{add_mod, inv_mod, is_prime, mul_mod, sub_mod};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 8;

thread_local! {
    static MUL_COUNT: Cell<u64> = const { Cell::new(0) };
}

#[inline]
fn tick() {
    MUL_COUNT.with(|c| c.set(c.get() + 1));
}

/// Number of field multiplications and inversions performed on this thread.
pub fn field_op_count() -> u64 {
    MUL_COUNT.with(|c| c.get())
}

/// An element of `F_q`: coefficients of `delta_1 .. delta_gamma`, where
/// `delta_k = t^(k-1)`. Slots past `gamma` are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement {
    coeffs: [u64; MAX_DEGREE],
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The `k`-th coefficient (0-based).
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs[k]
    }

    /// Coefficient of `delta_1`, i.e. the value when `gamma = 1`.
    pub fn value(&self) -> u64 {
        self.coeffs[0]
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self
            .coeffs
            .iter()
            .rposition(|&c| c != 0)
            .map_or(1, |i| i + 1);
        if len == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            f.debug_list().entries(&self.coeffs[..len]).finish()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
}

/// The field `F_{p^gamma}`.
///
/// `modulus` is the full monic reduction polynomial, lowest degree first,
/// of length `gamma + 1`. It is empty for prime fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldParams {
    p: u64,
    gamma: usize,
    modulus: Vec<u64>,
}

impl FieldParams {
    /// The prime field `Z_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, &[])
    }

    pub fn new(p: u64, gamma: usize, modulus: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if p >= 1 << 62 {
            return Err(Error::InvalidParams(format!("{p} exceeds 2^62")));
        }
        if gamma == 0 || gamma > MAX_DEGREE {
            return Err(Error::InvalidParams(format!(
                "extension degree {gamma} outside 1..={MAX_DEGREE}"
            )));
        }
        if gamma == 1 {
            return Ok(Self {
                p,
                gamma,
                modulus: Vec::new(),
            });
        }
        if modulus.len() != gamma + 1 {
            return Err(Error::InvalidParams(format!(
                "modulus must list {} coefficients (monic, degree {gamma}), got {}",
                gamma + 1,
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParams(format!(
                "modulus coefficients must lie in [0, {p})"
            )));
        }
        if modulus[gamma] != 1 {
            return Err(Error::InvalidParams("modulus is not monic".into()));
        }
        if !poly::is_irreducible(modulus, p) {
            return Err(Error::InvalidParams(format!(
                "modulus {modulus:?} is reducible over Z_{p}"
            )));
        }
        Ok(Self {
            p,
            gamma,
            modulus: modulus.to_vec(),
        })
    }

    /// `F_{p^gamma}` with the first irreducible monic polynomial found when
    /// counting the low coefficients upward in base `p`.
    pub fn with_default_modulus(p: u64, gamma: usize) -> Result<Self> {
        if gamma == 1 {
            return Self::prime(p);
        }
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if gamma == 0 || gamma > MAX_DEGREE {
            return Err(Error::InvalidParams(format!(
                "extension degree {gamma} outside 1..={MAX_DEGREE}"
            )));
        }
        let mut cand = vec![0u64; gamma + 1];
        cand[gamma] = 1;
        // constant term must be nonzero, start there
        cand[0] = 1;
        loop {
            if poly::is_irreducible(&cand, p) {
                return Self::new(p, gamma, &cand);
            }
            let mut i = 0;
            loop {
                cand[i] += 1;
                if cand[i] < p {
                    break;
                }
                cand[i] = 0;
                i += 1;
                if i == gamma {
                    return Err(Error::InvalidParams("no irreducible polynomial".into()));
                }
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `q = p^gamma`.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.gamma as u32)
    }

    /// `q` when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::default()
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_u64(&self, v: u64) -> FieldElement {
        let mut e = FieldElement::default();
        e.coeffs[0] = v % self.p;
        e
    }

    /// The basis element `delta_{k+1} = t^k`.
    pub fn basis(&self, k: usize) -> FieldElement {
        assert!(k < self.gamma, "basis index {k} out of range");
        let mut e = FieldElement::default();
        e.coeffs[k] = 1;
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.gamma {
            return Err(Error::ParamMismatch(format!(
                "expected {} coefficients, got {}",
                self.gamma,
                coeffs.len()
            )));
        }
        let mut e = FieldElement::default();
        for (k, &c) in coeffs.iter().enumerate() {
            if c >= self.p {
                return Err(Error::ParamMismatch(format!(
                    "coefficient {c} is not reduced mod {}",
                    self.p
                )));
            }
            e.coeffs[k] = c;
        }
        Ok(e)
    }

    pub fn coeffs<'a>(&self, a: &'a FieldElement) -> &'a [u64] {
        &a.coeffs[..self.gamma]
    }

    /// True iff `a` is a reduced element of this field.
    pub fn contains(&self, a: &FieldElement) -> bool {
        a.coeffs[..self.gamma].iter().all(|&c| c < self.p)
            && a.coeffs[self.gamma..].iter().all(|&c| c == 0)
    }

    pub fn check(&self, a: &FieldElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ParamMismatch(format!(
                "{a:?} is not an element of F_{}^{}",
                self.p, self.gamma
            )))
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = FieldElement::default();
        for k in 0..self.gamma {
            out.coeffs[k] = add_mod(a.coeffs[k], b.coeffs[k], self.p);
        }
        out
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = FieldElement::default();
        for k in 0..self.gamma {
            out.coeffs[k] = sub_mod(a.coeffs[k], b.coeffs[k], self.p);
        }
        out
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    /// Multiplication by an integer, i.e. the `Z_p`-module action.
    pub fn scale(&self, a: &FieldElement, z: u64) -> FieldElement {
        tick();
        let z = z % self.p;
        let mut out = FieldElement::default();
        for k in 0..self.gamma {
            out.coeffs[k] = mul_mod(a.coeffs[k], z, self.p);
        }
        out
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        tick();
        let p = self.p;
        let g = self.gamma;
        let mut out = FieldElement::default();
        if g == 1 {
            out.coeffs[0] = mul_mod(a.coeffs[0], b.coeffs[0], p);
            return out;
        }
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for (i, slot) in prod.iter_mut().enumerate().take(2 * g - 1) {
            let lo = i.saturating_sub(g - 1);
            let hi = i.min(g - 1);
            let mut acc: u128 = 0;
            for j in lo..=hi {
                acc += a.coeffs[j] as u128 * b.coeffs[i - j] as u128;
            }
            *slot = (acc % p as u128) as u64;
        }
        for deg in (g..2 * g - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for i in 0..g {
                let sub = mul_mod(c, self.modulus[i], p);
                prod[deg - g + i] = sub_mod(prod[deg - g + i], sub, p);
            }
        }
        out.coeffs[..g].copy_from_slice(&prod[..g]);
        out
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        tick();
        if self.gamma == 1 {
            let v = inv_mod(a.coeffs[0], self.p).ok_or(Error::DivisionByZero)?;
            return Ok(self.from_u64(v));
        }
        let inv = poly::inv_mod_poly(&a.coeffs[..self.gamma], &self.modulus, self.p)
            .ok_or(Error::DivisionByZero)?;
        let mut out = FieldElement::default();
        out.coeffs[..inv.len()].copy_from_slice(&inv);
        Ok(out)
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: &FieldElement, mut e: u128) -> FieldElement {
        let mut acc = self.one();
        let mut base = *a;
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

    pub fn pow_big(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Range-checked arithmetic dispatch; `b` is ignored for `Neg`/`Inv`.
    pub fn arith(
        &self,
        kind: ArithKind,
        a: &FieldElement,
        b: &FieldElement,
    ) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match kind {
            ArithKind::Add => self.add(a, b),
            ArithKind::Sub => self.sub(a, b),
            ArithKind::Mul => self.mul(a, b),
            ArithKind::Neg => self.neg(a),
            ArithKind::Inv => self.inv(a)?,
        })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let mut e = FieldElement::default();
        for k in 0..self.gamma {
            e.coeffs[k] = rng.gen_range(0..self.p);
        }
        e
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// Every element, in base-`p` counting order. Only sensible for small `q`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let q = self.order_u64().expect("field too large to enumerate");
        (0..q).map(move |mut idx| {
            let mut e = FieldElement::default();
            for k in 0..self.gamma {
                e.coeffs[k] = idx % self.p;
                idx /= self.p;
            }
            e
        })
    }
}

/// A `Z_p`-linear map `F_q^+ -> F_q^+`, as a `gamma x gamma` matrix acting
/// on coefficient vectors. Column `i` is the image of `delta_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdditiveEndo {
    matrix: Vec<Vec<u64>>,
}

impl AdditiveEndo {
    pub fn new(field: &FieldParams, matrix: Vec<Vec<u64>>) -> Result<Self> {
        let g = field.gamma();
        if matrix.len() != g || matrix.iter().any(|r| r.len() != g) {
            return Err(Error::ParamMismatch(format!(
                "endomorphism must be {g}x{g}"
            )));
        }
        if matrix.iter().flatten().any(|&v| v >= field.p()) {
            return Err(Error::ParamMismatch(format!(
                "endomorphism entries must lie in [0, {})",
                field.p()
            )));
        }
        Ok(Self { matrix })
    }

    pub fn zero(field: &FieldParams) -> Self {
        let g = field.gamma();
        Self {
            matrix: vec![vec![0; g]; g],
        }
    }

    /// The map with `delta_i -> images[i]`.
    pub fn from_images(field: &FieldParams, images: &[FieldElement]) -> Result<Self> {
        let g = field.gamma();
        if images.len() != g {
            return Err(Error::ParamMismatch(format!("expected {g} basis images")));
        }
        let mut matrix = vec![vec![0; g]; g];
        for (col, img) in images.iter().enumerate() {
            field.check(img)?;
            for (row, line) in matrix.iter_mut().enumerate() {
                line[col] = img.coeff(row);
            }
        }
        Ok(Self { matrix })
    }

    /// Multiplication by a fixed field element.
    pub fn multiplication(field: &FieldParams, b: &FieldElement) -> Result<Self> {
        let images: Vec<_> = (0..field.gamma())
            .map(|k| field.mul(b, &field.basis(k)))
            .collect();
        Self::from_images(field, &images)
    }

    pub fn random<R: Rng + ?Sized>(field: &FieldParams, rng: &mut R) -> Self {
        let g = field.gamma();
        let matrix = (0..g)
            .map(|_| (0..g).map(|_| rng.gen_range(0..field.p())).collect())
            .collect();
        Self { matrix }
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&v| v == 0)
    }

    pub fn apply(&self, field: &FieldParams, a: &FieldElement) -> Result<FieldElement> {
        let g = field.gamma();
        if self.matrix.len() != g {
            return Err(Error::ParamMismatch(format!(
                "endomorphism is {}x{0}, field degree is {g}",
                self.matrix.len()
            )));
        }
        field.check(a)?;
        let p = field.p();
        let mut out = [0u64; MAX_DEGREE];
        for (row, line) in self.matrix.iter().enumerate() {
            let mut acc = 0u64;
            for (col, &m) in line.iter().enumerate() {
                if m != 0 {
                    tick();
                    acc = add_mod(acc, mul_mod(m, a.coeff(col), p), p);
                }
            }
            out[row] = acc;
        }
        field.from_coeffs(&out[..g])
    }
}

/// Dense polynomials over Z_p, lowest degree first.
mod poly {
    use super::*;

    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
            }
        }
        trim(out)
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                sub_mod(
                    a.get(i).copied().unwrap_or(0),
                    b.get(i).copied().unwrap_or(0),
                    p,
                )
            })
            .collect();
        trim(out)
    }

    fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod(*b.last().unwrap(), p).unwrap();
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = mul_mod(*r.last().unwrap(), lead_inv, p);
            q[shift] = c;
            for (i, &bv) in b.iter().enumerate() {
                r[shift + i] = sub_mod(r[shift + i], mul_mod(c, bv, p), p);
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    fn mul_mod_poly(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        divrem(&mul(a, b, p), f, p).1
    }

    /// `a^e mod f`.
    fn pow_mod_poly(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = divrem(a, f, p).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod_poly(&acc, &base, f, p);
            }
            base = mul_mod_poly(&base, &base, f, p);
            e >>= 1;
        }
        acc
    }

    /// Ben-Or: `f` of degree `g` is irreducible iff
    /// `gcd(x^(p^k) - x, f) = 1` for every `1 <= k <= g/2`.
    pub(super) fn is_irreducible(f: &[u64], p: u64) -> bool {
        let f = trim(f.to_vec());
        let g = f.len() - 1;
        if g == 0 {
            return false;
        }
        let x = vec![0u64, 1];
        let mut h = x.clone();
        for _ in 1..=g / 2 {
            h = pow_mod_poly(&h, p, &f, p);
            let d = gcd(&sub(&h, &x, p), &f, p);
            if d.len() > 1 {
                return false;
            }
        }
        true
    }

    /// Inverse of `a` modulo the irreducible `f`, by extended Euclid.
    pub(super) fn inv_mod_poly(a: &[u64], f: &[u64], p: u64) -> Option<Vec<u64>> {
        let (mut r0, mut r1) = (f.to_vec(), trim(a.to_vec()));
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv_mod(r0[0], p)?;
        Some(s0.iter().map(|&v| mul_mod(v, c, p)).collect())
    }
}

impl FieldParams {
    /// True iff `a` generates `F_q^x`, given the factorization of `q - 1`.
    pub fn is_primitive(&self, a: &FieldElement, factors_of_order: &[(u64, u32)]) -> bool {
        if a.is_zero() {
            return false;
        }
        let q1 = self.order() - BigUint::one();
        factors_of_order.iter().all(|&(r, _)| {
            let e = &q1 / BigUint::from(r);
            self.pow_big(a, &e) != self.one()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f4() -> FieldParams {
        FieldParams::new(2, 2, &[1, 1, 1]).unwrap()
    }

    fn f8() -> FieldParams {
        FieldParams::new(2, 3, &[1, 1, 0, 1]).unwrap()
    }

    #[test]
    fn worked_example_ratio() {
        let f = FieldParams::prime(1297).unwrap();
        let w1 = f.from_u64(624);
        let w2 = f.from_u64(155);
        let r = f.mul(&f.inv(&w1).unwrap(), &w2);
        assert_eq!(r, f.from_u64(576));
        assert_eq!(f.pow(&f.from_u64(576), 65), f.from_u64(450));
        assert_eq!(f.pow(&f.from_u64(736), 65), f.from_u64(85));
    }

    #[test]
    fn f4_t_squared() {
        let f = f4();
        let t = f.basis(1);
        // t^2 = t + 1 by dividing t^2 by t^2 + t + 1
        assert_eq!(f.mul(&t, &t), f.from_coeffs(&[1, 1]).unwrap());
    }

    #[test]
    fn identity_and_zero_power() {
        let f = f8();
        for x in f.elements() {
            assert_eq!(f.mul(&f.one(), &x), x);
            assert_eq!(f.pow(&x, 0), f.one());
        }
        assert_eq!(f.pow(&f.zero(), 0), f.one());
    }

    #[test]
    fn f8_nonzero_elements_have_order_dividing_7() {
        let f = f8();
        let nonzero: Vec<_> = f.elements().filter(|x| !x.is_zero()).collect();
        assert_eq!(nonzero.len(), 7);
        for x in nonzero {
            assert_eq!(f.pow(&x, 7), f.one());
        }
    }

    #[test]
    fn fermat_exhaustive_small_fields() {
        let fields = [
            FieldParams::prime(2).unwrap(),
            FieldParams::prime(101).unwrap(),
            FieldParams::prime(1297).unwrap(),
            f4(),
            f8(),
            FieldParams::with_default_modulus(3, 2).unwrap(),
            FieldParams::with_default_modulus(5, 3).unwrap(),
            FieldParams::with_default_modulus(2, 8).unwrap(),
            FieldParams::with_default_modulus(7, 4).unwrap(),
        ];
        for f in &fields {
            let q1 = f.order_u64().unwrap() as u128 - 1;
            for x in f.elements().filter(|x| !x.is_zero()) {
                assert_eq!(f.pow(&x, q1), f.one(), "{f:?} {x:?}");
                assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
            }
        }
    }

    #[test]
    fn fermat_sampled_large_field() {
        let f = FieldParams::with_default_modulus(251, 2).unwrap();
        let big = FieldParams::prime((1 << 61) - 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for field in [&f, &big] {
            let q1 = field.order() - BigUint::one();
            for _ in 0..200 {
                let x = field.random_nonzero(&mut rng);
                assert_eq!(field.pow_big(&x, &q1), field.one());
            }
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(FieldParams::prime(1296).is_err());
        assert!(FieldParams::new(2, 2, &[1, 0, 1]).is_err()); // (t+1)^2
        assert!(FieldParams::new(2, 2, &[1, 1, 2]).is_err());
        assert!(FieldParams::new(2, 2, &[1, 1, 0]).is_err());
        assert!(FieldParams::new(2, 4, &[1, 0, 1, 0, 1]).is_err()); // (t^2+t+1)^2
        assert!(FieldParams::new(3, 0, &[]).is_err());
        assert!(FieldParams::new(2, 4, &[1, 1, 0, 0, 1]).is_ok());
    }

    #[test]
    fn degree_four_no_roots_but_reducible() {
        // (t^2 + 1)^2 over Z_3 has no root but is reducible.
        assert!(FieldParams::new(3, 4, &[1, 0, 2, 0, 1]).is_err());
    }

    #[test]
    fn inversion_of_zero_fails() {
        let f = f4();
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
        assert_eq!(
            f.arith(ArithKind::Inv, &f.zero(), &f.zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn arith_rejects_foreign_elements() {
        let f = FieldParams::prime(7).unwrap();
        let big = FieldParams::prime(1297).unwrap().from_u64(100);
        assert!(matches!(
            f.arith(ArithKind::Add, &big, &f.one()),
            Err(Error::ParamMismatch(_))
        ));
        let ext = f4().basis(1);
        assert!(f.check(&ext).is_err());
    }

    #[test]
    fn endo_examples() {
        let f = FieldParams::prime(1297).unwrap();
        let l = AdditiveEndo::new(&f, vec![vec![984]]).unwrap();
        assert_eq!(l.apply(&f, &f.one()).unwrap(), f.from_u64(984));
        let z = AdditiveEndo::zero(&f);
        assert!(z.apply(&f, &f.from_u64(5)).unwrap().is_zero());

        let f = f4();
        let swap = AdditiveEndo::new(&f, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(swap.apply(&f, &f.basis(0)).unwrap(), f.basis(1));
        let wrong = AdditiveEndo::new(&FieldParams::prime(2).unwrap(), vec![vec![1]]).unwrap();
        assert!(wrong.apply(&f, &f.basis(0)).is_err());
    }

    #[test]
    fn multiplication_endo_matches_field_mul() {
        let f = f8();
        for b in f.elements() {
            let l = AdditiveEndo::multiplication(&f, &b).unwrap();
            for a in f.elements() {
                assert_eq!(l.apply(&f, &a).unwrap(), f.mul(&b, &a));
            }
        }
    }

    #[test]
    fn primitive_elements() {
        let f = FieldParams::prime(1297).unwrap();
        let fac = crate::numtheory::factor(1296);
        assert!(f.is_primitive(&f.from_u64(10), &fac));
        assert!(!f.is_primitive(&f.from_u64(1), &fac));
    }

    fn field_strategy() -> impl Strategy<Value = FieldParams> {
        prop_oneof![
            Just(FieldParams::prime(1297).unwrap()),
            Just(FieldParams::prime((1 << 61) - 1).unwrap()),
            Just(FieldParams::with_default_modulus(3, 5).unwrap()),
            Just(FieldParams::with_default_modulus(1297, 3).unwrap()),
            Just(FieldParams::with_default_modulus(2, 8).unwrap()),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms(f in field_strategy(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
            if !a.is_zero() {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }

        #[test]
        fn endo_is_additive(f in field_strategy(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let l = AdditiveEndo::random(&f, &mut rng);
            let (a, b) = (f.random(&mut rng), f.random(&mut rng));
            prop_assert_eq!(
                l.apply(&f, &f.add(&a, &b)).unwrap(),
                f.add(&l.apply(&f, &a).unwrap(), &l.apply(&f, &b).unwrap())
            );
        }
    }
}
