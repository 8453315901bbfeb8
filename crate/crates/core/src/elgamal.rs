//! Textbook El-Gamal over `F_q^*`, the baseline MOR reduces to on `UT(2, q)`.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldParams};
use crate::numtheory::factor;
use crate::rng::SeededRng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElGamal {
    field: FieldParams,
    base: FieldElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElGamalPublicKey {
    pub base: FieldElement,
    pub h: FieldElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElGamalCiphertext {
    pub c1: FieldElement,
    pub c2: FieldElement,
}

impl ElGamal {
    /// Uses the first primitive element found in `F_q^*`.
    pub fn new(field: FieldParams) -> Result<Self> {
        let q = field
            .order_u64()
            .ok_or_else(|| Error::Unsupported("El-Gamal baseline needs q < 2^64".into()))?;
        if q <= 3 {
            return Err(Error::ParamsTooSmall(format!(
                "El-Gamal needs q > 3, got {q}"
            )));
        }
        let factors = factor(q - 1);
        let base = field
            .elements()
            .find(|a| !a.is_zero() && field.is_primitive(a, &factors))
            .ok_or_else(|| Error::InvalidParams("no primitive element found".into()))?;
        Ok(Self { field, base })
    }

    /// Any nonzero base; the scheme then works in the subgroup it spans.
    pub fn with_base(field: FieldParams, base: FieldElement) -> Result<Self> {
        field.check(&base)?;
        if base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { field, base })
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub fn base(&self) -> FieldElement {
        self.base
    }

    fn exponent_bound(&self) -> BigUint {
        self.field.order() - 1u32
    }

    /// Secret `s` drawn from `[1, q-1)` unless supplied.
    pub fn keygen(&self, rng: &mut SeededRng, s: Option<BigUint>) -> (ElGamalPublicKey, BigUint) {
        let s = s.unwrap_or_else(|| self.sample_exponent(rng));
        let h = self.field.pow_big(&self.base, &s);
        (ElGamalPublicKey { base: self.base, h }, s)
    }

    fn sample_exponent(&self, rng: &mut SeededRng) -> BigUint {
        let hi = self.exponent_bound();
        if hi > BigUint::one() {
            rng.big_range(&BigUint::one(), &hi)
        } else {
            BigUint::one()
        }
    }

    /// `(g^r, a h^r)`.
    pub fn encrypt(
        &self,
        pk: &ElGamalPublicKey,
        a: &FieldElement,
        rng: &mut SeededRng,
        r: Option<BigUint>,
    ) -> Result<ElGamalCiphertext> {
        self.field.check(a)?;
        let r = r.unwrap_or_else(|| self.sample_exponent(rng));
        let c1 = self.field.pow_big(&pk.base, &r);
        let mask = self.field.pow_big(&pk.h, &r);
        Ok(ElGamalCiphertext {
            c1,
            c2: self.field.mul(a, &mask),
        })
    }

    /// `c2 / c1^s`.
    pub fn decrypt(&self, s: &BigUint, ct: &ElGamalCiphertext) -> Result<FieldElement> {
        self.field.check(&ct.c1)?;
        self.field.check(&ct.c2)?;
        let shared = self.field.pow_big(&ct.c1, s);
        self.field.div(&ct.c2, &shared)
    }
}
