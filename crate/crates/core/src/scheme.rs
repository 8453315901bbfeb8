//! The MOR protocol over `UT(n, q)` with automorphisms from `(IL) x| D`.
//!
//! Public key: tables of `phi` and `phi^m`. Ciphertext of `a`:
//! `(phi^r, phi^(mr)(a))`. Decryption raises `phi^r` to `m` and inverts
//! the resulting table on the second component layer by layer.
//!
//! The scheme is textbook: ciphertexts are malleable and unauthenticated.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::aut::{
    order_bound, AutWord, Automorphism, CentralAut, DiagonalAut, GenImageTable, InnerAut,
};
use crate::error::{Error, Result};
use crate::ff::{AdditiveEndo, FieldElement};
use crate::rng::SeededRng;
use crate::ut::{UTMatrix, UTParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorPublicKey {
    pub params: UTParams,
    pub phi: GenImageTable,
    pub phi_m: GenImageTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorPrivateKey {
    pub params: UTParams,
    pub m: BigUint,
    /// Central, inner, diagonal factors of `phi`; `None` once stripped.
    pub factors: Option<AutWord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorCiphertext {
    pub phi_r: GenImageTable,
    pub c: UTMatrix,
}

/// How the diagonal factor is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalSampling {
    /// Pairwise-distinct `w_i`; needs `q > n`.
    Distinct,
    /// Independent nonzero `w_i`, for groups too small for `Distinct`.
    Unrestricted,
}

impl MorPublicKey {
    pub fn validate(&self) -> Result<()> {
        self.phi.validate(&self.params)?;
        self.phi_m.validate(&self.params)
    }
}

impl MorCiphertext {
    pub fn validate(&self, params: &UTParams) -> Result<()> {
        params.check(&self.c)?;
        self.phi_r.validate(params)
    }
}

/// Draws `[central, inner, diagonal]` (no central factor when `n = 2`).
pub fn sample_factors(
    params: &UTParams,
    rng: &mut SeededRng,
    policy: DiagonalSampling,
) -> Result<AutWord> {
    let f = params.field();
    let n = params.n();
    let mut factors: Vec<Automorphism> = Vec::with_capacity(3);
    if n >= 3 {
        let lambdas = (1..n).map(|_| AdditiveEndo::random(f, rng)).collect();
        factors.push(CentralAut::new(params, lambdas)?.into());
    }
    factors.push(InnerAut::new(params, params.random(rng))?.into());
    let w = match policy {
        DiagonalSampling::Distinct => distinct_nonzero(params, rng)?,
        DiagonalSampling::Unrestricted => (0..n).map(|_| f.random_nonzero(rng)).collect(),
    };
    factors.push(DiagonalAut::new(params, w)?.into());
    Ok(AutWord::new(factors))
}

fn distinct_nonzero(params: &UTParams, rng: &mut SeededRng) -> Result<Vec<FieldElement>> {
    let f = params.field();
    let n = params.n();
    let enough = f.order() > BigUint::from(n);
    if !enough {
        return Err(Error::ParamsTooSmall(format!(
            "F_q has fewer than {n} nonzero elements; cannot draw distinct w_i"
        )));
    }
    let mut w: Vec<FieldElement> = Vec::with_capacity(n);
    while w.len() < n {
        let x = f.random_nonzero(rng);
        if !w.contains(&x) {
            w.push(x);
        }
    }
    Ok(w)
}

fn check_exponent(name: &str, e: &BigUint, bound: &BigUint) -> Result<()> {
    if e.bits() == 0 || e >= bound {
        return Err(Error::InvalidParams(format!(
            "{name} = {e} must lie in [1, {bound})"
        )));
    }
    Ok(())
}

pub fn keygen(
    params: &UTParams,
    rng: &mut SeededRng,
    m: Option<BigUint>,
) -> Result<(MorPublicKey, MorPrivateKey)> {
    keygen_with(params, rng, m, DiagonalSampling::Distinct)
}

/// Key generation; `m` is drawn from `[2, N)` when absent, `N` the order
/// bound of `(IL) x| D`.
pub fn keygen_with(
    params: &UTParams,
    rng: &mut SeededRng,
    m: Option<BigUint>,
    policy: DiagonalSampling,
) -> Result<(MorPublicKey, MorPrivateKey)> {
    let factors = sample_factors(params, rng, policy)?;
    let bound = order_bound(params);
    let m = match m {
        Some(m) => m,
        None if bound > BigUint::from(2u32) => rng.big_range(&BigUint::from(2u32), &bound),
        None => BigUint::one(),
    };
    keygen_from_factors(params, factors, m)
}

pub fn keygen_from_factors(
    params: &UTParams,
    factors: AutWord,
    m: BigUint,
) -> Result<(MorPublicKey, MorPrivateKey)> {
    check_exponent("m", &m, &order_bound(params))?;
    let phi = factors.to_table(params)?;
    let phi_m = phi.pow(params, &m);
    let pk = MorPublicKey {
        params: params.clone(),
        phi,
        phi_m,
    };
    let sk = MorPrivateKey {
        params: params.clone(),
        m,
        factors: Some(factors),
    };
    Ok((pk, sk))
}

/// `(phi^r, phi_m^r(a))`, `r` drawn from `[1, N)` when absent.
pub fn encrypt(
    pk: &MorPublicKey,
    a: &UTMatrix,
    rng: &mut SeededRng,
    r: Option<BigUint>,
) -> Result<MorCiphertext> {
    let params = &pk.params;
    params.check(a)?;
    let bound = order_bound(params);
    let r = match r {
        Some(r) => {
            check_exponent("r", &r, &bound)?;
            r
        }
        None if bound > BigUint::one() => rng.big_range(&BigUint::one(), &bound),
        None => BigUint::one(),
    };
    let phi_r = pk.phi.pow(params, &r);
    let mask = pk.phi_m.pow(params, &r);
    Ok(MorCiphertext {
        phi_r,
        c: mask.apply(params, a),
    })
}

pub fn decrypt(sk: &MorPrivateKey, ct: &MorCiphertext) -> Result<UTMatrix> {
    let params = &sk.params;
    params
        .check(&ct.c)
        .map_err(|e| Error::MalformedCiphertext(e.to_string()))?;
    let eta = ct.phi_r.pow(params, &sk.m);
    eta.invert_apply(params, &ct.c).map_err(|e| match e {
        Error::SingularLayer { .. } | Error::InvalidTable(_) | Error::ParamMismatch(_) => {
            Error::MalformedCiphertext(e.to_string())
        }
        other => other,
    })
}

/// Random plaintext, for tests and benchmarks.
pub fn random_message<R: Rng + ?Sized>(params: &UTParams, rng: &mut R) -> UTMatrix {
    params.random(rng)
}
