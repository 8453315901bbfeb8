//! Recovering MOR secrets from public data.
//!
//! On every layer `G_d / G_(d+1)` an automorphism of `(IL) x| D` acts by
//! the diagonal ratios `w_i^-1 w_(i+d)`, so `phi` and `phi^m` expose
//! `k` and `k^m` for each slot. Field discrete logs give `m` modulo the
//! order `L` of the layer action. The rest of `m` lives in the unipotent
//! automorphism `phi^L`, whose powers are read off additively.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::aut::{order_bound, GenImageTable};
use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldParams};
use crate::numtheory::{crt_pair, factor};
use crate::scheme::MorPublicKey;
use crate::ut::{GenIndex, UTMatrix, UTParams};

/// The `(i, i+d)` entry of `phi` and `phi^m` on `1 + e_(i, i+d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentPair {
    pub k: FieldElement,
    pub k_prime: FieldElement,
    pub gen: GenIndex,
}

/// `base^residue = target`, `modulus = ord(base)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DlpResult {
    pub residue: u64,
    pub modulus: u64,
}

fn slot_pairs(g: &UTParams, phi: &GenImageTable, phi_m: &GenImageTable) -> Vec<ExponentPair> {
    let mut out = Vec::new();
    for (pos, gi) in g.generator_indices().iter().enumerate() {
        if gi.k != 1 {
            continue;
        }
        let (i, j) = (gi.i, gi.i + gi.d);
        let k = g.get(&phi.images()[pos], i, j);
        let k_prime = g.get(&phi_m.images()[pos], i, j);
        if !k.is_zero() && !k_prime.is_zero() {
            out.push(ExponentPair {
                k,
                k_prime,
                gen: *gi,
            });
        }
    }
    out
}

/// One pair per matrix slot `(i, i+d)`, in canonical order.
pub fn extract_pairs(pk: &MorPublicKey) -> Vec<ExponentPair> {
    slot_pairs(&pk.params, &pk.phi, &pk.phi_m)
}

fn group_order(f: &FieldParams) -> Result<u64> {
    let q = f
        .order_u64()
        .ok_or_else(|| Error::Unsupported("discrete logs need q < 2^64".into()))?;
    Ok(q - 1)
}

/// Multiplicative order of a nonzero `a`, given the factored group order.
pub fn element_order(f: &FieldParams, a: &FieldElement, group: u64, factors: &[(u64, u32)]) -> u64 {
    let mut ord = group;
    for &(p, _) in factors {
        while ord % p == 0 && f.pow(a, (ord / p) as u128) == f.one() {
            ord /= p;
        }
    }
    ord
}

/// Discrete log in a group of prime order `p` by baby-step giant-step.
fn bsgs(f: &FieldParams, base: &FieldElement, target: &FieldElement, p: u64) -> Option<u64> {
    let step = (p as f64).sqrt().ceil() as u64;
    let step = step.max(1);
    let mut baby: HashMap<FieldElement, u64> = HashMap::with_capacity(step as usize);
    let mut cur = f.one();
    for j in 0..step {
        baby.entry(cur).or_insert(j);
        cur = f.mul(&cur, base);
    }
    let giant = f.inv(&f.pow(base, step as u128)).ok()?;
    let mut gamma = *target;
    for i in 0..=step {
        if let Some(&j) = baby.get(&gamma) {
            let x = i * step + j;
            if x < p {
                return Some(x);
            }
        }
        gamma = f.mul(&gamma, &giant);
    }
    None
}

/// Pohlig-Hellman over the factorization of `ord(base)`, BSGS in each
/// prime-order piece.
pub fn solve_dlp(f: &FieldParams, base: &FieldElement, target: &FieldElement) -> Result<DlpResult> {
    f.check(base)?;
    f.check(target)?;
    if base.is_zero() || target.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let group = group_order(f)?;
    let factors = factor(group);
    let ord = element_order(f, base, group, &factors);
    let (mut res, mut modulus) = (0u128, 1u128);
    for (p, e) in factor(ord) {
        let pe = p.pow(e);
        let cof = (ord / pe) as u128;
        let gb = f.pow(base, cof);
        let hb = f.pow(target, cof);
        // gamma generates the order-p subgroup
        let gamma = f.pow(&gb, (pe / p) as u128);
        let gb_inv = f.inv(&gb)?;
        let mut x = 0u64;
        let mut pk = 1u64;
        for k in 0..e {
            let shifted = f.mul(&hb, &f.pow(&gb_inv, x as u128));
            let hk = f.pow(&shifted, (pe / pk / p) as u128);
            let dk = bsgs(f, &gamma, &hk, p).ok_or(Error::NoSolution)?;
            x += dk * pk;
            if k + 1 < e {
                pk *= p;
            }
        }
        let (r, m) = crt_pair(res, modulus, x as u128, pe as u128).ok_or(Error::NoSolution)?;
        res = r;
        modulus = m;
    }
    let residue = res as u64;
    if f.pow(base, residue as u128) != *target {
        return Err(Error::NoSolution);
    }
    Ok(DlpResult {
        residue,
        modulus: ord,
    })
}

/// Order `L` of the layer action of `phi`: lcm of the orders of its slot
/// ratios.
fn layer_order(g: &UTParams, phi: &GenImageTable) -> Result<u64> {
    let f = g.field();
    let group = group_order(f)?;
    let factors = factor(group);
    let mut l = 1u128;
    for pair in slot_pairs(g, phi, phi) {
        let o = element_order(f, &pair.k, group, &factors) as u128;
        l = l / crate::numtheory::gcd(l, o) * o;
    }
    Ok(l as u64)
}

/// Leading deviation of an automorphism acting trivially on every layer.
/// Returns `(level, source, target)`: the smallest distance shift at which
/// some generator image picks up a nonzero exponent.
fn leading_coordinate(g: &UTParams, words: &[Vec<u64>]) -> Result<Option<(usize, usize, usize)>> {
    let gens = g.generator_indices();
    let mut best: Option<(usize, usize, usize)> = None;
    for (j, w) in words.iter().enumerate() {
        for (c, &e) in w.iter().enumerate() {
            let expected = u64::from(c == j);
            if gens[c].d <= gens[j].d {
                if e != expected {
                    return Err(Error::AttackFailed(
                        "automorphism is not unipotent on the layers".into(),
                    ));
                }
                continue;
            }
            if e != 0 {
                let level = gens[c].d - gens[j].d;
                if best.is_none_or(|(l, _, _)| level < l) {
                    best = Some((level, j, c));
                }
            }
        }
    }
    Ok(best)
}

fn table_words(g: &UTParams, t: &GenImageTable) -> Vec<Vec<u64>> {
    t.images()
        .iter()
        .map(|x| g.collect(x).into_exps())
        .collect()
}

/// Solves `psi^t = tau` for unipotent `psi`, one base-p digit per level.
/// Returns `(t, ord(psi))`.
fn unipotent_log(
    g: &UTParams,
    mut psi: GenImageTable,
    mut tau: GenImageTable,
) -> Result<(BigUint, BigUint)> {
    let p = g.field().p();
    let prime = FieldParams::prime(p)?;
    let mut t = BigUint::zero();
    let mut scale = BigUint::one();
    for _ in 0..g.n() {
        let psi_words = table_words(g, &psi);
        let Some((level, j, c)) = leading_coordinate(g, &psi_words)? else {
            if !tau.is_identity(g) {
                return Err(Error::AttackFailed("phi_m is not a power of phi".into()));
            }
            return Ok((t, scale));
        };
        let tau_words = table_words(g, &tau);
        if let Some((tl, _, _)) = leading_coordinate(g, &tau_words)? {
            if tl < level {
                return Err(Error::AttackFailed("phi_m is not a power of phi".into()));
            }
        }
        let a = prime.from_u64(psi_words[j][c]);
        let b = prime.from_u64(tau_words[j][c]);
        let digit = prime.div(&b, &a)?.value();
        if digit != 0 {
            let back = psi.inverse(g)?.pow_u64(g, digit);
            tau = tau.compose(g, &back)?;
        }
        t += &scale * digit;
        scale *= p;
        psi = psi.pow_u64(g, p);
    }
    Err(Error::AttackFailed(
        "unipotent part did not terminate".into(),
    ))
}

/// Order of an automorphism in `(IL) x| D`.
pub fn automorphism_order(g: &UTParams, phi: &GenImageTable) -> Result<BigUint> {
    phi.validate(g)?;
    let l = layer_order(g, phi)?;
    let psi = phi.pow_u64(g, l);
    let (_, ord_psi) = unipotent_log(g, psi, GenImageTable::identity(g))?;
    Ok(ord_psi * l)
}

/// The least positive `m` with `phi^m = phi_m`.
pub fn recover_secret(pk: &MorPublicKey) -> Result<BigUint> {
    let g = &pk.params;
    pk.validate()?;
    let f = g.field();
    let (mut m0, mut l) = (0u128, 1u128);
    for pair in extract_pairs(pk) {
        let r = solve_dlp(f, &pair.k, &pair.k_prime)
            .map_err(|e| Error::AttackFailed(format!("slot {:?}: {e}", pair.gen)))?;
        (m0, l) = crt_pair(m0, l, r.residue as u128, r.modulus as u128)
            .ok_or_else(|| Error::AttackFailed("slot residues are inconsistent".into()))?;
    }
    let (m0, l) = (m0 as u64, l as u64);
    let psi = pk.phi.pow_u64(g, l);
    let tau = pk.phi.pow_u64(g, m0).inverse(g)?.compose(g, &pk.phi_m)?;
    let (t, ord_psi) = unipotent_log(g, psi, tau)?;
    let mut m = t * l + m0;
    if m.is_zero() {
        m = ord_psi * l;
    }
    if m >= order_bound(g) || pk.phi.pow(g, &m) != pk.phi_m {
        return Err(Error::AttackFailed(format!(
            "candidate m = {m} does not verify"
        )));
    }
    Ok(m)
}

/// `m mod p` from the first nonzero superdiagonal entry of `g` and `g^m`.
pub fn attack_inner_only(params: &UTParams, g: &UTMatrix, g_m: &UTMatrix) -> Result<u64> {
    params.check(g)?;
    params.check(g_m)?;
    let n = params.n();
    let i = (1..n)
        .find(|&i| !params.get(g, i, i + 1).is_zero())
        .ok_or(Error::AllSuperdiagonalZero)?;
    let a = params.get(g, i, i + 1);
    let b = params.get(g_m, i, i + 1);
    coefficient_ratio(params.field(), &a, &b)
}

/// `m mod p` for central-only tables, from the `e_(1,n)` offset of a
/// superdiagonal generator image.
pub fn attack_central_only(
    params: &UTParams,
    phi: &GenImageTable,
    phi_m: &GenImageTable,
) -> Result<u64> {
    let n = params.n();
    if n < 3 {
        return Err(Error::Unsupported(
            "central automorphisms need n >= 3".into(),
        ));
    }
    let range = params.layer_range(1);
    let pos = range
        .clone()
        .find(|&pos| !params.get(&phi.images()[pos], 1, n).is_zero())
        .ok_or(Error::AllCentralOffsetsZero)?;
    let b = params.get(&phi.images()[pos], 1, n);
    let b_prime = params.get(&phi_m.images()[pos], 1, n);
    coefficient_ratio(params.field(), &b, &b_prime)
}

/// The `m` in `Z_p` with `b = m a`, coefficient-wise.
fn coefficient_ratio(f: &FieldParams, a: &FieldElement, b: &FieldElement) -> Result<u64> {
    let prime = FieldParams::prime(f.p())?;
    let ac = f.coeffs(a);
    let bc = f.coeffs(b);
    let k = ac.iter().position(|&x| x != 0).ok_or(Error::NoSolution)?;
    let m = prime.div(&prime.from_u64(bc[k]), &prime.from_u64(ac[k]))?;
    for (&x, &y) in ac.iter().zip(bc) {
        if prime.mul(&m, &prime.from_u64(x)) != prime.from_u64(y) {
            return Err(Error::NoSolution);
        }
    }
    Ok(m.value())
}
