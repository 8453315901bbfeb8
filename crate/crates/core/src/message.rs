//! Byte strings packed into elements of `UT(n, q)` through the canonical
//! collected form.
//!
//! The collected word of an element is `S` base-p digits, one per
//! generator. A message of `len` bytes is written as the integer
//! `V = len + 256^k * int_le(msg)`, where `k` is the width of the length
//! prefix, and `V` is spread over the digits least significant first.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ut::{CollectedWord, UTMatrix, UTParams};

/// Whole bytes that fit below `p^S`, prefix included.
fn total_bytes(params: &UTParams) -> usize {
    let digits = params.num_generators() as u32;
    let space = BigUint::from(params.field().p()).pow(digits);
    let bits = space.bits().saturating_sub(1) as usize;
    bits / 8
}

/// Width of the length prefix in bytes.
fn prefix_width(total: usize) -> usize {
    let mut k = 1usize;
    // widen only while the payload could overflow the prefix
    while k < 8 && total > k && (total - k) as u128 >= 1u128 << (8 * k) {
        k += 1;
    }
    k
}

/// Largest message length in bytes the parameters accept.
pub fn capacity(params: &UTParams) -> usize {
    let total = total_bytes(params);
    total.saturating_sub(prefix_width(total))
}

pub fn encode_message(params: &UTParams, msg: &[u8]) -> Result<UTMatrix> {
    let total = total_bytes(params);
    if total < 2 {
        return Err(Error::ParamsTooSmall(format!(
            "group holds only {total} byte(s); no room for a message"
        )));
    }
    let k = prefix_width(total);
    let cap = total - k;
    if msg.len() > cap {
        return Err(Error::MessageTooLong {
            len: msg.len(),
            capacity: cap,
        });
    }
    let mut bytes = (msg.len() as u64).to_le_bytes()[..k].to_vec();
    bytes.extend_from_slice(msg);
    let mut v = BigUint::from_bytes_le(&bytes);
    let p = BigUint::from(params.field().p());
    let mut exps = Vec::with_capacity(params.num_generators());
    for _ in 0..params.num_generators() {
        let digit = (&v % &p).to_u64().unwrap_or(0);
        exps.push(digit);
        v /= &p;
    }
    debug_assert!(v.is_zero());
    params.expand(&CollectedWord::new(exps))
}

pub fn decode_message(params: &UTParams, a: &UTMatrix) -> Result<Vec<u8>> {
    params.check(a)?;
    let total = total_bytes(params);
    let k = prefix_width(total);
    let p = BigUint::from(params.field().p());
    let word = params.collect(a);
    let mut v = BigUint::zero();
    for &d in word.exps().iter().rev() {
        v = v * &p + d;
    }
    let mut bytes = v.to_bytes_le();
    if bytes.len() > total {
        return Err(Error::MalformedMessage);
    }
    bytes.resize(total, 0);
    let mut len_bytes = [0u8; 8];
    len_bytes[..k].copy_from_slice(&bytes[..k]);
    let len = u64::from_le_bytes(len_bytes) as usize;
    if len > total - k {
        return Err(Error::MalformedMessage);
    }
    if bytes[k + len..].iter().any(|&b| b != 0) {
        return Err(Error::MalformedMessage);
    }
    Ok(bytes[k..k + len].to_vec())
}
