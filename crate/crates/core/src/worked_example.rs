//! The reference key over `UT(4, 1297)` with private exponent 65.
//!
//! `phi = map1 . map2 . map3` applied left to right: a central automorphism
//! with scalar `lambda = (984, 807, 452)`, conjugation by
//! `h = a1^83 a2^462 a3^1202 a4^1209 a5^793 a6^152`, and the diagonal
//! automorphism with `w = (624, 155, 538, 126)`.

use num_bigint::BigUint;

use crate::aut::{AutWord, CentralAut, DiagonalAut, GenImageTable, InnerAut};
use crate::error::Result;
use crate::ff::{AdditiveEndo, FieldParams};
use crate::scheme::{keygen_from_factors, MorPrivateKey, MorPublicKey};
use crate::ut::{CollectedWord, UTMatrix, UTParams};

pub const P: u64 = 1297;
pub const N: usize = 4;
pub const M: u64 = 65;
pub const LAMBDA: [u64; 3] = [984, 807, 452];
pub const H_WORD: [u64; 6] = [83, 462, 1202, 1209, 793, 152];
pub const W: [u64; 4] = [624, 155, 538, 126];

/// Collected words of `phi(a_j)`.
pub const PHI: [[u64; 6]; 6] = [
    [576, 0, 0, 972, 0, 538],
    [0, 1267, 0, 1055, 383, 508],
    [0, 0, 574, 0, 1139, 558],
    [0, 0, 0, 878, 0, 118],
    [0, 0, 0, 0, 938, 1168],
    [0, 0, 0, 0, 0, 736],
];

/// Collected words of `phi^65(a_j)`.
pub const PHI_65: [[u64; 6]; 6] = [
    [450, 0, 0, 1145, 0, 618],
    [0, 1263, 0, 1269, 1242, 1093],
    [0, 0, 526, 0, 708, 279],
    [0, 0, 0, 264, 0, 1190],
    [0, 0, 0, 0, 274, 836],
    [0, 0, 0, 0, 0, 85],
];

/// Collected words of `map2(a_j)`.
pub const MAP2: [[u64; 6]; 6] = [
    [1, 0, 0, 462, 0, 1001],
    [0, 1, 0, 1214, 1202, 103],
    [0, 0, 1, 0, 835, 88],
    [0, 0, 0, 1, 0, 1202],
    [0, 0, 0, 0, 1, 1214],
    [0, 0, 0, 0, 0, 1],
];

/// Self-exponents `w_i^-1 w_(i+d)` of `map3`, in generator order.
pub const RATIOS: [u64; 6] = [576, 1267, 574, 878, 938, 736];

pub fn params() -> UTParams {
    UTParams::new(FieldParams::prime(P).expect("1297 is prime"), N).expect("n = 4")
}

pub fn map1(g: &UTParams) -> CentralAut {
    let f = g.field();
    let ls = LAMBDA
        .iter()
        .map(|&b| AdditiveEndo::new(f, vec![vec![b]]).expect("1x1 endomorphism"))
        .collect();
    CentralAut::new(g, ls).expect("n = 4")
}

pub fn h(g: &UTParams) -> UTMatrix {
    g.expand(&CollectedWord::new(H_WORD.to_vec()))
        .expect("exponents below p")
}

pub fn map2(g: &UTParams) -> InnerAut {
    InnerAut::new(g, h(g)).expect("h in UT(4, 1297)")
}

pub fn map3(g: &UTParams) -> DiagonalAut {
    let f = g.field();
    DiagonalAut::new(g, W.iter().map(|&v| f.from_u64(v)).collect()).expect("nonzero w")
}

pub fn factors(g: &UTParams) -> AutWord {
    AutWord::new(vec![map1(g).into(), map2(g).into(), map3(g).into()])
}

/// A table given by the collected words of its images.
pub fn table_from_words(g: &UTParams, words: &[[u64; 6]; 6]) -> Result<GenImageTable> {
    let images = words
        .iter()
        .map(|w| g.expand(&CollectedWord::new(w.to_vec())))
        .collect::<Result<Vec<_>>>()?;
    GenImageTable::new(g, images)
}

pub fn expected_phi(g: &UTParams) -> GenImageTable {
    table_from_words(g, &PHI).expect("valid words")
}

pub fn expected_phi_65(g: &UTParams) -> GenImageTable {
    table_from_words(g, &PHI_65).expect("valid words")
}

pub fn keypair() -> Result<(MorPublicKey, MorPrivateKey)> {
    let g = params();
    let fs = factors(&g);
    keygen_from_factors(&g, fs, BigUint::from(M))
}
