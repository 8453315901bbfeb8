//! Versioned JSON formats for keys and ciphertexts.
//!
//! Output is canonical: keys sorted, no whitespace. A matrix is the list of
//! its strictly upper entries in row-major order, each entry a list of
//! `gamma` coefficients. Parsing checks syntax, version, ranges, and that
//! every table is a valid automorphism table.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::aut::{AutWord, Automorphism, CentralAut, DiagonalAut, GenImageTable, InnerAut};
use crate::error::{Error, Result};
use crate::ff::{AdditiveEndo, FieldElement, FieldParams};
use crate::scheme::{MorCiphertext, MorPrivateKey, MorPublicKey};
use crate::ut::{UTMatrix, UTParams};

pub const VERSION: u64 = 1;

type EntryJson = Vec<u64>;
type MatrixJson = Vec<EntryJson>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsJson {
    p: u64,
    gamma: usize,
    modulus: Vec<u64>,
    n: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum FactorJson {
    Central { lambdas: Vec<Vec<Vec<u64>>> },
    Inner { h: MatrixJson },
    Diagonal { w: Vec<EntryJson> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PublicKeyFile {
    version: u64,
    params: ParamsJson,
    phi: Vec<MatrixJson>,
    phi_m: Vec<MatrixJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PrivateKeyFile {
    version: u64,
    params: ParamsJson,
    phi: Vec<MatrixJson>,
    phi_m: Vec<MatrixJson>,
    m: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<FactorJson>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CiphertextFile {
    version: u64,
    params: ParamsJson,
    phi_r: Vec<MatrixJson>,
    c: MatrixJson,
}

fn malformed(msg: impl std::fmt::Display) -> Error {
    Error::MalformedFile(msg.to_string())
}

fn canonical<T: Serialize>(x: &T) -> Vec<u8> {
    // Value objects are BTreeMaps, so keys come out sorted
    let v = serde_json::to_value(x).expect("plain data serializes");
    serde_json::to_vec(&v).expect("value serializes")
}

fn parse<T: for<'de> Deserialize<'de>>(bytes: &[u8]) -> Result<T> {
    let value: Value = serde_json::from_slice(bytes)
        .map_err(|e| malformed(format!("{} at line {}, column {}", e, e.line(), e.column())))?;
    let version = value
        .get("version")
        .ok_or_else(|| malformed("missing \"version\" field"))?;
    let version = version
        .as_u64()
        .ok_or_else(|| malformed("\"version\" is not a nonnegative integer"))?;
    if version != VERSION {
        return Err(Error::VersionUnsupported(version));
    }
    serde_path_to_error::deserialize(value)
        .map_err(|e| malformed(format!("at {}: {}", e.path(), e.inner())))
}

fn params_to_json(g: &UTParams) -> ParamsJson {
    let f = g.field();
    ParamsJson {
        p: f.p(),
        gamma: f.gamma(),
        modulus: f.modulus().to_vec(),
        n: g.n(),
    }
}

fn params_from_json(p: &ParamsJson) -> Result<UTParams> {
    let field = FieldParams::new(p.p, p.gamma, &p.modulus).map_err(malformed)?;
    if p.gamma == 1 && !p.modulus.is_empty() {
        return Err(malformed("modulus must be empty for a prime field"));
    }
    UTParams::new(field, p.n).map_err(malformed)
}

fn entry_to_json(f: &FieldParams, a: &FieldElement) -> EntryJson {
    f.coeffs(a).to_vec()
}

fn entry_from_json(f: &FieldParams, e: &EntryJson) -> Result<FieldElement> {
    f.from_coeffs(e).map_err(malformed)
}

fn matrix_to_json(g: &UTParams, x: &UTMatrix) -> MatrixJson {
    x.entries()
        .iter()
        .map(|a| entry_to_json(g.field(), a))
        .collect()
}

fn matrix_from_json(g: &UTParams, m: &MatrixJson) -> Result<UTMatrix> {
    let entries = m
        .iter()
        .map(|e| entry_from_json(g.field(), e))
        .collect::<Result<Vec<_>>>()?;
    g.from_entries(entries).map_err(malformed)
}

fn table_to_json(g: &UTParams, t: &GenImageTable) -> Vec<MatrixJson> {
    t.images().iter().map(|x| matrix_to_json(g, x)).collect()
}

fn table_from_json(g: &UTParams, name: &str, t: &[MatrixJson]) -> Result<GenImageTable> {
    let images = t
        .iter()
        .map(|m| matrix_from_json(g, m))
        .collect::<Result<Vec<_>>>()?;
    let table = GenImageTable::new(g, images).map_err(malformed)?;
    table
        .validate(g)
        .map_err(|e| malformed(format!("{name}: {e}")))?;
    Ok(table)
}

fn factors_to_json(g: &UTParams, w: &AutWord) -> Vec<FactorJson> {
    let f = g.field();
    w.factors()
        .iter()
        .map(|a| match a {
            Automorphism::Central(c) => FactorJson::Central {
                lambdas: c.lambdas().iter().map(|l| l.matrix().to_vec()).collect(),
            },
            Automorphism::Inner(i) => FactorJson::Inner {
                h: matrix_to_json(g, i.h()),
            },
            Automorphism::Diagonal(d) => FactorJson::Diagonal {
                w: d.w().iter().map(|x| entry_to_json(f, x)).collect(),
            },
        })
        .collect()
}

fn factors_from_json(g: &UTParams, fs: &[FactorJson]) -> Result<AutWord> {
    let f = g.field();
    let factors = fs
        .iter()
        .map(|fj| -> Result<Automorphism> {
            Ok(match fj {
                FactorJson::Central { lambdas } => {
                    let ls = lambdas
                        .iter()
                        .map(|m| AdditiveEndo::new(f, m.clone()))
                        .collect::<Result<Vec<_>>>()?;
                    CentralAut::new(g, ls)?.into()
                }
                FactorJson::Inner { h } => InnerAut::new(g, matrix_from_json(g, h)?)?.into(),
                FactorJson::Diagonal { w } => {
                    let w = w
                        .iter()
                        .map(|e| entry_from_json(f, e))
                        .collect::<Result<Vec<_>>>()?;
                    DiagonalAut::new(g, w)?.into()
                }
            })
        })
        .collect::<Result<Vec<_>>>()
        .map_err(malformed)?;
    Ok(AutWord::new(factors))
}

pub fn public_key_to_bytes(pk: &MorPublicKey) -> Vec<u8> {
    let g = &pk.params;
    canonical(&PublicKeyFile {
        version: VERSION,
        params: params_to_json(g),
        phi: table_to_json(g, &pk.phi),
        phi_m: table_to_json(g, &pk.phi_m),
    })
}

pub fn public_key_from_bytes(bytes: &[u8]) -> Result<MorPublicKey> {
    let file: PublicKeyFile = parse(bytes)?;
    let params = params_from_json(&file.params)?;
    Ok(MorPublicKey {
        phi: table_from_json(&params, "phi", &file.phi)?,
        phi_m: table_from_json(&params, "phi_m", &file.phi_m)?,
        params,
    })
}

/// The private file repeats the public tables; `factors` is written only
/// when present.
pub fn private_key_to_bytes(pk: &MorPublicKey, sk: &MorPrivateKey) -> Vec<u8> {
    let g = &sk.params;
    canonical(&PrivateKeyFile {
        version: VERSION,
        params: params_to_json(g),
        phi: table_to_json(g, &pk.phi),
        phi_m: table_to_json(g, &pk.phi_m),
        m: sk.m.to_str_radix(10),
        factors: sk.factors.as_ref().map(|w| factors_to_json(g, w)),
    })
}

pub fn private_key_from_bytes(bytes: &[u8]) -> Result<(MorPublicKey, MorPrivateKey)> {
    let file: PrivateKeyFile = parse(bytes)?;
    let params = params_from_json(&file.params)?;
    let m = BigUint::parse_bytes(file.m.as_bytes(), 10)
        .ok_or_else(|| malformed("m is not a decimal integer"))?;
    let factors = file
        .factors
        .as_ref()
        .map(|fs| factors_from_json(&params, fs))
        .transpose()?;
    let pk = MorPublicKey {
        phi: table_from_json(&params, "phi", &file.phi)?,
        phi_m: table_from_json(&params, "phi_m", &file.phi_m)?,
        params: params.clone(),
    };
    let sk = MorPrivateKey { params, m, factors };
    Ok((pk, sk))
}

pub fn ciphertext_to_bytes(params: &UTParams, ct: &MorCiphertext) -> Vec<u8> {
    canonical(&CiphertextFile {
        version: VERSION,
        params: params_to_json(params),
        phi_r: table_to_json(params, &ct.phi_r),
        c: matrix_to_json(params, &ct.c),
    })
}

pub fn ciphertext_from_bytes(bytes: &[u8]) -> Result<(UTParams, MorCiphertext)> {
    let file: CiphertextFile = parse(bytes)?;
    let params = params_from_json(&file.params)?;
    let ct = MorCiphertext {
        phi_r: table_from_json(&params, "phi_r", &file.phi_r)?,
        c: matrix_from_json(&params, &file.c)?,
    };
    Ok((params, ct))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;
    use crate::scheme::{encrypt, keygen};
    use crate::worked_example as wx;

    fn ut(p: u64, gamma: usize, n: usize) -> UTParams {
        UTParams::new(FieldParams::with_default_modulus(p, gamma).unwrap(), n).unwrap()
    }

    #[test]
    fn key_round_trips() {
        let mut rng = SeededRng::from_seed(1);
        let groups = [ut(1297, 1, 4), ut(7, 1, 3), ut(3, 2, 4), ut(1297, 1, 2)];
        for i in 0..50 {
            let g = &groups[i % groups.len()];
            let (pk, sk) = keygen(g, &mut rng, None).unwrap();
            let bytes = public_key_to_bytes(&pk);
            assert_eq!(public_key_from_bytes(&bytes).unwrap(), pk);
            let bytes = private_key_to_bytes(&pk, &sk);
            let (pk2, sk2) = private_key_from_bytes(&bytes).unwrap();
            assert_eq!((pk2, sk2), (pk.clone(), sk.clone()));

            let stripped = MorPrivateKey {
                factors: None,
                ..sk.clone()
            };
            let bytes = private_key_to_bytes(&pk, &stripped);
            assert!(!String::from_utf8(bytes.clone())
                .unwrap()
                .contains("factors"));
            assert_eq!(private_key_from_bytes(&bytes).unwrap().1, stripped);
        }
    }

    #[test]
    fn ciphertext_round_trip() {
        let mut rng = SeededRng::from_seed(2);
        let g = ut(3, 2, 4);
        let (pk, _) = keygen(&g, &mut rng, None).unwrap();
        let ct = encrypt(&pk, &g.random(&mut rng), &mut rng, None).unwrap();
        let bytes = ciphertext_to_bytes(&g, &ct);
        assert_eq!(ciphertext_from_bytes(&bytes).unwrap(), (g, ct));
    }

    #[test]
    fn output_is_canonical() {
        let (pk, _) = wx::keypair().unwrap();
        let bytes = public_key_to_bytes(&pk);
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with(
            "{\"params\":{\"gamma\":1,\"modulus\":[],\"n\":4,\"p\":1297},\"phi\":[[[576],"
        ));
        assert!(!text.contains(' ') && !text.contains('\n'));
        assert!(text.ends_with(",\"version\":1}"));
        let reparsed = public_key_from_bytes(&bytes).unwrap();
        assert_eq!(public_key_to_bytes(&reparsed), bytes);
    }

    #[test]
    fn truncated_file_is_malformed() {
        let (pk, _) = wx::keypair().unwrap();
        let bytes = public_key_to_bytes(&pk);
        for cut in [0, 1, bytes.len() / 2, bytes.len() - 1] {
            assert!(matches!(
                public_key_from_bytes(&bytes[..cut]),
                Err(Error::MalformedFile(_))
            ));
        }
    }

    #[test]
    fn version_is_checked() {
        let (pk, _) = wx::keypair().unwrap();
        let text = String::from_utf8(public_key_to_bytes(&pk)).unwrap();
        let v2 = text.replace("\"version\":1", "\"version\":2");
        assert_eq!(
            public_key_from_bytes(v2.as_bytes()),
            Err(Error::VersionUnsupported(2))
        );
        let none = text.replace(",\"version\":1", "");
        assert!(matches!(
            public_key_from_bytes(none.as_bytes()),
            Err(Error::MalformedFile(_))
        ));
    }

    #[test]
    fn structural_errors_name_the_path() {
        let (pk, _) = wx::keypair().unwrap();
        let text = String::from_utf8(public_key_to_bytes(&pk)).unwrap();
        let bad = text.replacen("[[[576]", "[[[\"x\"]", 1);
        match public_key_from_bytes(bad.as_bytes()) {
            Err(Error::MalformedFile(msg)) => assert!(msg.contains("phi[0][0][0]"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let out_of_range = text.replacen("[[[576]", "[[[1297]", 1);
        assert!(matches!(
            public_key_from_bytes(out_of_range.as_bytes()),
            Err(Error::MalformedFile(_))
        ));
    }

    #[test]
    fn singular_table_rejected() {
        let (mut pk, _) = wx::keypair().unwrap();
        let g = pk.params.clone();
        let f = g.field();
        // zero the self-exponent of a1's image
        let mut images = pk.phi.images().to_vec();
        let mut e = images[0].entries().to_vec();
        e[0] = f.zero();
        images[0] = g.from_entries(e).unwrap();
        pk.phi = GenImageTable::new(&g, images).unwrap();
        match public_key_from_bytes(&public_key_to_bytes(&pk)) {
            Err(Error::MalformedFile(msg)) => assert!(msg.contains("phi: layer 1"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }
}
