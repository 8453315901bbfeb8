//! Wall-clock comparison of MOR operations with El-Gamal at equal `q`.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;

use crate::attack::recover_secret;
use crate::elgamal::ElGamal;
use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::scheme::{decrypt, encrypt, keygen_with, DiagonalSampling};
use crate::ut::UTParams;

pub const OPS: [&str; 6] = [
    "keygen",
    "encrypt",
    "decrypt",
    "attack",
    "elgamal_encrypt",
    "elgamal_decrypt",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub q: BigUint,
    pub op: &'static str,
    pub trials: usize,
    pub median_ns: u128,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,q,op,trials,median_ns\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{},{}", r.n, r.q, r.op, r.trials, r.median_ns);
        }
        s
    }

    pub fn median(&self, n: usize, op: &str) -> Option<u128> {
        self.rows
            .iter()
            .find(|r| r.n == n && r.op == op)
            .map(|r| r.median_ns)
    }
}

fn median(mut xs: Vec<u128>) -> u128 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

/// One untimed warm-up run, then `trials` timed runs; trial `t` of size `s`
/// draws from seed `(s, t)`.
fn time_op<F>(size_idx: usize, op_idx: usize, trials: usize, mut f: F) -> Result<u128>
where
    F: FnMut(&mut SeededRng) -> Result<()>,
{
    let seed = |t: usize| ((size_idx as u64) << 40) ^ ((op_idx as u64) << 32) ^ t as u64;
    f(&mut SeededRng::from_seed(seed(usize::MAX >> 32)))?;
    let mut times = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rng = SeededRng::from_seed(seed(t));
        let start = Instant::now();
        f(&mut rng)?;
        times.push(start.elapsed().as_nanos());
    }
    Ok(median(times))
}

pub fn bench_run(sizes: &[UTParams], trials: usize) -> Result<BenchReport> {
    if sizes.is_empty() {
        return Err(Error::InvalidParams("no sizes to benchmark".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    let mut report = BenchReport::default();
    for (s, g) in sizes.iter().enumerate() {
        let mut rng = SeededRng::from_seed(s as u64);
        let (pk, sk) = keygen_with(g, &mut rng, None, DiagonalSampling::Distinct)?;
        let msg = g.random(&mut rng);
        let ct = encrypt(&pk, &msg, &mut rng, None)?;
        let eg = ElGamal::new(g.field().clone())?;
        let (epk, es) = eg.keygen(&mut rng, None);
        let emsg = g.field().random_nonzero(&mut rng);
        let ect = eg.encrypt(&epk, &emsg, &mut rng, None)?;

        let mut medians = [0u128; 6];
        medians[0] = time_op(s, 0, trials, |r| {
            keygen_with(g, r, None, DiagonalSampling::Distinct).map(|_| ())
        })?;
        medians[1] = time_op(s, 1, trials, |r| encrypt(&pk, &msg, r, None).map(|_| ()))?;
        medians[2] = time_op(s, 2, trials, |_| decrypt(&sk, &ct).map(|_| ()))?;
        medians[3] = time_op(s, 3, trials, |_| recover_secret(&pk).map(|_| ()))?;
        medians[4] = time_op(s, 4, trials, |r| {
            eg.encrypt(&epk, &emsg, r, None).map(|_| ())
        })?;
        medians[5] = time_op(s, 5, trials, |_| eg.decrypt(&es, &ect).map(|_| ()))?;
        for (op, &median_ns) in OPS.iter().zip(&medians) {
            report.rows.push(BenchRow {
                n: g.n(),
                q: g.field().order(),
                op,
                trials,
                median_ns,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldParams;

    fn ut(p: u64, n: usize) -> UTParams {
        UTParams::new(FieldParams::prime(p).unwrap(), n).unwrap()
    }

    #[test]
    fn csv_shape() {
        let report = bench_run(&[ut(1297, 2)], 1).unwrap();
        let csv = report.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], "n,q,op,trials,median_ns");
        for (line, op) in lines[1..].iter().zip(OPS) {
            assert!(line.starts_with(&format!("2,1297,{op},1,")), "{line}");
        }
    }

    #[test]
    fn mor_encrypt_slower_than_el_gamal() {
        let report = bench_run(&[ut(1297, 4)], 9).unwrap();
        let mor = report.median(4, "encrypt").unwrap();
        let eg = report.median(4, "elgamal_encrypt").unwrap();
        assert!(mor > eg, "MOR {mor} ns vs El-Gamal {eg} ns");
    }

    #[test]
    fn bad_input_rejected() {
        assert!(bench_run(&[], 3).is_err());
        assert!(bench_run(&[ut(7, 3)], 0).is_err());
        assert!(matches!(
            bench_run(&[ut(3, 2)], 1),
            Err(Error::ParamsTooSmall(_))
        ));
    }
}
