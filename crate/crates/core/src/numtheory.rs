//! Integer helpers: modular arithmetic on `u64`, primality, factoring,
//! CRT, and dense linear algebra over Z_p.

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, as `(prime, multiplicity)` pairs
/// in ascending order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut f = 5u64;
    while f.saturating_mul(f) <= n {
        push(f, &mut n);
        push(f + 2, &mut n);
        f += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Combines `x = r1 (mod m1)` and `x = r2 (mod m2)` for arbitrary, possibly
/// non-coprime, moduli. Returns `None` when the system is inconsistent.
pub fn crt_pair(r1: u128, m1: u128, r2: u128, m2: u128) -> Option<(u128, u128)> {
    let g = gcd(m1, m2);
    let diff = (r2 as i128 - r1 as i128).rem_euclid(m2 as i128) as u128;
    if diff % g != 0 {
        return None;
    }
    let m2g = m2 / g;
    let lcm = m1 * m2g;
    if m2g == 1 {
        return Some((r1 % lcm, lcm));
    }
    let inv = inv_mod(((m1 / g) % m2g) as u64, m2g as u64)? as u128;
    let t = ((diff / g) % m2g) * inv % m2g;
    Some(((r1 + m1 * t) % lcm, lcm))
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Solves `matrix * x = rhs` over Z_p. Returns `None` if `matrix` is singular.
pub fn solve_mod(matrix: &[Vec<u64>], rhs: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = matrix.len();
    debug_assert_eq!(rhs.len(), n);
    let mut aug: Vec<Vec<u64>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| aug[r][col] != 0)?;
        aug.swap(col, pivot);
        let inv = inv_mod(aug[col][col], p)?;
        for v in aug[col].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for r in 0..n {
            if r != col && aug[r][col] != 0 {
                let f = aug[r][col];
                for c in col..=n {
                    let sub = mul_mod(f, aug[col][c], p);
                    aug[r][c] = sub_mod(aug[r][c], sub, p);
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n]).collect())
}

/// Rank-based invertibility test over Z_p.
pub fn is_invertible_mod(matrix: &[Vec<u64>], p: u64) -> bool {
    let n = matrix.len();
    solve_mod(matrix, &vec![0; n], p).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_sieve_below_10k() {
        let mut sieve = vec![true; 10_000];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..100 {
            if sieve[i] {
                for j in (i * i..10_000).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &expect) in sieve.iter().enumerate() {
            assert_eq!(is_prime(n as u64), expect, "n = {n}");
        }
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn factor_1296() {
        assert_eq!(factor(1296), vec![(2, 4), (3, 4)]);
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(97), vec![(97, 1)]);
    }

    #[test]
    fn crt_handles_non_coprime_moduli() {
        assert_eq!(crt_pair(2, 4, 4, 6), Some((10, 12)));
        assert_eq!(crt_pair(1, 4, 2, 6), None);
        assert_eq!(crt_pair(3, 5, 1, 7), Some((8, 35)));
        assert_eq!(crt_pair(65 % 16, 16, 65 % 81, 81), Some((65, 1296)));
    }

    #[test]
    fn inverse_and_solve() {
        assert_eq!(mul_mod(inv_mod(624, 1297).unwrap(), 155, 1297), 576);
        assert_eq!(inv_mod(6, 9), None);
        let m = vec![vec![2, 1], vec![1, 1]];
        let x = solve_mod(&m, &[3, 2], 7).unwrap();
        assert_eq!(x, vec![1, 1]);
        assert!(!is_invertible_mod(&[vec![1, 2], vec![2, 4]], 7));
    }
}
