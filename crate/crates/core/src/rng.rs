//! Deterministic randomness for key generation and encryption.

use num_bigint::{BigUint, RandBigInt};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// A seedable stream: equal seeds give identical keys and ciphertexts.
#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha20Rng,
}

impl SeededRng {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            inner: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn from_entropy() -> Self {
        Self {
            inner: ChaCha20Rng::from_entropy(),
        }
    }

    /// Uniform integer in `[lo, hi)`.
    pub fn big_range(&mut self, lo: &BigUint, hi: &BigUint) -> BigUint {
        self.inner.gen_biguint_range(lo, hi)
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}
