//! Deterministic random source for graph growth.
//!
//! One ChaCha12 stream per run, keyed from a 64-bit seed through the fixed
//! `seed_from_u64` expansion of `rand_core`. Both the cipher and the seed
//! expansion are pinned algorithms, so a `(n, m, seed)` triple reproduces the
//! same graph on every platform and in every future build of this crate.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

/// The single PRNG stream driving one growth run.
#[derive(Debug, Clone)]
pub struct Prng(ChaCha12Rng);

impl Prng {
    pub fn from_seed(seed: u64) -> Self {
        Self(ChaCha12Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform draw from `0..bound` by rejection, so every value has exactly
    /// the same probability (no modulo bias).
    pub fn uniform_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "uniform_below requires a positive bound");
        // 2^64 mod bound, computed in wrapping arithmetic.
        let cutoff = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= cutoff {
                return x % bound;
            }
        }
    }
}
