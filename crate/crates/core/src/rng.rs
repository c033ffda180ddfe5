//! Versioned pseudo-random source for splits and synthetic data.
//!
//! Generator `chacha8-v1`: ChaCha with 8 rounds, seeded through
//! `SeedableRng::seed_from_u64` (PCG32 seed expansion). Derived draws:
//!
//! * `next_f64`: top 53 bits of `next_u64`, scaled by 2^-53, in `[0, 1)`.
//! * `below(n)`: rejection sampling on `next_u64` against the largest
//!   multiple of `n`, then reduction modulo `n`.
//! * `shuffle`: Fisher-Yates from the last index down, swapping `i` with
//!   `below(i + 1)`.
//!
//! Any change to these definitions must bump [`RNG_ALGORITHM`].

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RNG_ALGORITHM: &str = "chacha8-v1";

#[derive(Debug, Clone)]
pub struct ExperimentRng(ChaCha8Rng);

impl ExperimentRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[lo, hi]`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        (lo + (hi - lo) * self.next_f64()).clamp(lo, hi)
    }

    /// Uniform integer in `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let limit = u64::MAX - u64::MAX % n;
        loop {
            let r = self.next_u64();
            if r < limit {
                return r % n;
            }
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// Seed of the `r`-th repeat of an experiment started with `seed`.
pub fn repeat_seed(seed: u64, r: usize) -> u64 {
    seed.wrapping_add(r as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = ExperimentRng::new(42);
        let mut b = ExperimentRng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        assert_ne!(
            ExperimentRng::new(1).next_u64(),
            ExperimentRng::new(2).next_u64()
        );
    }

    #[test]
    fn draws_in_range() {
        let mut r = ExperimentRng::new(7);
        for _ in 0..10_000 {
            let x = r.next_f64();
            assert!((0.0..1.0).contains(&x));
            assert!(r.below(3) < 3);
            let u = r.uniform(0.7, 1.0);
            assert!((0.7..=1.0).contains(&u));
        }
    }

    #[test]
    fn shuffle_is_permutation() {
        let mut r = ExperimentRng::new(3);
        let mut v: Vec<usize> = (0..50).collect();
        r.shuffle(&mut v);
        let mut sorted = v.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..50).collect::<Vec<_>>());
        assert_ne!(v, sorted);
    }
}
