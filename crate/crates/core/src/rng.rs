//! Seeded randomness.
//!
//! Every stochastic object in this crate is a pure function of a 64-bit
//! seed. The generator is ChaCha12 (counter-based, seekable), seeds are
//! derived from a master seed and a task index through SplitMix64, and
//! uniform/Poisson sampling is implemented directly on the raw 64-bit
//! stream so that output bits do not depend on platform math libraries.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

/// Name of the generator, recorded in experiment manifests.
pub const GENERATOR: &str = "chacha12";

/// SplitMix64 step; the standard 64-bit finalizer-style mixer.
pub fn splitmix64(state: &mut u64) {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    *state = z ^ (z >> 31);
}

/// Derive the seed for task `index` from `master`. Mixing twice keeps
/// adjacent indices uncorrelated, so scheduling order never matters.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut s = master ^ index.wrapping_mul(0xa076_1d64_78bd_642f);
    splitmix64(&mut s);
    splitmix64(&mut s);
    s
}

/// A deterministic stream of doubles and counts for one task.
pub struct Stream {
    rng: ChaCha12Rng,
}

impl Stream {
    pub fn new(seed: u64) -> Self {
        Stream { rng: ChaCha12Rng::seed_from_u64(seed) }
    }

    /// Uniform in [0, 1): top 53 bits of the raw stream.
    pub fn uniform(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.rng.next_u64() >> 11) as f64 * SCALE
    }

    /// Uniform in [lo, hi).
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Poisson sample with the given mean.
    ///
    /// Knuth's product-of-uniforms method applied to chunks of mean
    /// at most 256, summed; exact in distribution, O(mean) time, and
    /// free of the exp(-mean) underflow for large means.
    pub fn poisson(&mut self, mean: f64) -> u64 {
        assert!(mean >= 0.0 && mean.is_finite(), "poisson mean must be finite and nonnegative");
        let mut remaining = mean;
        let mut total = 0u64;
        while remaining > 0.0 {
            let chunk = if remaining > 256.0 { 256.0 } else { remaining };
            remaining -= chunk;
            let limit = libm::exp(-chunk);
            let mut product = self.uniform();
            while product >= limit {
                total += 1;
                product *= self.uniform();
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_stable_and_distinct() {
        assert_eq!(derive_seed(7, 0), derive_seed(7, 0));
        assert_ne!(derive_seed(7, 0), derive_seed(7, 1));
        assert_ne!(derive_seed(7, 0), derive_seed(8, 0));
    }

    #[test]
    fn uniform_stays_in_unit_interval() {
        let mut s = Stream::new(3);
        for _ in 0..1000 {
            let u = s.uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn poisson_mean_and_variance_match() {
        // 4000 draws at mean 600 crosses several chunk boundaries.
        let mean = 600.0;
        let n = 4000;
        let mut s = Stream::new(11);
        let draws: Vec<f64> = (0..n).map(|_| s.poisson(mean) as f64).collect();
        let m = draws.iter().sum::<f64>() / n as f64;
        let v = draws.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1) as f64;
        // mean and variance are both `mean`; allow 4 sigma.
        let tol = 4.0 * (mean / n as f64).sqrt();
        assert!((m - mean).abs() < tol, "sample mean {m} vs {mean}");
        assert!((v / mean - 1.0).abs() < 0.15, "sample variance {v} vs {mean}");
    }

    #[test]
    fn poisson_zero_mean_is_zero() {
        let mut s = Stream::new(1);
        assert_eq!(s.poisson(0.0), 0);
    }
}
