//! The growth pair `(g, G)`: a positive C¹ function with power-like
//! logarithmic slope, and its primitive `G(t) = ∫₀ᵗ g(s) ds`.
//!
//! `G` is the Young function driving capacity penalties; `g` appears in
//! growth bounds for the estimated capacity density. Evaluation of `G`
//! goes through cached cumulative quadrature so it is both accurate
//! (absolute tolerance 1e-12) and cheap enough for inner energy loops.

use alloc::format;
use alloc::vec::Vec;

use crate::interp::log_space;
use crate::quad::adaptive_simpson;
use crate::{Error, Result};

const CHECKPOINT_LO: f64 = 1e-9;
const CHECKPOINT_HI: f64 = 1e9;
const CHECKPOINTS: usize = 1024;

/// Parametric family for `g`.
#[derive(Debug, Clone, PartialEq)]
pub enum GrowthSpec {
    /// g(t) = coef * t^q, so t g'(t)/g(t) = q exactly.
    Power { q: f64, coef: f64 },
    /// g(t) = coef * t^q * (1 + ln(1 + t))^r, with logarithmic slope in [q, q + ~0.32 r].
    LogPower { q: f64, r: f64, coef: f64 },
}

impl GrowthSpec {
    pub fn g(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        match *self {
            GrowthSpec::Power { q, coef } => coef * libm::pow(t, q),
            GrowthSpec::LogPower { q, r, coef } => {
                coef * libm::pow(t, q) * libm::pow(1.0 + libm::log1p(t), r)
            }
        }
    }

    pub fn g_prime(&self, t: f64) -> f64 {
        debug_assert!(t > 0.0);
        match *self {
            GrowthSpec::Power { q, coef } => coef * q * libm::pow(t, q - 1.0),
            GrowthSpec::LogPower { q, r, coef } => {
                let l = 1.0 + libm::log1p(t);
                coef * libm::pow(t, q - 1.0) * libm::pow(l, r - 1.0) * (q * l + r * t / (1.0 + t))
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            GrowthSpec::Power { q, coef } => q > 0.0 && coef > 0.0,
            GrowthSpec::LogPower { q, r, coef } => q > 0.0 && r >= 0.0 && coef > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("growth spec parameters out of range: {self:?}")))
        }
    }
}

/// `g` together with slope bounds and the cached primitive `G`.
#[derive(Debug, Clone)]
pub struct GrowthFunction {
    spec: GrowthSpec,
    /// Lower bound on t g'(t)/g(t).
    pub delta: f64,
    /// Upper bound on t g'(t)/g(t).
    pub g0: f64,
    checkpoints: Vec<f64>,
    cumulative: Vec<f64>,
}

impl GrowthFunction {
    pub fn new(spec: GrowthSpec) -> Result<Self> {
        spec.validate()?;
        let (delta, g0) = slope_bounds(&spec);
        let checkpoints = log_space(CHECKPOINT_LO, CHECKPOINT_HI, CHECKPOINTS);
        let mut cumulative = Vec::with_capacity(CHECKPOINTS);
        let head = adaptive_simpson(&|s| spec.g(s), 0.0, checkpoints[0], 1e-15);
        cumulative.push(head);
        for i in 1..CHECKPOINTS {
            let seg = adaptive_simpson(&|s| spec.g(s), checkpoints[i - 1], checkpoints[i], 1e-15);
            let prev = cumulative[i - 1];
            cumulative.push(prev + seg);
        }
        Ok(GrowthFunction { spec, delta, g0, checkpoints, cumulative })
    }

    pub fn spec(&self) -> &GrowthSpec {
        &self.spec
    }

    pub fn g(&self, t: f64) -> f64 {
        self.spec.g(t)
    }

    pub fn g_prime(&self, t: f64) -> f64 {
        self.spec.g_prime(t)
    }

    /// G(t) = ∫₀ᵗ g(s) ds by cached cumulative quadrature.
    pub fn big_g(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        if t == 0.0 {
            return 0.0;
        }
        if t <= self.checkpoints[0] {
            return adaptive_simpson(&|s| self.spec.g(s), 0.0, t, 1e-15);
        }
        let i = match self.checkpoints.binary_search_by(|v| v.partial_cmp(&t).unwrap()) {
            Ok(i) => return self.cumulative[i],
            Err(i) => i - 1,
        };
        if i + 1 == self.checkpoints.len() {
            // beyond the cache: integrate the tail from the last checkpoint
            return self.cumulative[i]
                + adaptive_simpson(&|s| self.spec.g(s), self.checkpoints[i], t, 1e-13);
        }
        self.cumulative[i] + adaptive_simpson(&|s| self.spec.g(s), self.checkpoints[i], t, 1e-14)
    }

    /// Doubling bound for G derived from tg(t) <= (1 + g0) G(t):
    /// G(2t) <= 2^(1+g0) G(t).
    pub fn doubling_bound(&self) -> f64 {
        libm::exp2(1.0 + self.g0)
    }
}

fn slope_bounds(spec: &GrowthSpec) -> (f64, f64) {
    match *spec {
        GrowthSpec::Power { q, .. } => (q, q),
        GrowthSpec::LogPower { q, r, .. } => {
            // infimum of the slope is q (attained in both limits); the supremum
            // of r·t/((1+t)(1+ln(1+t))) is found by sampling.
            let mut sup = q;
            for t in log_space(1e-6, 1e8, 4000) {
                let s = q + r * t / ((1.0 + t) * (1.0 + libm::log1p(t)));
                if s > sup {
                    sup = s;
                }
            }
            (q, sup * (1.0 + 1e-9))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::log_space;

    fn samples() -> Vec<f64> {
        log_space(1e-4, 1e4, 220)
    }

    #[test]
    fn slope_ratio_stays_in_bounds() {
        for spec in [
            GrowthSpec::Power { q: 1.0, coef: 1.0 },
            GrowthSpec::Power { q: 2.3, coef: 0.7 },
            GrowthSpec::LogPower { q: 1.5, r: 1.0, coef: 1.0 },
        ] {
            let gf = GrowthFunction::new(spec).unwrap();
            for t in samples() {
                let ratio = t * gf.g_prime(t) / gf.g(t);
                assert!(
                    ratio >= gf.delta - 1e-9 && ratio <= gf.g0 + 1e-9,
                    "ratio {ratio} outside [{}, {}] at t={t}",
                    gf.delta,
                    gf.g0
                );
            }
        }
    }

    #[test]
    fn primitive_sandwich_and_ratio_monotonicity() {
        let gf = GrowthFunction::new(GrowthSpec::LogPower { q: 1.2, r: 0.8, coef: 1.0 }).unwrap();
        let ts = samples();
        for &t in &ts {
            let big = gf.big_g(t);
            let tg = t * gf.g(t);
            assert!(tg / (1.0 + gf.g0) <= big * (1.0 + 1e-9), "lower sandwich at t={t}");
            assert!(big <= tg * (1.0 + 1e-9), "upper sandwich at t={t}");
        }
        // G(a)/G(b) <= a/b for b >= a > 0
        for w in ts.windows(7) {
            let (a, b) = (w[0], w[6]);
            assert!(gf.big_g(a) / gf.big_g(b) <= a / b * (1.0 + 1e-9));
        }
    }

    #[test]
    fn doubling_and_cross_inequalities() {
        let gf = GrowthFunction::new(GrowthSpec::LogPower { q: 1.0, r: 1.3, coef: 2.0 }).unwrap();
        for t in samples() {
            let g1 = gf.g(t);
            let g2 = gf.g(2.0 * t);
            assert!(g1 <= g2 * (1.0 + 1e-12), "g monotone at t={t}");
            assert!(g2 <= libm::exp2(gf.g0) * g1 * (1.0 + 1e-9), "g(2t) bound at t={t}");
        }
        // a g(b) <= a g(a) + b g(b)
        let ts = samples();
        for &a in ts.iter().step_by(13) {
            for &b in ts.iter().step_by(17) {
                assert!(a * gf.g(b) <= a * gf.g(a) + b * gf.g(b) + 1e-12);
            }
        }
    }

    #[test]
    fn primitive_matches_closed_form_for_powers() {
        let gf = GrowthFunction::new(GrowthSpec::Power { q: 1.7, coef: 0.9 }).unwrap();
        for t in [1e-6, 0.02, 1.0, 7.0, 1.3e5] {
            let want = 0.9 * libm::pow(t, 2.7) / 2.7;
            let got = gf.big_g(t);
            assert!(
                (got - want).abs() <= 1e-12 + 1e-10 * want,
                "G({t}) = {got}, want {want}"
            );
        }
    }
}
