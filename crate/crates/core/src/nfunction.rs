//! Young-function calculus.
//!
//! An [`NFunction`] is a convex function Φ with Φ(0) = 0, strictly
//! increasing on [0, ∞), given by one of four families: normalized powers
//! `coef·t^p/p`, power-log `t^p·ln(shift + t)`, the primitive of a growth
//! function, or a tabulated function (the representation used for
//! conjugates and Sobolev conjugates, which have closed forms only in the
//! power family).
//!
//! Doubling behaviour is certified numerically on a declared range, never
//! symbolically: [`NFunction::delta2_constant`] reports the sampled
//! constant `k` with `Φ(2t) ≤ k·Φ(t)` and flags growth that keeps
//! climbing at the top of the range.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::field::DiscreteField;
use crate::growth::GrowthFunction;
use crate::interp::{invert_increasing, log_space, LogLogTable};
use crate::quad::adaptive_simpson;
use crate::{Error, Result};

/// Knot density used when tabulating conjugates: dense enough that
/// interpolation error stays below the 1e-9 slack used by the Young
/// inequality checks.
const TABLE_KNOTS_PER_DECADE: usize = 150;
const TABLE_LO: f64 = 1e-7;
const TABLE_HI: f64 = 1e7;

#[derive(Debug, Clone)]
pub enum NFunctionFamily {
    /// Φ(t) = coef · t^p / p. With coef = p this is the plain t^p.
    Power { p: f64, coef: f64 },
    /// Φ(t) = t^p · ln(shift + t), p > 1, shift ≥ 1.
    PowerLog { p: f64, shift: f64 },
    /// Φ(t) = G(t) = ∫₀ᵗ g, evaluated by quadrature of g.
    GrowthIntegral(Box<GrowthFunction>),
    /// Interpolated knots; the output representation of transforms.
    Tabulated(LogLogTable),
}

/// Sampled doubling certificate: Φ(2t) ≤ k·Φ(t) for sampled t > threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Delta2Report {
    pub k: f64,
    pub threshold: f64,
    /// log₂ k.
    pub beta: f64,
    /// Ratio was still climbing at the top of the sampled range, as an
    /// exponential-type function would.
    pub suspected_unbounded: bool,
}

/// Exponent convention for the Sobolev conjugate integrand `Φ⁻¹(s)/s^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SobolevExponent {
    /// e = (n+1)/n, the classical convention (default).
    Classical,
    /// e = n(n+1).
    Alternate,
}

impl SobolevExponent {
    pub fn value(self, dim: usize) -> f64 {
        let n = dim as f64;
        match self {
            SobolevExponent::Classical => (n + 1.0) / n,
            SobolevExponent::Alternate => n * (n + 1.0),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NFunction {
    family: NFunctionFamily,
    delta2: Option<Delta2Report>,
}

impl NFunction {
    /// Normalized power family Φ(t) = t^p / p.
    pub fn power(p: f64) -> Result<Self> {
        Self::power_scaled(p, 1.0)
    }

    /// Plain power Φ(t) = t^p (coef = p in the normalized form).
    pub fn plain_power(p: f64) -> Result<Self> {
        Self::power_scaled(p, p)
    }

    pub fn power_scaled(p: f64, coef: f64) -> Result<Self> {
        if !(p > 1.0) || !(coef > 0.0) {
            return Err(Error::InvalidInput(format!("power family needs p > 1, coef > 0; got p={p}, coef={coef}")));
        }
        Ok(NFunction { family: NFunctionFamily::Power { p, coef }, delta2: None })
    }

    pub fn power_log(p: f64, shift: f64) -> Result<Self> {
        if !(p > 1.0) || !(shift >= 1.0) {
            return Err(Error::InvalidInput(format!("power-log family needs p > 1, shift >= 1; got p={p}, shift={shift}")));
        }
        Ok(NFunction { family: NFunctionFamily::PowerLog { p, shift }, delta2: None })
    }

    pub fn from_growth(g: GrowthFunction) -> Self {
        NFunction { family: NFunctionFamily::GrowthIntegral(Box::new(g)), delta2: None }
    }

    pub fn from_table(table: LogLogTable) -> Self {
        NFunction { family: NFunctionFamily::Tabulated(table), delta2: None }
    }

    pub fn family(&self) -> &NFunctionFamily {
        &self.family
    }

    pub fn delta2(&self) -> Option<&Delta2Report> {
        self.delta2.as_ref()
    }

    /// Attach a doubling certificate computed on `[t_lo, t_hi]`.
    pub fn certified(mut self, t_lo: f64, t_hi: f64) -> Result<Self> {
        let report = self.delta2_constant(t_lo, t_hi)?;
        self.delta2 = Some(report);
        Ok(self)
    }

    /// Φ(t); `t` must be nonnegative.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if t < 0.0 || !t.is_finite() {
            return Err(Error::Domain(format!("N-function argument must be finite and >= 0, got {t}")));
        }
        Ok(self.value(t))
    }

    /// Unchecked Φ(t) for hot loops.
    pub fn value(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        match &self.family {
            NFunctionFamily::Power { p, coef } => {
                if t == 0.0 {
                    0.0
                } else if *p == 2.0 {
                    0.5 * coef * t * t
                } else {
                    coef * libm::pow(t, *p) / p
                }
            }
            NFunctionFamily::PowerLog { p, shift } => {
                if t == 0.0 {
                    0.0
                } else {
                    libm::pow(t, *p) * libm::log(shift + t)
                }
            }
            NFunctionFamily::GrowthIntegral(g) => g.big_g(t),
            NFunctionFamily::Tabulated(table) => table.eval(t),
        }
    }

    /// Φ evaluated from a squared argument, avoiding the square root
    /// where the family allows it. Used by gradient-energy kernels.
    pub fn value_sq(&self, t_sq: f64) -> f64 {
        debug_assert!(t_sq >= 0.0);
        match &self.family {
            NFunctionFamily::Power { p, coef } => {
                if *p == 2.0 {
                    0.5 * coef * t_sq
                } else if *p == 4.0 {
                    0.25 * coef * t_sq * t_sq
                } else if t_sq == 0.0 {
                    0.0
                } else {
                    coef * libm::pow(t_sq, 0.5 * p) / p
                }
            }
            _ => self.value(libm::sqrt(t_sq)),
        }
    }

    /// φ(t) = Φ'(t).
    pub fn phi(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        match &self.family {
            NFunctionFamily::Power { p, coef } => {
                if *p == 2.0 {
                    coef * t
                } else if t == 0.0 {
                    0.0
                } else {
                    coef * libm::pow(t, p - 1.0)
                }
            }
            NFunctionFamily::PowerLog { p, shift } => {
                if t == 0.0 {
                    0.0
                } else {
                    let tp = libm::pow(t, *p);
                    p * tp / t * libm::log(shift + t) + tp / (shift + t)
                }
            }
            NFunctionFamily::GrowthIntegral(g) => g.g(t),
            NFunctionFamily::Tabulated(table) => table.derivative(t),
        }
    }

    /// φ(t)/t, the factor mapping a gradient vector to the integrand
    /// derivative. Finite at 0 only for families with at-least-quadratic
    /// behaviour near the origin.
    pub fn phi_over_t(&self, t: f64) -> f64 {
        match &self.family {
            NFunctionFamily::Power { p, coef } => {
                if *p == 2.0 {
                    *coef
                } else if t == 0.0 {
                    if *p > 2.0 {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                } else {
                    coef * libm::pow(t, p - 2.0)
                }
            }
            _ => {
                if t == 0.0 {
                    if self.singular_slope_at_zero() {
                        f64::INFINITY
                    } else {
                        0.0
                    }
                } else {
                    self.phi(t) / t
                }
            }
        }
    }

    /// Whether φ(t)/t blows up at t → 0 (sub-quadratic behaviour near the
    /// origin); such integrands need smoothing before differentiation.
    pub fn singular_slope_at_zero(&self) -> bool {
        match &self.family {
            NFunctionFamily::Power { p, .. } => *p < 2.0,
            NFunctionFamily::PowerLog { p, .. } => *p < 2.0,
            NFunctionFamily::GrowthIntegral(g) => g.delta < 1.0,
            NFunctionFamily::Tabulated(table) => {
                // logarithmic slope of Φ below the first knot
                let (x0, _) = table.knots().next().unwrap();
                let x = 0.5 * x0;
                let y = table.eval(x);
                if y == 0.0 {
                    return false;
                }
                x * table.derivative(x) / y < 2.0 - 1e-9
            }
        }
    }

    /// Φ⁻¹(y) by bisection against the monotone `value`.
    pub fn inverse(&self, y: f64) -> f64 {
        invert_increasing(&|t| self.value(t), y, 1e-12)
    }

    /// Sampled midpoint convexity on a log grid.
    pub fn is_midpoint_convex(&self, t_lo: f64, t_hi: f64, samples: usize) -> bool {
        let ts = log_space(t_lo, t_hi, samples);
        ts.windows(2).all(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            let lhs = self.value(mid);
            let rhs = 0.5 * (self.value(w[0]) + self.value(w[1]));
            lhs <= rhs * (1.0 + 1e-11) + 1e-300
        })
    }

    /// Sampled doubling constant on `[t_lo, t_hi]`:
    /// k = sup Φ(2t)/Φ(t) over a log-spaced sample, threshold = t_lo.
    pub fn delta2_constant(&self, t_lo: f64, t_hi: f64) -> Result<Delta2Report> {
        if !(t_lo > 0.0) || !(t_hi > t_lo) {
            return Err(Error::InvalidInput(format!("need 0 < t_lo < t_hi, got [{t_lo}, {t_hi}]")));
        }
        let ts = log_space(t_lo, t_hi, 512);
        let mut k = 0.0f64;
        let mut k_head = 0.0f64;
        let head_end = ts.len() * 3 / 4;
        for (i, &t) in ts.iter().enumerate() {
            let denom = self.value(t);
            if denom == 0.0 {
                continue;
            }
            let r = self.value(2.0 * t) / denom;
            if r > k {
                k = r;
            }
            if i < head_end && r > k_head {
                k_head = r;
            }
        }
        // Still climbing into the boundary by more than interpolation noise:
        // the sampled sup is not trustworthy as a global constant.
        let suspected_unbounded = k_head > 0.0 && k > 1.25 * k_head;
        Ok(Delta2Report { k, threshold: t_lo, beta: libm::log2(k), suspected_unbounded })
    }

    /// Complementary function Ψ(v) = max_u [uv − Φ(u)], tabulated.
    ///
    /// Per knot the maximizer is bracketed by doubling `u` until φ(u)
    /// passes `v` and then refined by golden-section search; the envelope
    /// theorem gives the exact table slope Ψ'(v) = argmax u.
    pub fn conjugate(&self) -> Result<NFunction> {
        if !self.is_midpoint_convex(1e-6, 1e6, 400) {
            return Err(Error::InvalidInput("conjugate requires a convex N-function".into()));
        }
        let decades = libm::log10(TABLE_HI / TABLE_LO);
        let n = (decades * TABLE_KNOTS_PER_DECADE as f64) as usize + 1;
        let vs = log_space(TABLE_LO, TABLE_HI, n);
        let mut values = Vec::with_capacity(n);
        let mut slopes = Vec::with_capacity(n);
        for &v in &vs {
            let (u_star, psi) = self.conjugate_point(v)?;
            if !(psi > 0.0) {
                return Err(Error::InvalidInput(format!("conjugate value not positive at v={v}; Φ may be degenerate")));
            }
            values.push(psi);
            slopes.push(u_star);
        }
        Ok(NFunction::from_table(LogLogTable::from_samples(&vs, &values, &slopes)?))
    }

    /// Maximizer and value of u ↦ uv − Φ(u) for a single v > 0.
    fn conjugate_point(&self, v: f64) -> Result<(f64, f64)> {
        debug_assert!(v > 0.0);
        // Doubling bracket: φ is nondecreasing, so uv − Φ(u) increases
        // while φ(u) < v and decreases after.
        let mut hi = 1e-12;
        let mut guard = 0;
        while self.phi(hi) < v {
            hi *= 2.0;
            guard += 1;
            if guard > 1200 {
                return Err(Error::InvalidInput("conjugate bracket failed; Φ may not be superlinear".into()));
            }
        }
        let lo = 0.0;
        let obj = |u: f64| u * v - self.value(u);
        let u_star = golden_max(&obj, lo, hi, 1e-13);
        Ok((u_star, obj(u_star)))
    }

    /// The inverse Sobolev conjugate `t ↦ ∫₁ᵗ Φ⁻¹(s)/s^e ds` sampled on
    /// log-spaced knots, after checking the defining integral conditions
    /// numerically: the lower integral ∫₀¹ must not diverge (power-law
    /// divergence is detected by shrinking the cutoff), the upper
    /// integral ∫₁^∞ must keep growing.
    pub fn sobolev_conjugate_inverse(
        &self,
        dim: usize,
        exponent: SobolevExponent,
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        if dim == 0 || dim > 3 {
            return Err(Error::InvalidInput(format!("dimension {dim} not in 1..=3")));
        }
        let e = exponent.value(dim);
        let integrand = |s: f64| self.inverse(s) / libm::pow(s, e);
        let lower_a = adaptive_simpson(&integrand, 1e-6, 1.0, 1e-10);
        let lower_b = adaptive_simpson(&integrand, 1e-12, 1.0, 1e-10);
        if lower_b > 10.0 * lower_a {
            return Err(Error::NotApplicable(format!(
                "lower integral of Φ⁻¹(s)/s^{e} diverges ({lower_a:.3e} -> {lower_b:.3e} as the cutoff shrinks)"
            )));
        }
        let upper_a = adaptive_simpson(&integrand, 1.0, 1e6, 1e-10);
        let upper_b = upper_a + adaptive_simpson(&integrand, 1e6, 1e12, 1e-10);
        if upper_b < 1.1 * upper_a {
            return Err(Error::NotApplicable(format!(
                "upper integral of Φ⁻¹(s)/s^{e} converges; the conjugate would not be superlinear"
            )));
        }
        let mut ts = Vec::with_capacity(601);
        ts.push(1.0);
        ts.extend(log_space(1.0 + 1e-6, 1e8, 600));
        let mut vals = Vec::with_capacity(ts.len());
        vals.push(0.0); // empty integral at t = 1
        for i in 1..ts.len() {
            let seg = adaptive_simpson(&integrand, ts[i - 1], ts[i], 1e-13);
            let prev = vals[i - 1];
            vals.push(prev + seg);
        }
        Ok((ts, vals))
    }

    /// The Sobolev conjugate Φ* as a tabulated N-function, built by
    /// inverting Φ, integrating, and inverting again.
    pub fn sobolev_conjugate(&self, dim: usize, exponent: SobolevExponent) -> Result<NFunction> {
        let (ts, vals) = self.sobolev_conjugate_inverse(dim, exponent)?;
        let e = exponent.value(dim);
        // Invert: knots x = Φ*⁻¹(t), values t, slope dt/dx = s^e/Φ⁻¹.
        let mut xs = Vec::with_capacity(ts.len() - 1);
        let mut ys = Vec::with_capacity(ts.len() - 1);
        let mut ds = Vec::with_capacity(ts.len() - 1);
        for i in 1..ts.len() {
            if vals[i] <= *xs.last().unwrap_or(&0.0) {
                continue; // drop any non-increasing duplicates from quadrature noise
            }
            xs.push(vals[i]);
            ys.push(ts[i]);
            ds.push(libm::pow(ts[i], e) / self.inverse(ts[i]));
        }
        Ok(NFunction::from_table(LogLogTable::from_samples(&xs, &ys, &ds)?))
    }
}

/// Golden-section maximization of a unimodal function on [lo, hi];
/// relative tolerance on the argument.
fn golden_max<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, rel_tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut a = lo;
    let mut b = hi;
    let mut c = b - (b - a) * INV_PHI;
    let mut d = a + (b - a) * INV_PHI;
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a) > rel_tol * b.abs().max(1e-300) {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * INV_PHI;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * INV_PHI;
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Modular ρ(u, Φ, Ω) = ∫_Ω Φ(|u|) dx by the midpoint rule over active
/// cells, with `u` taken as the multilinear cell-midpoint value.
pub fn modular(u: &DiscreteField, nf: &NFunction) -> Result<f64> {
    if !u.all_finite() {
        return Err(Error::InvalidInput("field has non-finite values".into()));
    }
    Ok(modular_unchecked(u, nf))
}

fn modular_unchecked(u: &DiscreteField, nf: &NFunction) -> f64 {
    let vol = u.grid.cell_volume();
    let mut acc = 0.0;
    for cell in 0..u.grid.cell_count() {
        if !u.is_cell_active(cell) {
            continue;
        }
        acc += nf.value(u.cell_average(cell).abs());
    }
    acc * vol
}

/// Luxemburg norm inf{λ > 0 : ρ(u/λ) ≤ 1} by bracketing and bisection;
/// returns 0 for the zero field. The bracket terminates when its width is
/// below 1e-10·max(1, λ).
pub fn luxemburg_norm(u: &DiscreteField, nf: &NFunction) -> Result<f64> {
    if !u.all_finite() {
        return Err(Error::InvalidInput("field has non-finite values".into()));
    }
    let rho_at = |lambda: f64| {
        let scaled = DiscreteField {
            grid: u.grid.clone(),
            values: u.values.iter().map(|v| v / lambda).collect(),
            active: u.active.clone(),
        };
        modular_unchecked(&scaled, nf)
    };
    let sup = u.sup_norm();
    if sup == 0.0 || modular_unchecked(u, nf) == 0.0 {
        return Ok(0.0);
    }
    let mut hi = sup.max(1e-300);
    let mut guard = 0;
    while rho_at(hi) > 1.0 {
        hi *= 2.0;
        guard += 1;
        if guard > 2000 {
            return Err(Error::InvalidInput("Luxemburg bracket failed to close".into()));
        }
    }
    let mut lo = hi;
    while rho_at(lo) <= 1.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            return Ok(0.0);
        }
    }
    while hi - lo > 1e-10 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if rho_at(mid) <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Bounds, Grid};
    use crate::growth::GrowthSpec;
    use crate::rng::Stream;

    #[test]
    fn eval_matches_closed_forms() {
        // Φ = t²/2 at t = 3
        let nf = NFunction::power(2.0).unwrap();
        assert_eq!(nf.eval(3.0).unwrap(), 4.5);
        assert_eq!(nf.eval(0.0).unwrap(), 0.0);
        assert!(nf.eval(-1.0).is_err());
        // plain t^p
        let nf = NFunction::plain_power(3.0).unwrap();
        assert!((nf.eval(2.0).unwrap() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn growth_integral_eval_matches_trapezoid_oracle() {
        // g(t) = t, Φ(2) = ∫₀² s ds = 2, oracle at 1e6 trapezoid points
        let g = GrowthFunction::new(GrowthSpec::Power { q: 1.0, coef: 1.0 }).unwrap();
        let nf = NFunction::from_growth(g);
        let n = 1_000_000usize;
        let h = 2.0 / n as f64;
        let mut oracle = 0.0;
        for i in 0..n {
            let a = i as f64 * h;
            oracle += 0.5 * (a + (a + h)) * h;
        }
        let got = nf.eval(2.0).unwrap();
        assert!((got - 2.0).abs() < 1e-11, "got {got}");
        assert!((got - oracle).abs() < 1e-9, "got {got}, oracle {oracle}");
    }

    #[test]
    fn conjugate_of_quadratic_is_quadratic() {
        let nf = NFunction::power(2.0).unwrap();
        let conj = nf.conjugate().unwrap();
        for v in [0.013, 0.7, 1.0, 5.0, 311.0] {
            let want = 0.5 * v * v;
            let got = conj.eval(v).unwrap();
            assert!((got / want - 1.0).abs() < 1e-9, "v={v}: {got} vs {want}");
        }
    }

    #[test]
    fn conjugate_of_power_is_dual_power() {
        // Φ = t⁴/4 ↔ Ψ = v^{4/3}/(4/3)
        let nf = NFunction::power(4.0).unwrap();
        let conj = nf.conjugate().unwrap();
        let q = 4.0 / 3.0;
        for v in log_space(1e-3, 1e3, 100) {
            let want = libm::pow(v, q) / q;
            let got = conj.eval(v).unwrap();
            assert!((got / want - 1.0).abs() < 1e-6, "v={v}: {got} vs {want}");
        }
    }

    #[test]
    fn conjugate_of_power_log_matches_grid_search_oracle() {
        let nf = NFunction::power_log(2.0, 2.0).unwrap();
        let conj = nf.conjugate().unwrap();
        for &v in &[0.5, 1.0, 2.0] {
            // brute-force max over a dense u grid
            let mut best = 0.0f64;
            let n = 100_000;
            for i in 0..=n {
                let u = 10.0 * i as f64 / n as f64;
                best = best.max(u * v - nf.value(u));
            }
            let got = conj.eval(v).unwrap();
            assert!((got - best).abs() <= 1e-6 * (1.0 + best), "v={v}: {got} vs oracle {best}");
        }
    }

    #[test]
    fn young_inequality_on_random_pairs() {
        for nf in [NFunction::power(2.0).unwrap(), NFunction::power(3.5).unwrap(), NFunction::power_log(2.5, 1.5).unwrap()] {
            let conj = nf.conjugate().unwrap();
            let mut s = Stream::new(42);
            for _ in 0..1000 {
                let u = s.uniform_in(0.0, 100.0);
                let v = s.uniform_in(0.0, 100.0);
                let lhs = u * v;
                let rhs = nf.value(u) + conj.value(v);
                assert!(lhs <= rhs + 1e-9 * (1.0 + lhs), "u={u} v={v}: {lhs} > {rhs}");
            }
        }
    }

    #[test]
    fn delta2_of_powers_is_two_to_p() {
        for p in [2.0, 3.5] {
            let nf = NFunction::power(p).unwrap();
            let rep = nf.delta2_constant(1e-3, 1e3).unwrap();
            let want = libm::exp2(p);
            assert!((rep.k / want - 1.0).abs() < 1e-10, "p={p}: k={}", rep.k);
            assert!((rep.beta - p).abs() < 1e-9);
            assert!(!rep.suspected_unbounded);
        }
    }

    #[test]
    fn delta2_of_growth_integral_respects_doubling_bound() {
        let g = GrowthFunction::new(GrowthSpec::LogPower { q: 1.4, r: 0.9, coef: 1.0 }).unwrap();
        let bound = g.doubling_bound();
        let nf = NFunction::from_growth(g);
        let rep = nf.delta2_constant(1e-3, 1e3).unwrap();
        assert!(rep.k <= bound * (1.0 + 1e-9), "k={} exceeds 2^(1+g0)={}", rep.k, bound);
        assert!(!rep.suspected_unbounded);
    }

    #[test]
    fn delta2_flags_exponential_growth() {
        // tabulate Φ(t) = e^t − 1 − t, which has no doubling constant
        let xs = log_space(1e-4, 200.0, 900);
        let ys: Vec<f64> = xs.iter().map(|&t| libm::expm1(t) - t).collect();
        let ds: Vec<f64> = xs.iter().map(|&t| libm::expm1(t)).collect();
        let nf = NFunction::from_table(LogLogTable::from_samples(&xs, &ys, &ds).unwrap());
        let rep = nf.delta2_constant(0.01, 90.0).unwrap();
        assert!(rep.suspected_unbounded, "k={} should be flagged", rep.k);
    }

    #[test]
    fn certified_range_is_stored() {
        let nf = NFunction::power(2.0).unwrap().certified(0.01, 100.0).unwrap();
        let rep = nf.delta2().unwrap();
        assert_eq!(rep.threshold, 0.01);
        assert!((rep.k - 4.0).abs() < 1e-9);
    }

    #[test]
    fn sobolev_inverse_starts_empty_and_grows() {
        let nf = NFunction::power(2.0).unwrap();
        let (ts, vals) = nf.sobolev_conjugate_inverse(2, SobolevExponent::Classical).unwrap();
        assert_eq!(ts[0], 1.0);
        assert_eq!(vals[0], 0.0);
        for w in vals.windows(2) {
            assert!(w[1] > w[0], "inverse conjugate must be strictly increasing");
        }
    }

    #[test]
    fn sobolev_inverse_matches_fine_quadrature_oracle() {
        let nf = NFunction::power(2.0).unwrap();
        let e = SobolevExponent::Classical.value(2);
        let (ts, vals) = nf.sobolev_conjugate_inverse(2, SobolevExponent::Classical).unwrap();
        // composite Simpson at 10x the knot resolution, with the exact Φ⁻¹
        let inv = |s: f64| libm::sqrt(2.0 * s);
        for idx in [60, 240, 480, 600] {
            let t = ts[idx];
            let n = 20_000; // even
            let h = (t - 1.0) / n as f64;
            let f = |s: f64| inv(s) / libm::pow(s, e);
            let mut oracle = f(1.0) + f(t);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                oracle += w * f(1.0 + i as f64 * h);
            }
            oracle *= h / 3.0;
            assert!(
                (vals[idx] / oracle - 1.0).abs() < 1e-6,
                "t={t}: {} vs oracle {oracle}",
                vals[idx]
            );
        }
        // and the closed form ∫₁ᵗ √(2s)/s^{3/2} ds = √2 ln t
        let t = ts[300];
        let want = libm::sqrt(2.0) * libm::log(t);
        assert!((vals[300] / want - 1.0).abs() < 1e-9);
    }

    #[test]
    fn sobolev_conjugate_rejects_divergent_lower_integral() {
        // p = 4 > n = 2 makes the lower integral diverge like s^{-1.25}
        let nf = NFunction::power(4.0).unwrap();
        let err = nf.sobolev_conjugate(2, SobolevExponent::Classical).unwrap_err();
        assert!(matches!(err, Error::NotApplicable(_)), "{err}");
    }

    #[test]
    fn sobolev_conjugate_round_trips_through_its_inverse() {
        let nf = NFunction::power(2.0).unwrap();
        let star = nf.sobolev_conjugate(2, SobolevExponent::Classical).unwrap();
        // Φ* should invert Φ*⁻¹: Φ*(√2 ln t) = t, i.e. Φ*(y) = e^{y/√2}
        for y in [0.5, 1.0, 3.0, 8.0] {
            let want = libm::exp(y / libm::sqrt(2.0));
            let got = star.eval(y).unwrap();
            assert!((got / want - 1.0).abs() < 1e-6, "y={y}: {got} vs {want}");
        }
    }

    #[test]
    fn modular_closed_forms() {
        let grid = Grid::new(Bounds::unit(2), &[8, 8]).unwrap();
        let nf = NFunction::power(2.0).unwrap();
        let zero = DiscreteField::zeros(grid.clone());
        assert_eq!(modular(&zero, &nf).unwrap(), 0.0);
        let one = DiscreteField::constant(grid, 1.0);
        assert!((modular(&one, &nf).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn modular_matches_refined_quadrature_oracle() {
        // smooth integrand sampled at 4x resolution as the oracle
        let f = |x: &[f64; 3]| 1.0 + 0.5 * libm::sin(3.0 * x[0]) * libm::cos(2.0 * x[1]);
        let nf = NFunction::power(3.0).unwrap();
        let coarse = Grid::new(Bounds::unit(2), &[32, 32]).unwrap();
        let fine = Grid::new(Bounds::unit(2), &[128, 128]).unwrap();
        let a = modular(&DiscreteField::from_fn(coarse, f), &nf).unwrap();
        let b = modular(&DiscreteField::from_fn(fine, f), &nf).unwrap();
        assert!((a - b).abs() < 2e-3 * b.abs(), "coarse {a} vs fine {b}");
    }

    #[test]
    fn luxemburg_of_plain_power_is_lp_norm() {
        let grid = Grid::new(Bounds::unit(2), &[16, 16]).unwrap();
        let mut s = Stream::new(5);
        let u = DiscreteField::random(grid, -2.0, 2.0, &mut s);
        for p in [2.0, 3.0] {
            let nf = NFunction::plain_power(p).unwrap();
            let lam = luxemburg_norm(&u, &nf).unwrap();
            // ∫ |u/λ|^p = 1  =>  λ = (∫|u|^p)^{1/p}
            let vol = u.grid.cell_volume();
            let mut int = 0.0;
            for c in 0..u.grid.cell_count() {
                int += libm::pow(u.cell_average(c).abs(), p);
            }
            let want = libm::pow(int * vol, 1.0 / p);
            assert!((lam / want - 1.0).abs() < 1e-8, "p={p}: {lam} vs {want}");
        }
    }

    #[test]
    fn luxemburg_zero_field_is_zero() {
        let grid = Grid::new(Bounds::unit(1), &[32]).unwrap();
        let nf = NFunction::power(2.0).unwrap();
        assert_eq!(luxemburg_norm(&DiscreteField::zeros(grid), &nf).unwrap(), 0.0);
    }

    #[test]
    fn luxemburg_unit_modular_identity() {
        let grid = Grid::new(Bounds::unit(2), &[12, 12]).unwrap();
        let mut s = Stream::new(9);
        let u = DiscreteField::random(grid, -3.0, 3.0, &mut s);
        let nf = NFunction::power_log(2.0, 1.5).unwrap();
        let lam = luxemburg_norm(&u, &nf).unwrap();
        let scaled = DiscreteField {
            grid: u.grid.clone(),
            values: u.values.iter().map(|v| v / lam).collect(),
            active: None,
        };
        let rho = modular(&scaled, &nf).unwrap();
        assert!((rho - 1.0).abs() < 1e-8, "rho(u/λ*) = {rho}");
    }
}
