//! Interpolation: log-log cubic Hermite tables with power-law tails, and
//! piecewise-linear tables for effective densities.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Tabulated positive increasing function on positive knots.
///
/// Values are interpolated by a cubic Hermite in (ln x, ln y) using the
/// logarithmic slopes stored at the knots. For pure power laws the
/// representation is exact; outside the knot range the function continues
/// as the power law matching the boundary knot and slope. `eval(0) = 0`.
#[derive(Debug, Clone)]
pub struct LogLogTable {
    ln_x: Vec<f64>,
    ln_y: Vec<f64>,
    /// d ln y / d ln x at each knot.
    slope: Vec<f64>,
}

impl LogLogTable {
    /// Build from strictly increasing positive `xs`, positive `ys`, and the
    /// exact derivatives `dy/dx` at the knots.
    pub fn from_samples(xs: &[f64], ys: &[f64], dydx: &[f64]) -> Result<Self> {
        if xs.len() < 2 || xs.len() != ys.len() || xs.len() != dydx.len() {
            return Err(Error::InvalidInput("table needs >= 2 aligned knots".to_string()));
        }
        let mut ln_x = Vec::with_capacity(xs.len());
        let mut ln_y = Vec::with_capacity(xs.len());
        let mut slope = Vec::with_capacity(xs.len());
        for i in 0..xs.len() {
            if !(xs[i] > 0.0) || !(ys[i] > 0.0) {
                return Err(Error::InvalidInput("table knots and values must be positive".to_string()));
            }
            if i > 0 && xs[i] <= xs[i - 1] {
                return Err(Error::InvalidInput("table knots must be strictly increasing".to_string()));
            }
            ln_x.push(libm::log(xs[i]));
            ln_y.push(libm::log(ys[i]));
            // chain rule: d ln y / d ln x = (x / y) dy/dx
            slope.push((xs[i] / ys[i]) * dydx[i].max(0.0));
        }
        // Monotonicity guard: cap slopes at 3x the adjacent secants.
        for i in 0..slope.len() {
            let left = if i > 0 {
                (ln_y[i] - ln_y[i - 1]) / (ln_x[i] - ln_x[i - 1])
            } else {
                f64::INFINITY
            };
            let right = if i + 1 < slope.len() {
                (ln_y[i + 1] - ln_y[i]) / (ln_x[i + 1] - ln_x[i])
            } else {
                f64::INFINITY
            };
            let cap = 3.0 * left.min(right).max(0.0);
            if slope[i] > cap {
                slope[i] = cap;
            }
        }
        Ok(LogLogTable { ln_x, ln_y, slope })
    }

    pub fn len(&self) -> usize {
        self.ln_x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ln_x.is_empty()
    }

    /// Knot positions and values (exponentiated back from log space).
    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.ln_x
            .iter()
            .zip(self.ln_y.iter())
            .map(|(&lx, &ly)| (libm::exp(lx), libm::exp(ly)))
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        debug_assert!(x > 0.0, "LogLogTable argument must be nonnegative");
        let lx = libm::log(x);
        let n = self.ln_x.len();
        if lx <= self.ln_x[0] {
            return libm::exp(self.ln_y[0] + self.slope[0] * (lx - self.ln_x[0]));
        }
        if lx >= self.ln_x[n - 1] {
            return libm::exp(self.ln_y[n - 1] + self.slope[n - 1] * (lx - self.ln_x[n - 1]));
        }
        let i = self.segment(lx);
        let h = self.ln_x[i + 1] - self.ln_x[i];
        let t = (lx - self.ln_x[i]) / h;
        let (h00, h10, h01, h11) = hermite_basis(t);
        let v = h00 * self.ln_y[i]
            + h10 * h * self.slope[i]
            + h01 * self.ln_y[i + 1]
            + h11 * h * self.slope[i + 1];
        libm::exp(v)
    }

    /// dy/dx at `x` (one-sided power law outside the knots).
    pub fn derivative(&self, x: f64) -> f64 {
        if x == 0.0 {
            // limit of slope * y / x; positive exponent means 0, exponent 1 means finite
            let s = self.slope[0];
            if s > 1.0 {
                return 0.0;
            }
            let y0 = libm::exp(self.ln_y[0]);
            let x0 = libm::exp(self.ln_x[0]);
            if (s - 1.0).abs() < 1e-12 {
                return s * y0 / x0;
            }
            return f64::INFINITY;
        }
        let lx = libm::log(x);
        let n = self.ln_x.len();
        let logslope = if lx <= self.ln_x[0] {
            self.slope[0]
        } else if lx >= self.ln_x[n - 1] {
            self.slope[n - 1]
        } else {
            let i = self.segment(lx);
            let h = self.ln_x[i + 1] - self.ln_x[i];
            let t = (lx - self.ln_x[i]) / h;
            let (d00, d10, d01, d11) = hermite_basis_deriv(t);
            (d00 * self.ln_y[i] + d01 * self.ln_y[i + 1]) / h
                + d10 * self.slope[i]
                + d11 * self.slope[i + 1]
        };
        logslope * self.eval(x) / x
    }

    fn segment(&self, lx: f64) -> usize {
        match self.ln_x.binary_search_by(|v| v.partial_cmp(&lx).unwrap()) {
            Ok(i) => i.min(self.ln_x.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.ln_x.len() - 2),
        }
    }
}

fn hermite_basis(t: f64) -> (f64, f64, f64, f64) {
    let t2 = t * t;
    let t3 = t2 * t;
    (
        2.0 * t3 - 3.0 * t2 + 1.0,
        t3 - 2.0 * t2 + t,
        -2.0 * t3 + 3.0 * t2,
        t3 - t2,
    )
}

fn hermite_basis_deriv(t: f64) -> (f64, f64, f64, f64) {
    let t2 = t * t;
    (
        6.0 * t2 - 6.0 * t,
        3.0 * t2 - 4.0 * t + 1.0,
        -6.0 * t2 + 6.0 * t,
        3.0 * t2 - 2.0 * t,
    )
}

/// Log-spaced sample points, inclusive of both endpoints.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (la, lb) = (libm::log(lo), libm::log(hi));
    (0..n)
        .map(|i| libm::exp(la + (lb - la) * i as f64 / (n - 1) as f64))
        .collect()
}

/// Invert a continuous increasing function by bracket doubling plus
/// bisection; relative tolerance on the argument.
pub fn invert_increasing<F: Fn(f64) -> f64>(f: &F, target: f64, rel_tol: f64) -> f64 {
    if target <= 0.0 {
        return 0.0;
    }
    let mut hi = 1.0;
    let mut guard = 0;
    while f(hi) < target && guard < 2100 {
        hi *= 2.0;
        guard += 1;
    }
    let mut lo = 0.0;
    while hi - lo > rel_tol * hi.max(1e-300) {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Piecewise-linear table on arbitrary strictly increasing knots.
/// Used for convexity-preserving interpolation of estimated densities;
/// queries outside the knot range are an error rather than a guess.
#[derive(Debug, Clone)]
pub struct PiecewiseLinear {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PiecewiseLinear {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() < 2 || xs.len() != ys.len() {
            return Err(Error::InvalidInput("piecewise-linear table needs >= 2 aligned knots".to_string()));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("piecewise-linear knots must be strictly increasing".to_string()));
        }
        Ok(PiecewiseLinear { xs, ys })
    }

    pub fn range(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    pub fn knots(&self) -> (&[f64], &[f64]) {
        (&self.xs, &self.ys)
    }

    fn segment(&self, x: f64) -> Result<usize> {
        let (lo, hi) = self.range();
        if x < lo || x > hi {
            return Err(Error::Extrapolation(alloc::format!(
                "query {x} outside tabulated range [{lo}, {hi}]"
            )));
        }
        let mut i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        if i >= self.xs.len() - 1 {
            i = self.xs.len() - 2;
        }
        Ok(i)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let i = self.segment(x)?;
        let t = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        Ok(self.ys[i] + t * (self.ys[i + 1] - self.ys[i]))
    }

    /// Slope of the segment containing `x` (right-continuous at knots).
    pub fn slope(&self, x: f64) -> Result<f64> {
        let i = self.segment(x)?;
        Ok((self.ys[i + 1] - self.ys[i]) / (self.xs[i + 1] - self.xs[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loglog_table_is_exact_on_power_laws() {
        let xs = log_space(1e-6, 1e6, 200);
        let ys: Vec<f64> = xs.iter().map(|x| 0.25 * x.powf(2.5)).collect();
        let ds: Vec<f64> = xs.iter().map(|x| 0.625 * x.powf(1.5)).collect();
        let t = LogLogTable::from_samples(&xs, &ys, &ds).unwrap();
        for &x in &[1e-8, 3.7e-3, 1.0, 42.0, 9.9e7] {
            let want = 0.25 * f64::powf(x, 2.5);
            assert!((t.eval(x) / want - 1.0).abs() < 1e-12, "x={x}");
            let dwant = 0.625 * f64::powf(x, 1.5);
            assert!((t.derivative(x) / dwant - 1.0).abs() < 1e-9, "deriv x={x}");
        }
        assert_eq!(t.eval(0.0), 0.0);
    }

    #[test]
    fn loglog_table_interpolates_smooth_non_powers_tightly() {
        // phi(x) = x^2 ln(e + x): smooth, convex, not a power law.
        let f = |x: f64| x * x * libm::log(core::f64::consts::E + x);
        let df = |x: f64| 2.0 * x * libm::log(core::f64::consts::E + x) + x * x / (core::f64::consts::E + x);
        let xs = log_space(1e-7, 1e7, 14 * 150);
        let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        let ds: Vec<f64> = xs.iter().map(|&x| df(x)).collect();
        let t = LogLogTable::from_samples(&xs, &ys, &ds).unwrap();
        for &x in &[1e-5, 0.3, 1.0, 7.7, 123.0, 5.0e5] {
            let rel = (t.eval(x) / f(x) - 1.0).abs();
            assert!(rel < 1e-10, "x={x} rel={rel:e}");
        }
    }

    #[test]
    fn invert_increasing_inverts() {
        let f = |x: f64| x * x * x;
        let x = invert_increasing(&f, 27.0, 1e-13);
        assert!((x - 3.0).abs() < 1e-11);
        assert_eq!(invert_increasing(&f, 0.0, 1e-13), 0.0);
    }

    #[test]
    fn piecewise_linear_evaluates_and_rejects_extrapolation() {
        let t = PiecewiseLinear::new(vec![-1.0, 0.0, 2.0], vec![1.0, 0.0, 4.0]).unwrap();
        assert_eq!(t.eval(-1.0).unwrap(), 1.0);
        assert_eq!(t.eval(1.0).unwrap(), 2.0);
        assert_eq!(t.slope(1.0).unwrap(), 2.0);
        assert!(t.eval(3.0).is_err());
    }
}
