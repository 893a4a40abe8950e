use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::solver::SolveReport;

/// Errors produced by construction, evaluation and minimization routines.
#[derive(Debug, Clone)]
pub enum Error {
    /// Argument outside the mathematical domain (negative `t`, `lambda <= 0`, ...).
    Domain(String),
    /// Structurally invalid input (non-convex candidate, grid mismatch, empty probe set, ...).
    InvalidInput(String),
    /// A transform whose defining integral diverges for this input.
    NotApplicable(String),
    /// Geometry with too few primitives to apply the requested rule.
    DegenerateGeometry(String),
    /// Coordinate lookup left the window an indicator field was rasterized on.
    OutOfWindow { point: [f64; 3] },
    /// A field was evaluated against a functional living on a different grid.
    GridMismatch,
    /// Differentiation requested for a configuration that is not differentiable.
    Configuration(String),
    /// Interpolation queried outside its tabulated range where continuation is unsafe.
    Extrapolation(String),
    /// Iteration budget exhausted before reaching the stationarity tolerance.
    /// Carries the full report so callers can inspect the trace.
    NonConvergence(Box<SolveReport>),
    /// Line search could not find any decrease; the iterate is stationary to
    /// working precision (common for nonsmooth penalties started at the optimum).
    Stalled(Box<SolveReport>),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::NotApplicable(m) => write!(f, "not applicable: {m}"),
            Error::DegenerateGeometry(m) => write!(f, "degenerate geometry: {m}"),
            Error::OutOfWindow { point } => {
                write!(f, "coordinate ({}, {}, {}) left the stored window", point[0], point[1], point[2])
            }
            Error::GridMismatch => write!(f, "field grid does not match functional grid"),
            Error::Configuration(m) => write!(f, "configuration error: {m}"),
            Error::Extrapolation(m) => write!(f, "extrapolation error: {m}"),
            Error::NonConvergence(r) => write!(
                f,
                "no convergence after {} iterations (value {:.6e}, grad sup {:.3e})",
                r.iterations, r.value, r.grad_sup
            ),
            Error::Stalled(r) => write!(
                f,
                "line search stalled after {} iterations (value {:.6e}, grad sup {:.3e})",
                r.iterations, r.value, r.grad_sup
            ),
        }
    }
}

impl core::error::Error for Error {}
