//! Numerical core for stochastic homogenization experiments on random
//! two-phase media with Orlicz-type energy growth.
//!
//! The crate is organised around five layers:
//!
//! * [`nfunction`] / [`growth`] — Young-function calculus: evaluation,
//!   conjugation, doubling constants, Sobolev conjugates, modulars and
//!   Luxemburg norms, plus the growth pair `(g, G)` used by capacity
//!   functionals.
//! * [`microstructure`] — seeded Poisson point processes, tube and ball
//!   unions, homothety, and rasterization to two-phase indicator fields.
//! * [`energy`] — integrand families and discrete integral functionals on
//!   regular grids, with exact differentials, Yosida transforms and a
//!   probe-based functional distance.
//! * [`solver`] — limited-memory quasi-Newton minimization of convex
//!   discrete energies under Dirichlet data.
//! * [`homogenize`] — cell problems on growing cubes, effective-density
//!   and capacity-density estimation, subadditivity diagnostics and
//!   perforated-vs-homogenized comparisons.
//!
//! The crate is `no_std` (with `alloc`): all transcendental math goes
//! through `libm`, and randomness through an explicitly seeded
//! counter-based generator, so results are bit-reproducible across
//! machines. Anything that needs a filesystem, a clock, or a thread pool
//! lives in the companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod energy;
mod error;
pub mod exec;
pub mod field;
pub mod grid;
pub mod growth;
pub mod homogenize;
pub mod interp;
pub mod metric;
pub mod microstructure;
pub mod nfunction;
pub mod quad;
pub mod rng;
pub mod solver;
pub mod stats;

pub use error::Error;

/// Convenience alias used across the crate.
pub type Result<T> = core::result::Result<T, Error>;
