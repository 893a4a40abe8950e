use alloc::vec::Vec;

/// Outcome of a minimization run.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub value: f64,
    pub iterations: usize,
    pub grad_sup: f64,
    pub energy_trace: Vec<f64>,
}
