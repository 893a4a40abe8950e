//! Task execution abstraction.
//!
//! Monte Carlo sweeps are embarrassingly parallel over task indices and
//! every task is a pure function of its index, so results never depend on
//! how tasks are scheduled. The core crate only provides the serial pool;
//! the companion crate plugs in a work-stealing pool behind the same trait.

use alloc::vec::Vec;

/// Runs `n` independent tasks and returns their results in index order.
pub trait TaskPool: Sync {
    fn run_tasks<T: Send, F: Fn(usize) -> T + Sync>(&self, n: usize, task: F) -> Vec<T>;
}

/// In-order single-threaded execution.
pub struct SerialPool;

impl TaskPool for SerialPool {
    fn run_tasks<T: Send, F: Fn(usize) -> T + Sync>(&self, n: usize, task: F) -> Vec<T> {
        (0..n).map(task).collect()
    }
}
