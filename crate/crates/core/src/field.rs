//! Node-sampled scalar fields on regular grids.

use alloc::vec;
use alloc::vec::Vec;

use crate::grid::{Grid, Point};
use crate::rng::Stream;
use crate::{Error, Result};

/// A scalar function sampled at grid nodes, with an optional cell mask
/// restricting which cells take part in quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteField {
    pub grid: Grid,
    pub values: Vec<f64>,
    /// Per-cell participation flags; `None` means every cell is active.
    pub active: Option<Vec<bool>>,
}

impl DiscreteField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.node_count() {
            return Err(Error::InvalidInput("value count must match grid nodes".into()));
        }
        Ok(DiscreteField { grid, values, active: None })
    }

    pub fn constant(grid: Grid, value: f64) -> Self {
        let n = grid.node_count();
        DiscreteField { grid, values: vec![value; n], active: None }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::constant(grid, 0.0)
    }

    /// Sample an analytic function at the nodes.
    pub fn from_fn<F: Fn(&Point) -> f64>(grid: Grid, f: F) -> Self {
        let values = (0..grid.node_count()).map(|n| f(&grid.node_position(n))).collect();
        DiscreteField { grid, values, active: None }
    }

    /// The affine field `p . x + offset`.
    pub fn affine(grid: Grid, gradient: &Point, offset: f64) -> Self {
        let dim = grid.dim();
        Self::from_fn(grid, |x| {
            let mut v = offset;
            for axis in 0..dim {
                v += gradient[axis] * x[axis];
            }
            v
        })
    }

    /// Independent uniform values in [lo, hi] at every node.
    pub fn random(grid: Grid, lo: f64, hi: f64, stream: &mut Stream) -> Self {
        let values = (0..grid.node_count()).map(|_| stream.uniform_in(lo, hi)).collect();
        DiscreteField { grid, values, active: None }
    }

    pub fn with_active(mut self, active: Vec<bool>) -> Result<Self> {
        if active.len() != self.grid.cell_count() {
            return Err(Error::InvalidInput("mask length must match grid cells".into()));
        }
        self.active = Some(active);
        Ok(self)
    }

    pub fn is_cell_active(&self, cell: usize) -> bool {
        self.active.as_ref().map_or(true, |m| m[cell])
    }

    /// Mean of the corner values of a cell (midpoint value of the
    /// multilinear interpolant).
    pub fn cell_average(&self, cell: usize) -> f64 {
        let mut corners = [0usize; 8];
        let n = self.grid.cell_corner_nodes(cell, &mut corners);
        let mut s = 0.0;
        for &node in corners.iter().take(n) {
            s += self.values[node];
        }
        s / n as f64
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Bounds;

    #[test]
    fn affine_field_samples_linearly() {
        let g = Grid::new(Bounds::unit(2), &[2, 2]).unwrap();
        let f = DiscreteField::affine(g.clone(), &[2.0, -1.0, 0.0], 0.5);
        let node = g.node_index([1, 2, 0]);
        assert!((f.values[node] - (2.0 * 0.5 - 1.0 * 1.0 + 0.5)).abs() < 1e-15);
    }

    #[test]
    fn cell_average_is_corner_mean() {
        let g = Grid::new(Bounds::unit(2), &[1, 1]).unwrap();
        let f = DiscreteField::new(g, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        assert!((f.cell_average(0) - 1.5).abs() < 1e-15);
    }
}
