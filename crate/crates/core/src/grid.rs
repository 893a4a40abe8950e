//! Axis-aligned boxes and regular grids in 1, 2 or 3 dimensions.
//!
//! Scalar fields live on grid *nodes*; quadrature, indicator values and
//! gradients live on *cells*. Unused trailing axes are carried as
//! degenerate (one cell, zero extent) so indexing is uniform across
//! dimensions.

use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Result};

pub const MAX_DIM: usize = 3;

/// A point; coordinates beyond the active dimension are zero.
pub type Point = [f64; 3];

pub fn point1(x: f64) -> Point {
    [x, 0.0, 0.0]
}

pub fn point2(x: f64, y: f64) -> Point {
    [x, y, 0.0]
}

/// Euclidean distance restricted to the first `dim` coordinates.
pub fn distance(dim: usize, a: &Point, b: &Point) -> f64 {
    let mut s = 0.0;
    for axis in 0..dim {
        let d = a[axis] - b[axis];
        s += d * d;
    }
    libm::sqrt(s)
}

/// Axis-aligned box.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    pub dim: usize,
    pub lo: Point,
    pub hi: Point,
}

impl Bounds {
    pub fn new(dim: usize, lo: Point, hi: Point) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidInput(format!("dimension {dim} not in 1..=3")));
        }
        for axis in 0..dim {
            if !(hi[axis] > lo[axis]) {
                return Err(Error::InvalidInput(format!(
                    "degenerate box on axis {axis}: [{}, {}]",
                    lo[axis], hi[axis]
                )));
            }
        }
        let mut lo = lo;
        let mut hi = hi;
        for axis in dim..MAX_DIM {
            lo[axis] = 0.0;
            hi[axis] = 0.0;
        }
        Ok(Bounds { dim, lo, hi })
    }

    /// Cube of side `side` centered at `center`.
    pub fn cube(dim: usize, center: Point, side: f64) -> Result<Self> {
        let mut lo = [0.0; 3];
        let mut hi = [0.0; 3];
        for axis in 0..dim {
            lo[axis] = center[axis] - 0.5 * side;
            hi[axis] = center[axis] + 0.5 * side;
        }
        Bounds::new(dim, lo, hi)
    }

    pub fn unit(dim: usize) -> Self {
        let mut hi = [0.0; 3];
        for h in hi.iter_mut().take(dim) {
            *h = 1.0;
        }
        Bounds { dim, lo: [0.0; 3], hi }
    }

    pub fn extent(&self, axis: usize) -> f64 {
        self.hi[axis] - self.lo[axis]
    }

    pub fn volume(&self) -> f64 {
        (0..self.dim).map(|a| self.extent(a)).product()
    }

    pub fn enlarged(&self, margin: f64) -> Self {
        let mut out = self.clone();
        for axis in 0..self.dim {
            out.lo[axis] -= margin;
            out.hi[axis] += margin;
        }
        out
    }

    pub fn translated(&self, shift: &Point) -> Self {
        let mut out = self.clone();
        for axis in 0..self.dim {
            out.lo[axis] += shift[axis];
            out.hi[axis] += shift[axis];
        }
        out
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for axis in 0..self.dim {
            out.lo[axis] *= factor;
            out.hi[axis] *= factor;
        }
        out
    }

    pub fn contains(&self, p: &Point) -> bool {
        (0..self.dim).all(|a| p[a] >= self.lo[a] && p[a] <= self.hi[a])
    }
}

/// Regular grid over a box.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub bounds: Bounds,
    cells: [usize; 3],
}

impl Grid {
    pub fn new(bounds: Bounds, cells_per_axis: &[usize]) -> Result<Self> {
        if cells_per_axis.len() != bounds.dim {
            return Err(Error::InvalidInput("cell counts must match dimension".into()));
        }
        let mut cells = [1usize; 3];
        for (axis, &c) in cells_per_axis.iter().enumerate() {
            if c == 0 {
                return Err(Error::InvalidInput(format!("zero cells on axis {axis}")));
            }
            cells[axis] = c;
        }
        Ok(Grid { bounds, cells })
    }

    /// Cell counts from a target density of cells per unit length.
    pub fn from_resolution(bounds: Bounds, cells_per_unit: f64) -> Result<Self> {
        if !(cells_per_unit > 0.0) {
            return Err(Error::InvalidInput("cells_per_unit must be positive".into()));
        }
        let mut cells = [1usize; 3];
        for axis in 0..bounds.dim {
            let c = libm::round(bounds.extent(axis) * cells_per_unit) as usize;
            cells[axis] = c.max(1);
        }
        Ok(Grid { bounds, cells })
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim
    }

    pub fn cells_on_axis(&self, axis: usize) -> usize {
        if axis < self.bounds.dim {
            self.cells[axis]
        } else {
            1
        }
    }

    pub fn nodes_on_axis(&self, axis: usize) -> usize {
        if axis < self.bounds.dim {
            self.cells[axis] + 1
        } else {
            1
        }
    }

    pub fn cell_count(&self) -> usize {
        (0..MAX_DIM).map(|a| self.cells_on_axis(a)).product()
    }

    pub fn node_count(&self) -> usize {
        (0..MAX_DIM).map(|a| self.nodes_on_axis(a)).product()
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        if axis < self.bounds.dim {
            self.bounds.extent(axis) / self.cells[axis] as f64
        } else {
            1.0
        }
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.bounds.dim).map(|a| self.spacing(a)).product()
    }

    pub fn cell_multi_index(&self, cell: usize) -> [usize; 3] {
        let nx = self.cells_on_axis(0);
        let ny = self.cells_on_axis(1);
        [cell % nx, (cell / nx) % ny, cell / (nx * ny)]
    }

    pub fn cell_index(&self, idx: [usize; 3]) -> usize {
        let nx = self.cells_on_axis(0);
        let ny = self.cells_on_axis(1);
        idx[0] + nx * (idx[1] + ny * idx[2])
    }

    pub fn node_multi_index(&self, node: usize) -> [usize; 3] {
        let nx = self.nodes_on_axis(0);
        let ny = self.nodes_on_axis(1);
        [node % nx, (node / nx) % ny, node / (nx * ny)]
    }

    pub fn node_index(&self, idx: [usize; 3]) -> usize {
        let nx = self.nodes_on_axis(0);
        let ny = self.nodes_on_axis(1);
        idx[0] + nx * (idx[1] + ny * idx[2])
    }

    pub fn node_position(&self, node: usize) -> Point {
        let idx = self.node_multi_index(node);
        let mut p = [0.0; 3];
        for axis in 0..self.bounds.dim {
            p[axis] = self.bounds.lo[axis] + idx[axis] as f64 * self.spacing(axis);
        }
        p
    }

    pub fn cell_center(&self, cell: usize) -> Point {
        let idx = self.cell_multi_index(cell);
        let mut p = [0.0; 3];
        for axis in 0..self.bounds.dim {
            p[axis] = self.bounds.lo[axis] + (idx[axis] as f64 + 0.5) * self.spacing(axis);
        }
        p
    }

    /// Node indices of the 2^dim corners of a cell, in lexicographic
    /// corner order (x fastest).
    pub fn cell_corner_nodes(&self, cell: usize, out: &mut [usize; 8]) -> usize {
        let idx = self.cell_multi_index(cell);
        let n = 1usize << self.bounds.dim;
        for (corner, slot) in out.iter_mut().enumerate().take(n) {
            let mut nidx = [0usize; 3];
            for axis in 0..self.bounds.dim {
                nidx[axis] = idx[axis] + ((corner >> axis) & 1);
            }
            *slot = self.node_index(nidx);
        }
        n
    }

    /// Mask of nodes on the outer boundary of the box.
    pub fn boundary_node_mask(&self) -> Vec<bool> {
        let mut mask = alloc::vec![false; self.node_count()];
        for (node, flag) in mask.iter_mut().enumerate() {
            let idx = self.node_multi_index(node);
            for axis in 0..self.bounds.dim {
                if idx[axis] == 0 || idx[axis] == self.cells_on_axis(axis) {
                    *flag = true;
                    break;
                }
            }
        }
        mask
    }

    /// Containing cell of a point, or None outside the box. Points on the
    /// upper face are assigned to the last cell.
    pub fn cell_containing(&self, p: &Point) -> Option<usize> {
        if !self.bounds.contains(p) {
            return None;
        }
        let mut idx = [0usize; 3];
        for axis in 0..self.bounds.dim {
            let rel = (p[axis] - self.bounds.lo[axis]) / self.spacing(axis);
            let i = libm::floor(rel) as isize;
            idx[axis] = i.clamp(0, self.cells_on_axis(axis) as isize - 1) as usize;
        }
        Some(self.cell_index(idx))
    }
}
