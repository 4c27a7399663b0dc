//! Uniform sample lattices and the scalar data living on them.

use thiserror::Error;

use crate::stencil;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("grid needs at least {need} nodes per direction, got {got}")]
    TooSmall { need: usize, got: usize },
    #[error("grid steps must be positive and finite")]
    BadStep,
    #[error("value count {got} does not match grid size {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("non-finite value at node {0}")]
    NonFinite(usize),
}

/// Rectangular lattice `u = u0 + i·hu`, `v = v0 + j·hv`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2 {
    pub u0: f64,
    pub hu: f64,
    pub nu: usize,
    pub v0: f64,
    pub hv: f64,
    pub nv: usize,
}

impl Grid2 {
    pub fn new(u0: f64, hu: f64, nu: usize, v0: f64, hv: f64, nv: usize) -> Result<Self, GridError> {
        if !(hu > 0.0 && hv > 0.0 && hu.is_finite() && hv.is_finite()) {
            return Err(GridError::BadStep);
        }
        if nu < 2 || nv < 2 {
            return Err(GridError::TooSmall { need: 2, got: nu.min(nv) });
        }
        Ok(Grid2 { u0, hu, nu, v0, hv, nv })
    }

    /// `nu × nv` nodes spanning `[u_min, u_max] × [v_min, v_max]` inclusive.
    pub fn spanning(u_min: f64, u_max: f64, nu: usize, v_min: f64, v_max: f64, nv: usize) -> Result<Self, GridError> {
        if nu < 2 || nv < 2 {
            return Err(GridError::TooSmall { need: 2, got: nu.min(nv) });
        }
        Grid2::new(
            u_min,
            (u_max - u_min) / (nu - 1) as f64,
            nu,
            v_min,
            (v_max - v_min) / (nv - 1) as f64,
            nv,
        )
    }

    pub fn len(&self) -> usize {
        self.nu * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn u(&self, i: usize) -> f64 {
        self.u0 + i as f64 * self.hu
    }

    pub fn v(&self, j: usize) -> f64 {
        self.v0 + j as f64 * self.hv
    }

    pub fn node(&self, i: usize, j: usize) -> (f64, f64) {
        (self.u(i), self.v(j))
    }

    /// Row-major index, `u` slowest.
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.nv + j
    }

    pub fn u_max(&self) -> f64 {
        self.u(self.nu - 1)
    }

    pub fn v_max(&self) -> f64 {
        self.v(self.nv - 1)
    }

    /// Same extent with steps halved.
    pub fn refined(&self) -> Grid2 {
        Grid2 {
            u0: self.u0,
            hu: self.hu / 2.0,
            nu: 2 * self.nu - 1,
            v0: self.v0,
            hv: self.hv / 2.0,
            nv: 2 * self.nv - 1,
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.nu).flat_map(move |i| (0..self.nv).map(move |j| (i, j)))
    }
}

/// Uniform 1-D lattice `u = u0 + i·h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1 {
    pub u0: f64,
    pub h: f64,
    pub n: usize,
}

impl Grid1 {
    pub fn new(u0: f64, h: f64, n: usize) -> Result<Self, GridError> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(GridError::BadStep);
        }
        if n < 2 {
            return Err(GridError::TooSmall { need: 2, got: n });
        }
        Ok(Grid1 { u0, h, n })
    }

    pub fn u(&self, i: usize) -> f64 {
        self.u0 + i as f64 * self.h
    }

    pub fn u_max(&self) -> f64 {
        self.u(self.n - 1)
    }

    /// Index of the node nearest to `u`, clamped to the lattice.
    pub fn nearest(&self, u: f64) -> usize {
        let t = ((u - self.u0) / self.h).round();
        t.clamp(0.0, (self.n - 1) as f64) as usize
    }
}

/// Real values on every node of a [`Grid2`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid: Grid2,
    pub values: Vec<f64>,
}

impl ScalarField {
    pub fn new(grid: Grid2, values: Vec<f64>) -> Result<Self, GridError> {
        if values.len() != grid.len() {
            return Err(GridError::SizeMismatch { expected: grid.len(), got: values.len() });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(GridError::NonFinite(k));
        }
        Ok(ScalarField { grid, values })
    }

    pub fn from_fn(grid: Grid2, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = grid.nodes().map(|(i, j)| f(grid.u(i), grid.v(j))).collect();
        ScalarField { grid, values }
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> ScalarField {
        ScalarField { grid: self.grid, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip_map(&self, other: &ScalarField, f: impl Fn(f64, f64) -> f64) -> ScalarField {
        ScalarField {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Column along `u` at fixed `j`.
    pub fn u_line(&self, j: usize) -> Vec<f64> {
        (0..self.grid.nu).map(|i| self.at(i, j)).collect()
    }

    /// Row along `v` at fixed `i`.
    pub fn v_line(&self, i: usize) -> Vec<f64> {
        let s = self.grid.index(i, 0);
        self.values[s..s + self.grid.nv].to_vec()
    }

    /// Fourth-order `∂/∂u` at every node.
    pub fn d_du(&self) -> ScalarField {
        let g = self.grid;
        let mut out = vec![0.0; g.len()];
        for j in 0..g.nv {
            for (i, d) in stencil::d1(&self.u_line(j), g.hu).into_iter().enumerate() {
                out[g.index(i, j)] = d;
            }
        }
        ScalarField { grid: g, values: out }
    }

    /// Fourth-order `∂/∂v` at every node.
    pub fn d_dv(&self) -> ScalarField {
        let g = self.grid;
        let mut out = Vec::with_capacity(g.len());
        for i in 0..g.nu {
            out.extend(stencil::d1(&self.v_line(i), g.hv));
        }
        ScalarField { grid: g, values: out }
    }
}

/// Values on the interior nodes `1..nu-1 × 1..nv-1` of a grid; the boundary
/// ring carries no value.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorField {
    pub grid: Grid2,
    values: Vec<f64>,
}

impl InteriorField {
    pub(crate) fn from_fn(grid: Grid2, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = Vec::with_capacity((grid.nu - 2) * (grid.nv - 2));
        for i in 1..grid.nu - 1 {
            for j in 1..grid.nv - 1 {
                values.push(f(i, j));
            }
        }
        InteriorField { grid, values }
    }

    /// Value at grid node `(i, j)`; `None` on the boundary ring.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let g = &self.grid;
        if i == 0 || j == 0 || i >= g.nu - 1 || j >= g.nv - 1 {
            return None;
        }
        Some(self.values[(i - 1) * (g.nv - 2) + (j - 1)])
    }

    /// `(i, j, value)` over interior nodes.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let w = self.grid.nv - 2;
        self.values.iter().enumerate().map(move |(k, &v)| (k / w + 1, k % w + 1, v))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn mean_abs(&self) -> f64 {
        if self.values.is_empty() {
            return 0.0;
        }
        self.values.iter().map(|v| v.abs()).sum::<f64>() / self.values.len() as f64
    }

    /// Max over nodes at least `margin` away from the grid boundary.
    pub fn max_abs_with_margin(&self, margin: usize) -> f64 {
        let g = self.grid;
        self.iter()
            .filter(|&(i, j, _)| i >= margin && j >= margin && i + margin < g.nu && j + margin < g.nv)
            .fold(0.0, |m, (_, _, v)| m.max(v.abs()))
    }
}

/// Real values on a [`Grid1`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarProfile {
    pub grid: Grid1,
    pub values: Vec<f64>,
}

impl ScalarProfile {
    pub fn new(grid: Grid1, values: Vec<f64>) -> Result<Self, GridError> {
        if values.len() != grid.n {
            return Err(GridError::SizeMismatch { expected: grid.n, got: values.len() });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(GridError::NonFinite(k));
        }
        Ok(ScalarProfile { grid, values })
    }

    pub fn from_fn(grid: Grid1, f: impl Fn(f64) -> f64) -> Self {
        ScalarProfile { grid, values: (0..grid.n).map(|i| f(grid.u(i))).collect() }
    }

    pub fn d_du(&self) -> ScalarProfile {
        ScalarProfile { grid: self.grid, values: stencil::d1(&self.values, self.grid.h) }
    }
}

/// Values on interior nodes `1..n-1` of a [`Grid1`].
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorProfile {
    pub grid: Grid1,
    values: Vec<f64>,
}

impl InteriorProfile {
    pub(crate) fn from_fn(grid: Grid1, f: impl FnMut(usize) -> f64) -> Self {
        InteriorProfile { grid, values: (1..grid.n - 1).map(f).collect() }
    }

    pub fn get(&self, i: usize) -> Option<f64> {
        (i >= 1 && i + 1 < self.grid.n).then(|| self.values[i - 1])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().enumerate().map(|(k, &v)| (k + 1, v))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn mean_abs(&self) -> f64 {
        if self.values.is_empty() {
            return 0.0;
        }
        self.values.iter().map(|v| v.abs()).sum::<f64>() / self.values.len() as f64
    }

    pub fn max_abs_with_margin(&self, margin: usize) -> f64 {
        self.iter()
            .filter(|&(i, _)| i >= margin && i + margin < self.grid.n)
            .fold(0.0, |m, (_, v)| m.max(v.abs()))
    }
}
