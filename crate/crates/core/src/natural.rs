//! Residuals of the natural equations for `(μ, ν)` or `(K, κ)` on grids and
//! profiles, with second-order central stencils and no boundary values.

use thiserror::Error;

use crate::grid::{Grid1, InteriorField, InteriorProfile, ScalarField, ScalarProfile};
use crate::tol::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NaturalError {
    #[error("grid needs at least 3 nodes per direction")]
    GridTooSmall,
    #[error("degenerate invariants at node {node:?}: {quantity} = {value:e}")]
    DegenerateInvariants { node: (usize, usize), quantity: &'static str, value: f64 },
    #[error("logarithm argument `{quantity}` changes sign between nodes {a:?} and {b:?}")]
    BranchBreak { quantity: &'static str, a: (usize, usize), b: (usize, usize) },
    #[error("input grids differ")]
    GridMismatch,
}

/// Five-point Laplacian on interior nodes.
pub fn laplacian(f: &ScalarField) -> Result<InteriorField, NaturalError> {
    let g = f.grid;
    if g.nu < 3 || g.nv < 3 {
        return Err(NaturalError::GridTooSmall);
    }
    let (iu, iv) = (1.0 / (g.hu * g.hu), 1.0 / (g.hv * g.hv));
    Ok(InteriorField::from_fn(g, |i, j| {
        let c = 2.0 * f.at(i, j);
        (f.at(i + 1, j) + f.at(i - 1, j) - c) * iu + (f.at(i, j + 1) + f.at(i, j - 1) - c) * iv
    }))
}

/// Pair of residual fields with summary statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct PdeResiduals {
    pub r1: InteriorField,
    pub r2: InteriorField,
}

impl PdeResiduals {
    pub fn max_abs(&self) -> f64 {
        self.r1.max_abs().max(self.r2.max_abs())
    }

    pub fn summary(&self) -> String {
        format!(
            "r1 max {:e} mean {:e}; r2 max {:e} mean {:e}",
            self.r1.max_abs(),
            self.r1.mean_abs(),
            self.r2.max_abs(),
            self.r2.mean_abs()
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OdeResiduals {
    pub r1: InteriorProfile,
    pub r2: InteriorProfile,
}

impl OdeResiduals {
    pub fn max_abs(&self) -> f64 {
        self.r1.max_abs().max(self.r2.max_abs())
    }
}

/// Rejects a sign change of `values` between lattice neighbours.
fn check_sign(values: &[f64], shape: (usize, usize), quantity: &'static str) -> Result<(), NaturalError> {
    let (nu, nv) = shape;
    for i in 0..nu {
        for j in 0..nv {
            let s = values[i * nv + j].signum();
            if i + 1 < nu && values[(i + 1) * nv + j].signum() != s {
                return Err(NaturalError::BranchBreak { quantity, a: (i, j), b: (i + 1, j) });
            }
            if j + 1 < nv && values[i * nv + j + 1].signum() != s {
                return Err(NaturalError::BranchBreak { quantity, a: (i, j), b: (i, j + 1) });
            }
        }
    }
    Ok(())
}

fn check_floor(values: &[f64], nv: usize, quantity: &'static str, floor: f64) -> Result<(), NaturalError> {
    match values.iter().position(|v| !(v.abs() > floor)) {
        Some(k) => Err(NaturalError::DegenerateInvariants { node: (k / nv, k % nv), quantity, value: values[k] }),
        None => Ok(()),
    }
}

/// `ln|μ² − ν²|`, `ln|(μ+ν)/(μ−ν)|` and `√|μ² − ν²|` after branch checks.
fn munu_logs(mu: &[f64], nu: &[f64], shape: (usize, usize), tol: &Tolerances) -> Result<[Vec<f64>; 3], NaturalError> {
    let gap: Vec<f64> = mu.iter().zip(nu).map(|(m, n)| m * m - n * n).collect();
    check_floor(&gap, shape.1, "μ² − ν²", tol.tol_gen)?;
    check_floor(mu, shape.1, "μ", 0.0)?;
    check_floor(nu, shape.1, "ν", 0.0)?;
    check_sign(&gap, shape, "μ² − ν²")?;
    let ratio: Vec<f64> = mu.iter().zip(nu).map(|(m, n)| (m + n) / (m - n)).collect();
    check_sign(&ratio, shape, "(μ+ν)/(μ−ν)")?;
    Ok([
        gap.iter().map(|g| g.abs().ln()).collect(),
        ratio.iter().map(|r| r.abs().ln()).collect(),
        gap.iter().map(|g| g.abs().sqrt()).collect(),
    ])
}

pub fn pde_residuals_munu(mu: &ScalarField, nu: &ScalarField) -> Result<PdeResiduals, NaturalError> {
    pde_residuals_munu_with(mu, nu, &Tolerances::default())
}

pub fn pde_residuals_munu_with(mu: &ScalarField, nu: &ScalarField, tol: &Tolerances) -> Result<PdeResiduals, NaturalError> {
    let g = mu.grid;
    if nu.grid != g {
        return Err(NaturalError::GridMismatch);
    }
    if g.nu < 3 || g.nv < 3 {
        return Err(NaturalError::GridTooSmall);
    }
    let [l, r, root] = munu_logs(&mu.values, &nu.values, (g.nu, g.nv), tol)?;
    let lap_l = laplacian(&ScalarField { grid: g, values: l })?;
    let lap_r = laplacian(&ScalarField { grid: g, values: r })?;
    let node = |i: usize, j: usize| g.index(i, j);
    let r1 = InteriorField::from_fn(g, |i, j| {
        let (m, n) = (mu.at(i, j), nu.at(i, j));
        0.25 * root[node(i, j)] * lap_l.get(i, j).unwrap_or(0.0) + n * n + m * m
    });
    let r2 = InteriorField::from_fn(g, |i, j| {
        let (m, n) = (mu.at(i, j), nu.at(i, j));
        0.5 * root[node(i, j)] * lap_r.get(i, j).unwrap_or(0.0) + 2.0 * n * m
    });
    Ok(PdeResiduals { r1, r2 })
}

pub fn pde_residuals_kkappa(gauss: &ScalarField, kappa: &ScalarField) -> Result<PdeResiduals, NaturalError> {
    pde_residuals_kkappa_with(gauss, kappa, &Tolerances::default())
}

pub fn pde_residuals_kkappa_with(
    gauss: &ScalarField,
    kappa: &ScalarField,
    tol: &Tolerances,
) -> Result<PdeResiduals, NaturalError> {
    let g = gauss.grid;
    if kappa.grid != g {
        return Err(NaturalError::GridMismatch);
    }
    if g.nu < 3 || g.nv < 3 {
        return Err(NaturalError::GridTooSmall);
    }
    let shape = (g.nu, g.nv);
    let disc: Vec<f64> = gauss.values.iter().zip(&kappa.values).map(|(k, c)| k * k - c * c).collect();
    if let Some(k) = disc.iter().position(|d| !(*d > tol.tol_gen)) {
        return Err(NaturalError::DegenerateInvariants { node: (k / g.nv, k % g.nv), quantity: "K² − κ²", value: disc[k] });
    }
    let minus: Vec<f64> = gauss.values.iter().zip(&kappa.values).map(|(k, c)| k - c).collect();
    let plus: Vec<f64> = gauss.values.iter().zip(&kappa.values).map(|(k, c)| k + c).collect();
    check_sign(&minus, shape, "K − κ")?;
    check_sign(&plus, shape, "K + κ")?;
    let l = ScalarField { grid: g, values: disc.iter().map(|d| d.ln()).collect() };
    let r = ScalarField { grid: g, values: minus.iter().zip(&plus).map(|(a, b)| (a / b).abs().ln()).collect() };
    let (lap_l, lap_r) = (laplacian(&l)?, laplacian(&r)?);
    let r1 = InteriorField::from_fn(g, |i, j| {
        let q = disc[g.index(i, j)].powf(0.25);
        0.125 * q * lap_l.get(i, j).unwrap_or(0.0) - gauss.at(i, j)
    });
    let r2 = InteriorField::from_fn(g, |i, j| {
        let q = disc[g.index(i, j)].powf(0.25);
        0.25 * q * lap_r.get(i, j).unwrap_or(0.0) + kappa.at(i, j)
    });
    Ok(PdeResiduals { r1, r2 })
}

pub fn ode_residuals(mu: &ScalarProfile, nu: &ScalarProfile) -> Result<OdeResiduals, NaturalError> {
    ode_residuals_with(mu, nu, &Tolerances::default())
}

pub fn ode_residuals_with(mu: &ScalarProfile, nu: &ScalarProfile, tol: &Tolerances) -> Result<OdeResiduals, NaturalError> {
    let g: Grid1 = mu.grid;
    if nu.grid != g {
        return Err(NaturalError::GridMismatch);
    }
    if g.n < 3 {
        return Err(NaturalError::GridTooSmall);
    }
    let [l, r, _] = munu_logs(&mu.values, &nu.values, (g.n, 1), tol)?;
    let h = g.h;
    let d1 = |f: &[f64], i: usize| (f[i + 1] - f[i - 1]) / (2.0 * h);
    let d2 = |f: &[f64], i: usize| (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
    let r1 = InteriorProfile::from_fn(g, |i| {
        let (m, n) = (mu.values[i], nu.values[i]);
        0.25 * d2(&l, i) - d1(&l, i).powi(2) / 16.0 + n * n + m * m
    });
    let r2 = InteriorProfile::from_fn(g, |i| {
        let (m, n) = (mu.values[i], nu.values[i]);
        0.5 * d2(&r, i) - 0.125 * d1(&l, i) * d1(&r, i) + 2.0 * n * m
    });
    Ok(OdeResiduals { r1, r2 })
}
