//! Reconstruction of a minimal surface from its frame invariants: the linear
//! moving-frame system `Z_u = A Z`, `Z_v = B Z` and the position system
//! `z_u = √E x`, `z_v = √G y`, both integrated with RK4 on the sample grid.

use nalgebra::Matrix4;
use rayon::prelude::*;
use thiserror::Error;

use crate::analysis::{analyze_grid, AnalysisError, ClassHistogram, PointClass};
use crate::geom::{Frame4, Vec4};
use crate::grid::{Grid1, Grid2, ScalarField, ScalarProfile};
use crate::natural::{ode_residuals_with, pde_residuals_munu_with, NaturalError};
use crate::stencil;
use crate::surface::{ParametricSurface, SurfaceError};
use crate::tol::Tolerances;

#[derive(Debug, Error)]
pub enum BonnetError {
    #[error("compatibility residual {residual:e} is not below {limit:e}")]
    CompatibilityRejected { residual: f64, limit: f64 },
    #[error("degenerate invariants: {0}")]
    DegenerateInvariants(String),
    #[error("orthonormality drift {defect:e} exceeds {limit:e}")]
    DriftExceeded { defect: f64, limit: f64, result: Box<FrameIntegration> },
    #[error("cell closure defect {defect:e} exceeds {limit:e}")]
    ClosureExceeded { defect: f64, limit: f64 },
    #[error("initial frame is not orthonormal and positively oriented")]
    BadInitialFrame,
    #[error("input fields live on different grids")]
    GridMismatch,
    #[error("grid needs at least 5 nodes per direction")]
    GridTooSmall,
    #[error("reconstructed surface has {bad} interior nodes outside the minimal general type ({histogram:?}, worst κ²−k = {worst_minimality:e})")]
    Reanalysis { bad: usize, histogram: ClassHistogram, worst_minimality: f64 },
    #[error(transparent)]
    Natural(#[from] NaturalError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Coefficients of the frame system on a grid.
#[derive(Debug, Clone)]
pub struct FrameSystem {
    pub grid: Grid2,
    pub e: ScalarField,
    pub g: ScalarField,
    pub mu: ScalarField,
    pub nu: ScalarField,
    pub gamma1: ScalarField,
    pub gamma2: ScalarField,
    pub beta1: ScalarField,
    pub beta2: ScalarField,
    a: Vec<Matrix4<f64>>,
    b: Vec<Matrix4<f64>>,
}

/// `A` and `B` from the pointwise invariants.
pub fn coefficient_matrices(se: f64, sg: f64, nu: f64, mu: f64, g1: f64, g2: f64, b1: f64, b2: f64) -> (Matrix4<f64>, Matrix4<f64>) {
    #[rustfmt::skip]
    let a = Matrix4::new(
        0.0, g1, nu, 0.0,
        -g1, 0.0, 0.0, mu,
        -nu, 0.0, 0.0, b1,
        0.0, -mu, -b1, 0.0,
    ) * se;
    #[rustfmt::skip]
    let b = Matrix4::new(
        0.0, -g2, 0.0, mu,
        g2, 0.0, -nu, 0.0,
        0.0, nu, 0.0, b2,
        -mu, 0.0, -b2, 0.0,
    ) * sg;
    (a, b)
}

impl FrameSystem {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        e: ScalarField,
        g: ScalarField,
        mu: ScalarField,
        nu: ScalarField,
        gamma1: ScalarField,
        gamma2: ScalarField,
        beta1: ScalarField,
        beta2: ScalarField,
    ) -> Result<Self, BonnetError> {
        let grid = e.grid;
        if [&g, &mu, &nu, &gamma1, &gamma2, &beta1, &beta2].iter().any(|f| f.grid != grid) {
            return Err(BonnetError::GridMismatch);
        }
        if grid.nu < 5 || grid.nv < 5 {
            return Err(BonnetError::GridTooSmall);
        }
        if let Some(k) = (0..grid.len()).find(|&k| !(e.values[k] > 0.0 && g.values[k] > 0.0 && mu.values[k] > 0.0)) {
            return Err(BonnetError::DegenerateInvariants(format!(
                "E = {}, G = {}, μ = {} at node {k}",
                e.values[k], g.values[k], mu.values[k]
            )));
        }
        let (a, b) = (0..grid.len())
            .map(|k| {
                coefficient_matrices(
                    e.values[k].sqrt(),
                    g.values[k].sqrt(),
                    nu.values[k],
                    mu.values[k],
                    gamma1.values[k],
                    gamma2.values[k],
                    beta1.values[k],
                    beta2.values[k],
                )
            })
            .unzip();
        Ok(FrameSystem { grid, e, g, mu, nu, gamma1, gamma2, beta1, beta2, a, b })
    }

    /// System built from an analysed invariant field.
    pub fn from_field(f: &crate::canonical::InvariantField) -> Result<Self, BonnetError> {
        FrameSystem::new(
            f.e.clone(),
            f.g.clone(),
            f.mu.clone(),
            f.nu.clone(),
            f.gamma1.clone(),
            f.gamma2.clone(),
            f.beta1.clone(),
            f.beta2.clone(),
        )
    }

    pub fn a(&self, i: usize, j: usize) -> &Matrix4<f64> {
        &self.a[self.grid.index(i, j)]
    }

    pub fn b(&self, i: usize, j: usize) -> &Matrix4<f64> {
        &self.b[self.grid.index(i, j)]
    }

    /// Largest `|A/√E + (A/√E)ᵀ|` and `|B/√G + (B/√G)ᵀ|` entry.
    pub fn antisymmetry_defect(&self) -> f64 {
        (0..self.grid.len())
            .map(|k| {
                let a = self.a[k] / self.e.values[k].sqrt();
                let b = self.b[k] / self.g.values[k].sqrt();
                (a + a.transpose()).amax().max((b + b.transpose()).amax())
            })
            .fold(0.0, f64::max)
    }
}

fn entry_field(grid: Grid2, mats: &[Matrix4<f64>], r: usize, c: usize) -> ScalarField {
    ScalarField { grid, values: mats.iter().map(|m| m[(r, c)]).collect() }
}

/// Max over interior nodes of `|A_v − B_u + AB − BA|` (entrywise), with
/// fourth-order differences of the coefficient entries.
pub fn integrability_defect(sys: &FrameSystem) -> f64 {
    let g = sys.grid;
    let mut av = vec![Matrix4::zeros(); g.len()];
    let mut bu = vec![Matrix4::zeros(); g.len()];
    for r in 0..4 {
        for c in 0..4 {
            let da = entry_field(g, &sys.a, r, c).d_dv();
            let db = entry_field(g, &sys.b, r, c).d_du();
            for k in 0..g.len() {
                av[k][(r, c)] = da.values[k];
                bu[k][(r, c)] = db.values[k];
            }
        }
    }
    g.nodes()
        .filter(|&(i, j)| i > 0 && j > 0 && i + 1 < g.nu && j + 1 < g.nv)
        .map(|(i, j)| {
            let k = g.index(i, j);
            let (a, b) = (&sys.a[k], &sys.b[k]);
            (av[k] - bu[k] + a * b - b * a).amax()
        })
        .fold(0.0, f64::max)
}

/// Start index and weights of the cubic interpolant at the midpoint of
/// segment `k → k+1` on a line of `n` nodes.
fn midpoint_weights(k: usize, n: usize) -> (usize, Vec<f64>) {
    let width = n.min(4);
    let start = stencil::window(k + 1, n, width);
    let [w, _, _] = stencil::lagrange_weights(k as f64 + 0.5, start as f64, 1.0, width);
    (start, w)
}

fn combine(mats: &[Matrix4<f64>], start: usize, w: &[f64]) -> Matrix4<f64> {
    w.iter().enumerate().fold(Matrix4::zeros(), |acc, (m, wm)| acc + mats[start + m] * *wm)
}

/// RK4 for `Z′ = C(s) Z` along one line of coefficients.
fn rk4_line(coeffs: &[Matrix4<f64>], h: f64, z0: Matrix4<f64>, steps: usize) -> Vec<Matrix4<f64>> {
    let n = coeffs.len();
    let mut out = Vec::with_capacity(steps + 1);
    out.push(z0);
    let mut z = z0;
    for k in 0..steps {
        let (st, w) = midpoint_weights(k, n);
        let cm = combine(coeffs, st, &w);
        let k1 = coeffs[k] * z;
        let k2 = cm * (z + k1 * (h / 2.0));
        let k3 = cm * (z + k2 * (h / 2.0));
        let k4 = coeffs[k + 1] * (z + k3 * h);
        z += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        out.push(z);
    }
    out
}

/// Frames over the grid with drift and path diagnostics.
#[derive(Debug, Clone)]
pub struct FrameIntegration {
    pub grid: Grid2,
    pub frames: Vec<Frame4>,
    pub integrability: f64,
    pub orthonormality: f64,
    /// Largest frame difference against the v-first path on a 5×5 probe.
    pub path_dependence: f64,
}

impl FrameIntegration {
    pub fn frame(&self, i: usize, j: usize) -> &Frame4 {
        &self.frames[self.grid.index(i, j)]
    }
}

pub fn integrate_frame(sys: &FrameSystem, initial: Frame4, tol: &Tolerances) -> Result<FrameIntegration, BonnetError> {
    if !initial.is_valid(tol.tol_ortho.max(1e-12)) {
        return Err(BonnetError::BadInitialFrame);
    }
    let integrability = integrability_defect(sys);
    if !(integrability < tol.admit_tol) {
        return Err(BonnetError::CompatibilityRejected { residual: integrability, limit: tol.admit_tol });
    }
    let g = sys.grid;
    let row = |j: usize| -> Vec<Matrix4<f64>> { (0..g.nu).map(|i| *sys.a(i, j)).collect() };
    let col = |i: usize| -> Vec<Matrix4<f64>> { (0..g.nv).map(|j| *sys.b(i, j)).collect() };

    // u-line at v = v₀, then every v-line from it
    let base = rk4_line(&row(0), g.hu, initial.to_matrix(), g.nu - 1);
    let columns: Vec<Vec<Matrix4<f64>>> =
        (0..g.nu).into_par_iter().map(|i| rk4_line(&col(i), g.hv, base[i], g.nv - 1)).collect();
    let mut frames = vec![Frame4::standard(); g.len()];
    for (i, c) in columns.iter().enumerate() {
        for (j, z) in c.iter().enumerate() {
            frames[g.index(i, j)] = Frame4::from_matrix(z);
        }
    }
    let orthonormality = frames.iter().map(|f| f.orthonormality_defect()).fold(0.0, f64::max);

    // v-first path on a 5×5 probe of evenly spaced nodes
    let probe = |n: usize| -> Vec<usize> { (0..5).map(|k| k * (n - 1) / 4).collect() };
    let (pi, pj) = (probe(g.nu), probe(g.nv));
    let first = rk4_line(&col(0), g.hv, initial.to_matrix(), g.nv - 1);
    let mut path_dependence = 0.0f64;
    for &j in &pj {
        let along = rk4_line(&row(j), g.hu, first[j], g.nu - 1);
        for &i in &pi {
            path_dependence = path_dependence.max(Frame4::from_matrix(&along[i]).distance(&frames[g.index(i, j)]));
        }
    }

    let result = FrameIntegration { grid: g, frames, integrability, orthonormality, path_dependence };
    if orthonormality > tol.drift_tol {
        return Err(BonnetError::DriftExceeded { defect: orthonormality, limit: tol.drift_tol, result: Box::new(result) });
    }
    Ok(result)
}

/// Sampled chart with its largest per-cell closure defect.
#[derive(Debug, Clone)]
pub struct PositionIntegration {
    pub grid: Grid2,
    pub points: Vec<Vec4>,
    pub closure: f64,
}

/// Simpson rule per segment with the midpoint integrand from the cubic
/// interpolant, i.e. RK4 applied to a pure quadrature.
fn segment_integrals(values: &[Vec4], h: f64) -> Vec<Vec4> {
    let n = values.len();
    (0..n - 1)
        .map(|k| {
            let (st, w) = midpoint_weights(k, n);
            let mid = w.iter().enumerate().fold(Vec4::ZERO, |acc, (m, wm)| acc + values[st + m] * *wm);
            (values[k] + mid * 4.0 + values[k + 1]) * (h / 6.0)
        })
        .collect()
}

pub fn integrate_position(
    frames: &FrameIntegration,
    e: &ScalarField,
    g: &ScalarField,
    origin: Vec4,
    tol: &Tolerances,
) -> Result<PositionIntegration, BonnetError> {
    let grid = frames.grid;
    if e.grid != grid || g.grid != grid {
        return Err(BonnetError::GridMismatch);
    }
    let zu = |i: usize, j: usize| frames.frame(i, j).x * e.at(i, j).sqrt();
    let zv = |i: usize, j: usize| frames.frame(i, j).y * g.at(i, j).sqrt();
    // iu[j][i]: u-segment i on row j; iv[i][j]: v-segment j on column i
    let iu: Vec<Vec<Vec4>> =
        (0..grid.nv).map(|j| segment_integrals(&(0..grid.nu).map(|i| zu(i, j)).collect::<Vec<_>>(), grid.hu)).collect();
    let iv: Vec<Vec<Vec4>> =
        (0..grid.nu).map(|i| segment_integrals(&(0..grid.nv).map(|j| zv(i, j)).collect::<Vec<_>>(), grid.hv)).collect();

    let mut points = vec![Vec4::ZERO; grid.len()];
    let mut z = origin;
    for i in 0..grid.nu {
        if i > 0 {
            z = z + iu[0][i - 1];
        }
        let mut w = z;
        points[grid.index(i, 0)] = w;
        for j in 1..grid.nv {
            w = w + iv[i][j - 1];
            points[grid.index(i, j)] = w;
        }
    }
    let mut closure = 0.0f64;
    for i in 0..grid.nu - 1 {
        for j in 0..grid.nv - 1 {
            let loop_sum = iu[j][i] + iv[i + 1][j] - iu[j + 1][i] - iv[i][j];
            closure = closure.max(loop_sum.norm());
        }
    }
    if closure > tol.drift_tol {
        return Err(BonnetError::ClosureExceeded { defect: closure, limit: tol.drift_tol });
    }
    Ok(PositionIntegration { grid, points, closure })
}

/// Reconstructed chart, frames and diagnostics.
#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    pub grid: Grid2,
    pub points: Vec<Vec4>,
    pub frames: Vec<Frame4>,
    pub surface: ParametricSurface,
    pub system: FrameSystem,
    /// Admission residual of the natural equations.
    pub compatibility: f64,
    pub integrability: f64,
    pub orthonormality: f64,
    pub path_dependence: f64,
    pub closure: f64,
    /// Classes of the re-analysed interior nodes.
    pub histogram: ClassHistogram,
}

impl ReconstructionResult {
    pub fn summary(&self) -> String {
        format!(
            "compatibility {:e}\nintegrability {:e}\northonormality {:e}\npath_dependence {:e}\nclosure {:e}\n",
            self.compatibility, self.integrability, self.orthonormality, self.path_dependence, self.closure
        )
    }
}

fn finish(
    sys: FrameSystem,
    compatibility: f64,
    initial: Frame4,
    origin: Vec4,
    tol: &Tolerances,
) -> Result<ReconstructionResult, BonnetError> {
    let fi = integrate_frame(&sys, initial, tol)?;
    let pos = integrate_position(&fi, &sys.e, &sys.g, origin, tol)?;
    let grid = sys.grid;
    let surface = ParametricSurface::from_samples(grid, pos.points.clone())?;
    let inner = Grid2::new(grid.u0 + grid.hu, grid.hu, grid.nu - 2, grid.v0 + grid.hv, grid.hv, grid.nv - 2)
        .map_err(|_| BonnetError::GridTooSmall)?;
    let analysis = analyze_grid(&surface, &inner, tol)?;
    let bad = analysis.histogram.total() - analysis.histogram.count(PointClass::MinimalGeneralType);
    if bad > 0 {
        let worst_minimality = analysis.max_by(|r| r.inv.minimality_defect().abs());
        return Err(BonnetError::Reanalysis { bad, histogram: analysis.histogram, worst_minimality });
    }
    Ok(ReconstructionResult {
        grid,
        points: pos.points,
        frames: fi.frames,
        surface,
        system: sys,
        compatibility,
        integrability: fi.integrability,
        orthonormality: fi.orthonormality,
        path_dependence: fi.path_dependence,
        closure: pos.closure,
        histogram: analysis.histogram,
    })
}

/// Frame system for strongly regular invariants in canonical parameters:
/// `E = G = 1/√|μ²−ν²|`, `γ₁ = s_v`, `γ₂ = s_u` with `s = |μ²−ν²|^{1/4}`,
/// `β₁ = −s ℓ_v`, `β₂ = s ℓ_u` with `ℓ = ½ ln|(μ+ν)/(μ−ν)|`.
pub fn strongly_regular_system(mu: &ScalarField, nu: &ScalarField, tol: &Tolerances) -> Result<FrameSystem, BonnetError> {
    let grid = mu.grid;
    if nu.grid != grid {
        return Err(BonnetError::GridMismatch);
    }
    let gap = mu.zip_map(nu, |m, n| (m * m - n * n).abs());
    let (gu, gv) = (gap.d_du(), gap.d_dv());
    if let Some(k) = (0..grid.len()).find(|&k| !(gu.values[k].abs() > tol.tol_gen && gv.values[k].abs() > tol.tol_gen)) {
        return Err(BonnetError::DegenerateInvariants(format!(
            "(μ²−ν²)_u = {:e}, (μ²−ν²)_v = {:e} at node {k}",
            gu.values[k], gv.values[k]
        )));
    }
    let metric = gap.map(|x| 1.0 / x.sqrt());
    let s = gap.map(|x| x.powf(0.25));
    let ell = mu.zip_map(nu, |m, n| 0.5 * ((m + n) / (m - n)).abs().ln());
    let (lu, lv) = (ell.d_du(), ell.d_dv());
    FrameSystem::new(
        metric.clone(),
        metric,
        mu.clone(),
        nu.clone(),
        s.d_dv(),
        s.d_du(),
        s.zip_map(&lv, |a, b| -a * b),
        s.zip_map(&lu, |a, b| a * b),
    )
}

/// Strongly regular minimal surface with prescribed `(μ, ν)` in canonical
/// parameters.
pub fn reconstruct_from_invariants(
    mu: &ScalarField,
    nu: &ScalarField,
    initial: Frame4,
    origin: Vec4,
    tol: &Tolerances,
) -> Result<ReconstructionResult, BonnetError> {
    let res = pde_residuals_munu_with(mu, nu, tol)?.max_abs();
    if !(res < tol.admit_tol) {
        return Err(BonnetError::CompatibilityRejected { residual: res, limit: tol.admit_tol });
    }
    let sys = strongly_regular_system(mu, nu, tol)?;
    finish(sys, res, initial, origin, tol)
}

/// Frame system for the `γ₁ = 0` class: `E = 1`, `G = 1/√|μ²−ν²|`,
/// `γ₂ = ¼(ln|μ²−ν²|)_u`, `β₂ = ½(ln|(μ+ν)/(μ−ν)|)_u`, `γ₁ = β₁ = 0`.
pub fn gamma1_zero_system(
    mu: &ScalarProfile,
    nu: &ScalarProfile,
    v_grid: Grid1,
    tol: &Tolerances,
) -> Result<FrameSystem, BonnetError> {
    let ug = mu.grid;
    if nu.grid != ug {
        return Err(BonnetError::GridMismatch);
    }
    let gap: Vec<f64> = mu.values.iter().zip(&nu.values).map(|(m, n)| (m * m - n * n).abs()).collect();
    let ratio: Vec<f64> = mu.values.iter().zip(&nu.values).map(|(m, n)| ((m + n) / (m - n)).abs()).collect();
    let ln_gap = stencil::derivative(&gap.iter().map(|x| x.ln()).collect::<Vec<_>>(), ug.h, 1, 7);
    let ln_ratio = stencil::derivative(&ratio.iter().map(|x| x.ln()).collect::<Vec<_>>(), ug.h, 1, 7);
    if let Some(k) = (0..ug.n).find(|&k| !(ln_gap[k].abs() > tol.tol_gen && ln_ratio[k].abs() > tol.tol_gen)) {
        return Err(BonnetError::DegenerateInvariants(format!(
            "(ln|μ²−ν²|)_u = {:e}, (ln|(μ+ν)/(μ−ν)|)_u = {:e} at node {k}",
            ln_gap[k], ln_ratio[k]
        )));
    }
    let grid = Grid2::new(ug.u0, ug.h, ug.n, v_grid.u0, v_grid.h, v_grid.n).map_err(|_| BonnetError::GridTooSmall)?;
    let field = |f: &dyn Fn(usize) -> f64| ScalarField { grid, values: (0..grid.len()).map(|k| f(k / grid.nv)).collect() };
    FrameSystem::new(
        field(&|_| 1.0),
        field(&|i| 1.0 / gap[i].sqrt()),
        field(&|i| mu.values[i]),
        field(&|i| nu.values[i]),
        field(&|_| 0.0),
        field(&|i| 0.25 * ln_gap[i]),
        field(&|_| 0.0),
        field(&|i| 0.5 * ln_ratio[i]),
    )
}

/// Minimal surface with `γ₁ = 0` and prescribed profiles `(μ(u), ν(u))`.
pub fn reconstruct_gamma1_zero(
    mu: &ScalarProfile,
    nu: &ScalarProfile,
    v_extent: f64,
    v_nodes: usize,
    initial: Frame4,
    origin: Vec4,
    tol: &Tolerances,
) -> Result<ReconstructionResult, BonnetError> {
    let res = ode_residuals_with(mu, nu, tol)?.max_abs();
    if !(res < tol.admit_tol) {
        return Err(BonnetError::CompatibilityRejected { residual: res, limit: tol.admit_tol });
    }
    if v_nodes < 5 || !(v_extent > 0.0) {
        return Err(BonnetError::GridTooSmall);
    }
    let v_grid = Grid1::new(0.0, v_extent / (v_nodes - 1) as f64, v_nodes).map_err(|_| BonnetError::GridTooSmall)?;
    let sys = gamma1_zero_system(mu, nu, v_grid, tol)?;
    finish(sys, res, initial, origin, tol)
}
