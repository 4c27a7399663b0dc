//! Canonical tangents, the geometric frame `{x, y, n₁, n₂}` of a minimal
//! surface of general type, its six invariants over a grid, and canonical
//! reparametrization.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::analysis::{classify_point_with, fundamental_forms_with, invariants_from, AnalysisError, PointClass};
use crate::geom::Frame4;
use crate::grid::{Grid2, ScalarField};
use crate::stencil;
use crate::surface::{Domain, ParametricSurface};
use crate::tol::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CanonicalError {
    #[error("super-conformal point: the curvature ellipse is a circle")]
    SuperConformal,
    #[error("point ({u}, {v}) is {class}, not minimal of general type")]
    NotGeneralType { u: f64, v: f64, class: PointClass },
    #[error("parameters are not semi-canonical at ({u}, {v}): |F|/√(EG) = {f_rel:e}, φ = {phi:e}")]
    NotSemiCanonical { u: f64, v: f64, f_rel: f64, phi: f64 },
    #[error("μ² or ν² jumps by {jump:e} between neighbouring nodes")]
    BranchJump { jump: f64 },
    #[error("grid needs at least 5×5 nodes")]
    GridTooSmall,
    #[error("separation of variables fails: relative variation {defect:e}")]
    NotReparametrizable { defect: f64 },
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// Angle `φ ∈ (−π/8, π/8]` turning `{x, y}` into canonical tangents, from
/// the normal coordinates `σ(x,x) = (a, b)`, `σ(x,y) = (c, d)`.
pub fn canonical_rotation_angle(a: f64, b: f64, c: f64, d: f64) -> Result<f64, CanonicalError> {
    canonical_rotation_angle_with(a, b, c, d, &Tolerances::default())
}

pub fn canonical_rotation_angle_with(a: f64, b: f64, c: f64, d: f64, tol: &Tolerances) -> Result<f64, CanonicalError> {
    let p = a * c + b * d;
    let q = 0.5 * (a * a + b * b - c * c - d * d);
    if 4.0 * (p * p + q * q) <= tol.tol_gen {
        return Err(CanonicalError::SuperConformal);
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    if q == 0.0 {
        return Ok(std::f64::consts::FRAC_PI_8);
    }
    Ok((p / q).atan() / 4.0)
}

/// Rotated coefficients `(ā, b̄, c̄, d̄)`.
pub fn rotate_coefficients(a: f64, b: f64, c: f64, d: f64, phi: f64) -> (f64, f64, f64, f64) {
    let (s, co) = (2.0 * phi).sin_cos();
    (a * co + c * s, b * co + d * s, c * co - a * s, d * co - b * s)
}

/// Geometric frame and the pointwise invariants `ν`, `μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalFrameData {
    pub frame: Frame4,
    pub nu: f64,
    pub mu: f64,
    /// Rotation from `{z_u/√E, ·}` to the canonical tangents.
    pub phi: f64,
    /// `(ν, μ)` for the other axis ordering (tangents turned by π/4).
    pub alternate: (f64, f64),
    pub kappa: f64,
    pub gauss: f64,
}

/// Frame at a point already classified as minimal of general type.
pub fn geometric_frame(surface: &ParametricSurface, u: f64, v: f64) -> Result<CanonicalFrameData, CanonicalError> {
    geometric_frame_with(surface, u, v, &Tolerances::default())
}

pub fn geometric_frame_with(
    surface: &ParametricSurface,
    u: f64,
    v: f64,
    tol: &Tolerances,
) -> Result<CanonicalFrameData, CanonicalError> {
    let fd = fundamental_forms_with(surface, u, v, tol)?;
    let inv = invariants_from(&fd);
    match classify_point_with(&inv, tol) {
        PointClass::MinimalGeneralType => {}
        PointClass::MinimalSuperConformal => return Err(CanonicalError::SuperConformal),
        class => return Err(CanonicalError::NotGeneralType { u, v, class }),
    }
    let [e1, e2] = fd.normal;
    let (a, b) = (inv.sigma_xx.dot(&e1), inv.sigma_xx.dot(&e2));
    let (c, d) = (inv.sigma_xy.dot(&e1), inv.sigma_xy.dot(&e2));
    let phi = canonical_rotation_angle_with(a, b, c, d, tol)?;
    let (ab, bb, cb, db) = rotate_coefficients(a, b, c, d, phi);
    let (s, co) = phi.sin_cos();
    let x = inv.x * co + inv.y * s;
    let y = inv.y * co - inv.x * s;
    let mu = cb.hypot(db);
    // n₂ along σ(x,y); n₁ its quarter turn keeping {x, y, n₁, n₂} positive
    let (n2c, n2d) = (cb / mu, db / mu);
    let n2 = e1 * n2c + e2 * n2d;
    let n1 = e1 * n2d - e2 * n2c;
    let nu = ab * n2d - bb * n2c;
    Ok(CanonicalFrameData {
        frame: Frame4::new(x, y, n1, n2),
        nu,
        mu,
        phi,
        alternate: (nu.signum() * mu, nu.abs()),
        kappa: inv.kappa,
        gauss: inv.gauss,
    })
}

/// Frame invariants sampled on a grid in semi-canonical parameters.
#[derive(Debug, Clone)]
pub struct InvariantField {
    pub grid: Grid2,
    pub frames: Vec<Frame4>,
    pub nu: ScalarField,
    pub mu: ScalarField,
    pub gamma1: ScalarField,
    pub gamma2: ScalarField,
    pub beta1: ScalarField,
    pub beta2: ScalarField,
    pub e: ScalarField,
    pub f: ScalarField,
    pub g: ScalarField,
    pub phi: ScalarField,
    pub kappa: ScalarField,
    pub gauss: ScalarField,
    /// The six Codazzi-type residuals; the first four are also the
    /// least-squares residuals of the `β` solve.
    pub codazzi: [ScalarField; 6],
    /// `κ + x(β₂) − y(β₁) + γ₁β₁ − γ₂β₂`.
    pub normal_connection: ScalarField,
    /// Largest relative jump of `μ²` or `ν²` between neighbours.
    pub max_jump: f64,
    /// Nodes with `|μ² − ν²| ≤ tol_gen`, excluded from statistics.
    pub near_super_conformal: Vec<bool>,
}

impl InvariantField {
    pub fn frame(&self, i: usize, j: usize) -> &Frame4 {
        &self.frames[self.grid.index(i, j)]
    }

    /// Max of `|field|` over nodes at least `margin` from the boundary,
    /// skipping near-super-conformal nodes.
    pub fn max_abs(&self, field: &ScalarField, margin: usize) -> f64 {
        let g = self.grid;
        g.nodes()
            .filter(|&(i, j)| i >= margin && j >= margin && i + margin < g.nu && j + margin < g.nv)
            .filter(|&(i, j)| !self.near_super_conformal[g.index(i, j)])
            .fold(0.0, |m, (i, j)| m.max(field.at(i, j).abs()))
    }

    pub fn max_codazzi(&self, margin: usize) -> [f64; 6] {
        std::array::from_fn(|k| self.max_abs(&self.codazzi[k], margin))
    }

    /// `|μ² − ν²|` at every node.
    pub fn gap(&self) -> ScalarField {
        self.mu.zip_map(&self.nu, |m, n| (m * m - n * n).abs())
    }
}

/// Builds the geometric frame at every node, then `γ₁, γ₂` from the metric
/// and `β₁, β₂` by least squares from the first four Codazzi equations.
pub fn frame_invariants_field(surface: &ParametricSurface, grid: &Grid2) -> Result<InvariantField, CanonicalError> {
    frame_invariants_field_with(surface, grid, &Tolerances::default())
}

pub fn frame_invariants_field_with(
    surface: &ParametricSurface,
    grid: &Grid2,
    tol: &Tolerances,
) -> Result<InvariantField, CanonicalError> {
    if grid.nu < 5 || grid.nv < 5 {
        return Err(CanonicalError::GridTooSmall);
    }
    let nodes: Vec<(CanonicalFrameData, f64, f64, f64)> = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let (u, v) = grid.node(idx / grid.nv, idx % grid.nv);
            let fd = fundamental_forms_with(surface, u, v, tol)?;
            let cf = geometric_frame_with(surface, u, v, tol)?;
            let f_rel = fd.f.abs() / (fd.e * fd.g).sqrt();
            if f_rel > tol.semi_tol || cf.phi.abs() > tol.semi_tol {
                return Err(CanonicalError::NotSemiCanonical { u, v, f_rel, phi: cf.phi });
            }
            Ok((cf, fd.e, fd.f, fd.g))
        })
        .collect::<Result<_, CanonicalError>>()?;

    let field = |f: &dyn Fn(&(CanonicalFrameData, f64, f64, f64)) -> f64| ScalarField {
        grid: *grid,
        values: nodes.iter().map(f).collect(),
    };
    let nu = field(&|n| n.0.nu);
    let mu = field(&|n| n.0.mu);
    let e = field(&|n| n.1);
    let f = field(&|n| n.2);
    let g = field(&|n| n.3);
    let phi = field(&|n| n.0.phi);
    let kappa = field(&|n| n.0.kappa);
    let gauss = field(&|n| n.0.gauss);
    let frames = nodes.iter().map(|n| n.0.frame).collect();

    let near_super_conformal: Vec<bool> = nu
        .values
        .iter()
        .zip(&mu.values)
        .map(|(n, m)| (m * m - n * n).abs() <= tol.tol_gen)
        .collect();
    let max_jump = neighbour_jump(&mu, &nu);
    if max_jump > tol.jump_tol {
        return Err(CanonicalError::BranchJump { jump: max_jump });
    }

    let se = e.map(f64::sqrt);
    let sg = g.map(f64::sqrt);
    let gamma1 = se.d_dv().zip_map(&se, |d, s| -d / s).zip_map(&sg, |x, s| x / s);
    let gamma2 = sg.d_du().zip_map(&se, |d, s| -d / s).zip_map(&sg, |x, s| x / s);

    let (mu_u, mu_v, nu_u, nu_v) = (mu.d_du(), mu.d_dv(), nu.d_du(), nu.d_dv());
    let n = grid.len();
    let mut beta1 = vec![0.0; n];
    let mut beta2 = vec![0.0; n];
    for k in 0..n {
        let (m, v_) = (mu.values[k], nu.values[k]);
        let (ise, isg) = (1.0 / se.values[k], 1.0 / sg.values[k]);
        let (g1, g2) = (gamma1.values[k], gamma2.values[k]);
        let r1 = mu_u.values[k] * ise - 2.0 * m * g2;
        let r4 = nu_u.values[k] * ise - 2.0 * v_ * g2;
        let r2 = mu_v.values[k] * isg - 2.0 * m * g1;
        let r3 = nu_v.values[k] * isg - 2.0 * v_ * g1;
        let s = v_ * v_ + m * m;
        beta2[k] = (v_ * r1 + m * r4) / s;
        beta1[k] = -(v_ * r2 + m * r3) / s;
    }
    let beta1 = ScalarField { grid: *grid, values: beta1 };
    let beta2 = ScalarField { grid: *grid, values: beta2 };

    let (b1v, b2u) = (beta1.d_dv(), beta2.d_du());
    let (g1v, g2u) = (gamma1.d_dv(), gamma2.d_du());
    let mut res: [Vec<f64>; 6] = std::array::from_fn(|_| vec![0.0; n]);
    let mut nc = vec![0.0; n];
    for k in 0..n {
        let (m, v_) = (mu.values[k], nu.values[k]);
        let (ise, isg) = (1.0 / se.values[k], 1.0 / sg.values[k]);
        let (g1, g2) = (gamma1.values[k], gamma2.values[k]);
        let (b1, b2) = (beta1.values[k], beta2.values[k]);
        res[0][k] = 2.0 * m * g2 + v_ * b2 - mu_u.values[k] * ise;
        res[1][k] = 2.0 * m * g1 - v_ * b1 - mu_v.values[k] * isg;
        res[2][k] = 2.0 * v_ * g1 - m * b1 - nu_v.values[k] * isg;
        res[3][k] = 2.0 * v_ * g2 + m * b2 - nu_u.values[k] * ise;
        res[4][k] = g2 * b2 - g1 * b1 - 2.0 * v_ * m - (b2u.values[k] * ise - b1v.values[k] * isg);
        res[5][k] = g1 * g1 + g2 * g2 - (v_ * v_ + m * m) - (g2u.values[k] * ise + g1v.values[k] * isg);
        nc[k] = kappa.values[k] + b2u.values[k] * ise - b1v.values[k] * isg + g1 * b1 - g2 * b2;
    }
    let codazzi = res.map(|values| ScalarField { grid: *grid, values });

    Ok(InvariantField {
        grid: *grid,
        frames,
        nu,
        mu,
        gamma1,
        gamma2,
        beta1,
        beta2,
        e,
        f,
        g,
        phi,
        kappa,
        gauss,
        codazzi,
        normal_connection: ScalarField { grid: *grid, values: nc },
        max_jump,
        near_super_conformal,
    })
}

fn neighbour_jump(mu: &ScalarField, nu: &ScalarField) -> f64 {
    let g = mu.grid;
    let sq = |f: &ScalarField, i: usize, j: usize| f.at(i, j).powi(2);
    let scale = |i: usize, j: usize| sq(mu, i, j) + sq(nu, i, j);
    let mut worst = 0.0f64;
    for (i, j) in g.nodes() {
        for (di, dj) in [(1, 0), (0, 1)] {
            let (a, b) = (i + di, j + dj);
            if a >= g.nu || b >= g.nv {
                continue;
            }
            let s = scale(i, j).max(scale(a, b));
            for f in [mu, nu] {
                worst = worst.max((sq(f, i, j) - sq(f, a, b)).abs() / s);
            }
        }
    }
    worst
}

/// Frame invariants at one point from a 9×9 stencil of spacing `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameInvariants {
    pub frame: Frame4,
    pub nu: f64,
    pub mu: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub e: f64,
    pub g: f64,
}

pub fn frame_invariants_at(surface: &ParametricSurface, u: f64, v: f64, h: f64) -> Result<FrameInvariants, CanonicalError> {
    let grid = Grid2::new(u - 4.0 * h, h, 9, v - 4.0 * h, h, 9).map_err(|_| CanonicalError::GridTooSmall)?;
    let fld = frame_invariants_field(surface, &grid)?;
    let at = |f: &ScalarField| f.at(4, 4);
    Ok(FrameInvariants {
        frame: *fld.frame(4, 4),
        nu: at(&fld.nu),
        mu: at(&fld.mu),
        gamma1: at(&fld.gamma1),
        gamma2: at(&fld.gamma2),
        beta1: at(&fld.beta1),
        beta2: at(&fld.beta2),
        e: at(&fld.e),
        g: at(&fld.g),
    })
}

/// Normalization of canonical parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonicalVariant {
    /// `E√|μ²−ν²| = G√|μ²−ν²| = 1`.
    StronglyRegular,
    /// `E = 1`, `G√|μ²−ν²| = 1`.
    Gamma1Zero,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalReport {
    pub is_canonical: bool,
    pub max_defect: f64,
    pub variant: CanonicalVariant,
}

/// Sup-norm deviation of the field from canonical normalization.
pub fn check_canonical_parameters(field: &InvariantField, variant: CanonicalVariant, tol: &Tolerances) -> CanonicalReport {
    let root = field.gap().map(f64::sqrt);
    let mut worst = 0.0f64;
    for k in 0..field.grid.len() {
        if field.near_super_conformal[k] {
            continue;
        }
        let r = root.values[k];
        let e_defect = match variant {
            CanonicalVariant::StronglyRegular => field.e.values[k] * r - 1.0,
            CanonicalVariant::Gamma1Zero => field.e.values[k] - 1.0,
        };
        worst = worst.max(e_defect.abs()).max((field.g.values[k] * r - 1.0).abs());
    }
    CanonicalReport { is_canonical: worst < tol.reparam_tol, max_defect: worst, variant }
}

/// Monotone map `s ↦ u` inverting `s = s₀ + ∫√φ du` on a lattice.
#[derive(Debug, Clone)]
pub struct ArcMap {
    x0: f64,
    h: f64,
    /// `s` at the lattice nodes.
    pub s: Vec<f64>,
    /// Density `φ` at the lattice nodes.
    pub density: Vec<f64>,
}

impl ArcMap {
    pub fn new(x0: f64, h: f64, density: Vec<f64>) -> Self {
        let root: Vec<f64> = density.iter().map(|d| d.sqrt()).collect();
        let s = stencil::cumulative_simpson(&root, h).into_iter().map(|x| x + x0).collect();
        ArcMap { x0, h, s, density }
    }

    fn interp(&self, vals: &[f64], x: f64) -> [f64; 3] {
        let n = vals.len();
        let i = ((x - self.x0) / self.h).round().clamp(0.0, (n - 1) as f64) as usize;
        let st = stencil::window(i, n, 5);
        let w = stencil::lagrange_weights(x, self.x0 + st as f64 * self.h, self.h, 5);
        std::array::from_fn(|d| (0..5).map(|k| w[d][k] * vals[st + k]).sum())
    }

    pub fn range(&self) -> (f64, f64) {
        (self.s[0], self.s[self.s.len() - 1])
    }

    /// `(x, dx/ds, d²x/ds²)` at `s`.
    pub fn inverse_jet(&self, s: f64) -> [f64; 3] {
        let n = self.s.len();
        // start from the bracketing node, then Newton on the interpolant
        let k = self.s.partition_point(|&t| t < s).min(n - 1);
        let mut x = self.x0 + k as f64 * self.h;
        for _ in 0..50 {
            let [val, _, _] = self.interp(&self.s, x);
            let phi = self.interp(&self.density, x)[0];
            let step = (val - s) / phi.sqrt();
            x -= step;
            if step.abs() < 1e-15 * (1.0 + x.abs()) {
                break;
            }
        }
        let [phi, dphi, _] = self.interp(&self.density, x);
        [x, 1.0 / phi.sqrt(), -0.5 * dphi / (phi * phi)]
    }
}

/// Chart in canonical parameters together with the two coordinate maps.
#[derive(Debug, Clone)]
pub struct Reparametrized {
    pub surface: ParametricSurface,
    pub u_map: ArcMap,
    pub v_map: ArcMap,
}

/// Rescales each coordinate separately so the chart becomes canonical.
pub fn to_canonical_parameters(
    surface: &ParametricSurface,
    field: &InvariantField,
    variant: CanonicalVariant,
    tol: &Tolerances,
) -> Result<Reparametrized, CanonicalError> {
    let grid = field.grid;
    let root = field.gap().map(f64::sqrt);
    let phi_node = |i: usize, j: usize| match variant {
        CanonicalVariant::StronglyRegular => field.e.at(i, j) * root.at(i, j),
        CanonicalVariant::Gamma1Zero => field.e.at(i, j),
    };
    let psi_node = |i: usize, j: usize| field.g.at(i, j) * root.at(i, j);

    let mut defect = 0.0f64;
    let phi: Vec<f64> = (0..grid.nu)
        .map(|i| {
            let vals: Vec<f64> = (0..grid.nv).map(|j| phi_node(i, j)).collect();
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            defect = vals.iter().fold(defect, |d, x| d.max((x - mean).abs() / mean.abs()));
            mean
        })
        .collect();
    let psi: Vec<f64> = (0..grid.nv)
        .map(|j| {
            let vals: Vec<f64> = (0..grid.nu).map(|i| psi_node(i, j)).collect();
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            defect = vals.iter().fold(defect, |d, x| d.max((x - mean).abs() / mean.abs()));
            mean
        })
        .collect();
    if defect > tol.lemma_tol || phi.iter().chain(&psi).any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(CanonicalError::NotReparametrizable { defect });
    }
    let u_map = ArcMap::new(grid.u0, grid.hu, phi);
    let v_map = ArcMap::new(grid.v0, grid.hv, psi);
    let (s0, s1) = u_map.range();
    let (t0, t1) = v_map.range();
    let domain = Domain::new(s0, s1, t0, t1).map_err(|_| CanonicalError::GridTooSmall)?;
    let (um, vm) = (Arc::new(u_map.clone()), Arc::new(v_map.clone()));
    let surface = surface.reparametrized(domain, move |s| um.inverse_jet(s), move |t| vm.inverse_jet(t));
    Ok(Reparametrized { surface, u_map, v_map })
}
