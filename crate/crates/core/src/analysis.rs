//! Pointwise invariants of a chart: fundamental forms, `L, M, N`, `k`, `κ`,
//! Gauss curvature, mean curvature vector, curvature ellipse and the point
//! class.

use std::fmt;

use nalgebra::{Matrix4, Vector4};
use rayon::prelude::*;
use thiserror::Error;

use crate::geom::{gram_schmidt_with_tol, orientation_det, Frame4, GeomError, Vec4};
use crate::grid::Grid2;
use crate::surface::{ParametricSurface, Partials, SurfaceError};
use crate::tol::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("degenerate chart at ({u}, {v}): W = {w:e}")]
    Degenerate { u: f64, v: f64, w: f64 },
    #[error(transparent)]
    FdFailure(#[from] SurfaceError),
    #[error("normal frame construction failed: {0}")]
    Frame(#[from] GeomError),
    #[error("decomposition residual {residual:e} exceeds tolerance at ({u}, {v})")]
    Decomposition { u: f64, v: f64, residual: f64 },
}

/// Seed pairs tried in order when completing the tangent plane to a frame.
const SEED_PAIRS: [(usize, usize); 6] = [(2, 3), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3)];
/// A seed is usable when its component normal to the span so far is at
/// least this long.
const SEED_PIVOT: f64 = 1e-2;

/// First fundamental form, Christoffel symbols, a normal frame and the
/// normal coefficients `cᵏᵢⱼ` at one point.
///
/// Index conventions: `christoffel[k][ij]` and `c[k][ij]` with `ij` running
/// over `11, 12, 22`.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalData {
    pub u: f64,
    pub v: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub w: f64,
    pub christoffel: [[f64; 3]; 2],
    pub normal: [Vec4; 2],
    pub c: [[f64; 3]; 2],
    pub partials: Partials,
    pub decomposition_residual: f64,
}

impl FundamentalData {
    /// Orthonormal tangent pair `x = z_u/√E`, `y ⊥ x` in the tangent plane.
    pub fn tangent_frame(&self) -> (Vec4, Vec4) {
        let p = &self.partials;
        let x = p.z_u / self.e.sqrt();
        let y = (p.z_v - p.z_u * (self.f / self.e)) * (self.e.sqrt() / self.w);
        (x, y)
    }

    /// Frame `{x, y, e₁, e₂}` used for the analysis.
    pub fn frame(&self) -> Frame4 {
        let (x, y) = self.tangent_frame();
        Frame4::new(x, y, self.normal[0], self.normal[1])
    }

    /// Recomputes `cᵏᵢⱼ` after rotating the normal frame by `theta`.
    pub fn with_normal_rotation(&self, theta: f64) -> FundamentalData {
        let (s, c) = theta.sin_cos();
        let [e1, e2] = self.normal;
        let normal = [e1 * c + e2 * s, e2 * c - e1 * s];
        let p = &self.partials;
        let second = [p.z_uu, p.z_uv, p.z_vv];
        let coeff = std::array::from_fn(|k| std::array::from_fn(|ij| second[ij].dot(&normal[k])));
        FundamentalData { normal, c: coeff, ..self.clone() }
    }

    /// Second fundamental form `σ(∂ᵢ, ∂ⱼ)` as normal vectors, `ij ∈ {11,12,22}`.
    pub fn sigma_coordinate(&self) -> [Vec4; 3] {
        std::array::from_fn(|ij| self.normal[0] * self.c[0][ij] + self.normal[1] * self.c[1][ij])
    }
}

/// Tangent/normal decomposition of the chart at `(u, v)`.
pub fn fundamental_forms(surface: &ParametricSurface, u: f64, v: f64) -> Result<FundamentalData, AnalysisError> {
    fundamental_forms_with(surface, u, v, &Tolerances::default())
}

pub fn fundamental_forms_with(
    surface: &ParametricSurface,
    u: f64,
    v: f64,
    tol: &Tolerances,
) -> Result<FundamentalData, AnalysisError> {
    let p = surface.partials(u, v)?;
    let e = p.z_u.norm_sq();
    let f = p.z_u.dot(&p.z_v);
    let g = p.z_v.norm_sq();
    let det = e * g - f * f;
    let w = det.max(0.0).sqrt();
    if !(w > tol.tol_reg) {
        return Err(AnalysisError::Degenerate { u, v, w });
    }

    let normal = normal_frame(&p, tol)?;
    let cols = [p.z_u, p.z_v, normal[0], normal[1]];
    let m = Matrix4::from_fn(|r, c| cols[c][r]);
    let lu = m.lu();
    let second = [p.z_uu, p.z_uv, p.z_vv];
    let mut christoffel = [[0.0; 3]; 2];
    let mut c = [[0.0; 3]; 2];
    let mut residual = 0.0f64;
    for (ij, z) in second.iter().enumerate() {
        let rhs = Vector4::from_column_slice(&z.0);
        let sol = lu.solve(&rhs).ok_or(AnalysisError::Degenerate { u, v, w })?;
        christoffel[0][ij] = sol[0];
        christoffel[1][ij] = sol[1];
        c[0][ij] = sol[2];
        c[1][ij] = sol[3];
        let back = m * sol - rhs;
        let scale = 1.0 + z.norm();
        residual = residual.max(back.norm() / scale);
    }
    if residual > tol.tol_decomp {
        return Err(AnalysisError::Decomposition { u, v, residual });
    }
    Ok(FundamentalData {
        u,
        v,
        e,
        f,
        g,
        w,
        christoffel,
        normal,
        c,
        partials: p,
        decomposition_residual: residual,
    })
}

fn normal_frame(p: &Partials, tol: &Tolerances) -> Result<[Vec4; 2], AnalysisError> {
    let tangent = gram_schmidt_with_tol(&[p.z_u, p.z_v], tol.tol_rank)?;
    let pivots = |a: usize, b: usize| {
        let s1 = Vec4::unit(a).reject(&tangent[0]).reject(&tangent[1]);
        let n1 = s1.norm();
        let s2 = Vec4::unit(b).reject(&tangent[0]).reject(&tangent[1]);
        let s2 = match s1.normalized() {
            Some(e) => s2.reject(&e),
            None => s2,
        };
        n1.min(s2.norm())
    };
    let (a, b) = SEED_PAIRS
        .iter()
        .copied()
        .find(|&(a, b)| pivots(a, b) >= SEED_PIVOT)
        .unwrap_or_else(|| {
            SEED_PAIRS
                .iter()
                .copied()
                .max_by(|x, y| pivots(x.0, x.1).total_cmp(&pivots(y.0, y.1)))
                .unwrap()
        });
    let basis = gram_schmidt_with_tol(&[tangent[0], tangent[1], Vec4::unit(a), Vec4::unit(b)], tol.tol_rank)?;
    let mut n2 = basis[3];
    let frame = Frame4::new(basis[0], basis[1], basis[2], n2);
    if orientation_det(&frame) < 0.0 {
        n2 = -n2;
    }
    Ok([basis[2], n2])
}

/// `(L, M, N)` from the determinants of the `cᵏᵢⱼ` arrays.
pub fn lmn_coefficients(fd: &FundamentalData) -> (f64, f64, f64) {
    let [c1, c2] = fd.c;
    let d1 = c1[0] * c2[1] - c1[1] * c2[0];
    let d2 = c1[0] * c2[2] - c1[2] * c2[0];
    let d3 = c1[1] * c2[2] - c1[2] * c2[1];
    (2.0 * d1 / fd.w, d2 / fd.w, 2.0 * d3 / fd.w)
}

/// `(k, κ)` from `L, M, N` and the first fundamental form.
pub fn k_kappa(fd: &FundamentalData, (l, m, n): (f64, f64, f64)) -> (f64, f64) {
    let det = fd.e * fd.g - fd.f * fd.f;
    let k = (l * n - m * m) / det;
    let kappa = (fd.e * n + fd.g * l - 2.0 * fd.f * m) / (2.0 * det);
    (k, kappa)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantSet {
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub k: f64,
    pub kappa: f64,
    /// Gauss curvature.
    pub gauss: f64,
    /// Mean curvature vector.
    pub h: Vec4,
    pub ellipse_center: Vec4,
    /// Semi-axis lengths, descending.
    pub ellipse_semiaxes: (f64, f64),
    /// Orthonormal tangent pair the second fundamental form was evaluated in.
    pub x: Vec4,
    pub y: Vec4,
    pub sigma_xx: Vec4,
    pub sigma_xy: Vec4,
    pub sigma_yy: Vec4,
}

impl InvariantSet {
    /// `κ² − k`, zero exactly on minimal points.
    pub fn minimality_defect(&self) -> f64 {
        self.kappa * self.kappa - self.k
    }

    /// `K² − κ²`, zero on super-conformal minimal points.
    pub fn conformality_defect(&self) -> f64 {
        self.gauss * self.gauss - self.kappa * self.kappa
    }
}

pub fn invariants(surface: &ParametricSurface, u: f64, v: f64) -> Result<InvariantSet, AnalysisError> {
    let fd = fundamental_forms(surface, u, v)?;
    Ok(invariants_from(&fd))
}

pub fn invariants_from(fd: &FundamentalData) -> InvariantSet {
    let lmn = lmn_coefficients(fd);
    let (k, kappa) = k_kappa(fd, lmn);
    let (x, y) = fd.tangent_frame();
    // coordinates of x = a·z_u and y = b·z_u + c·z_v
    let a = 1.0 / fd.e.sqrt();
    let b = -fd.f / (fd.e.sqrt() * fd.w);
    let c = fd.e.sqrt() / fd.w;
    let [s11, s12, s22] = fd.sigma_coordinate();
    let sigma_xx = s11 * (a * a);
    let sigma_xy = s11 * (a * b) + s12 * (a * c);
    let sigma_yy = s11 * (b * b) + s12 * (2.0 * b * c) + s22 * (c * c);
    let gauss = sigma_xx.dot(&sigma_yy) - sigma_xy.norm_sq();
    let h = (sigma_xx + sigma_yy) * 0.5;
    let axes = conjugate_axes(&((sigma_xx - sigma_yy) * 0.5), &sigma_xy);
    InvariantSet {
        l: lmn.0,
        m: lmn.1,
        n: lmn.2,
        k,
        kappa,
        gauss,
        h,
        ellipse_center: h,
        ellipse_semiaxes: axes,
        x,
        y,
        sigma_xx,
        sigma_xy,
        sigma_yy,
    }
}

/// Semi-axes of the ellipse `{p cos t + q sin t}` from a conjugate pair.
fn conjugate_axes(p: &Vec4, q: &Vec4) -> (f64, f64) {
    let (pp, pq, qq) = (p.norm_sq(), p.dot(q), q.norm_sq());
    let mean = 0.5 * (pp + qq);
    let disc = (0.25 * (pp - qq) * (pp - qq) + pq * pq).sqrt();
    ((mean + disc).sqrt(), (mean - disc).max(0.0).sqrt())
}

/// Semi-axis lengths of the curvature ellipse, descending.
pub fn ellipse_axes(inv: &InvariantSet) -> (f64, f64) {
    conjugate_axes(&((inv.sigma_xx - inv.sigma_yy) * 0.5), &inv.sigma_xy)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointClass {
    Flat,
    MinimalSuperConformal,
    MinimalGeneralType,
    NonMinimal,
}

impl PointClass {
    pub const ALL: [PointClass; 4] = [
        PointClass::Flat,
        PointClass::MinimalSuperConformal,
        PointClass::MinimalGeneralType,
        PointClass::NonMinimal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PointClass::Flat => "Flat",
            PointClass::MinimalSuperConformal => "MinimalSuperConformal",
            PointClass::MinimalGeneralType => "MinimalGeneralType",
            PointClass::NonMinimal => "NonMinimal",
        }
    }

    pub fn is_minimal(&self) -> bool {
        matches!(self, PointClass::MinimalSuperConformal | PointClass::MinimalGeneralType)
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify_point(inv: &InvariantSet) -> PointClass {
    classify_point_with(inv, &Tolerances::default())
}

/// Pointwise class; the minimality and conformality defects are divided
/// by `(|K| + 1)²` so the thresholds do not depend on the chart's scale.
pub fn classify_point_with(inv: &InvariantSet, tol: &Tolerances) -> PointClass {
    if inv.l.abs().max(inv.m.abs()).max(inv.n.abs()) < tol.tol_flat {
        return PointClass::Flat;
    }
    let scale = (inv.gauss.abs() + 1.0).powi(2);
    let minimal = inv.minimality_defect().abs() / scale < tol.tol_min;
    let conformal = inv.conformality_defect().abs() / scale < tol.tol_sc;
    match (minimal, conformal) {
        (true, true) => PointClass::MinimalSuperConformal,
        (true, false) => PointClass::MinimalGeneralType,
        _ => PointClass::NonMinimal,
    }
}

/// Class counts over a grid.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassHistogram {
    pub flat: usize,
    pub super_conformal: usize,
    pub general_type: usize,
    pub non_minimal: usize,
}

impl ClassHistogram {
    pub fn add(&mut self, c: PointClass) {
        match c {
            PointClass::Flat => self.flat += 1,
            PointClass::MinimalSuperConformal => self.super_conformal += 1,
            PointClass::MinimalGeneralType => self.general_type += 1,
            PointClass::NonMinimal => self.non_minimal += 1,
        }
    }

    pub fn count(&self, c: PointClass) -> usize {
        match c {
            PointClass::Flat => self.flat,
            PointClass::MinimalSuperConformal => self.super_conformal,
            PointClass::MinimalGeneralType => self.general_type,
            PointClass::NonMinimal => self.non_minimal,
        }
    }

    pub fn total(&self) -> usize {
        self.flat + self.super_conformal + self.general_type + self.non_minimal
    }

    /// The class every counted point belongs to, if there is one.
    pub fn uniform(&self) -> Option<PointClass> {
        PointClass::ALL.into_iter().find(|&c| self.count(c) == self.total() && self.total() > 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointRecord {
    pub u: f64,
    pub v: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub inv: InvariantSet,
    pub class: PointClass,
    pub decomposition_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridAnalysis {
    pub grid: Grid2,
    /// Row-major, matching [`Grid2::index`].
    pub records: Vec<PointRecord>,
    pub histogram: ClassHistogram,
}

impl GridAnalysis {
    pub fn at(&self, i: usize, j: usize) -> &PointRecord {
        &self.records[self.grid.index(i, j)]
    }

    pub fn max_by(&self, f: impl Fn(&PointRecord) -> f64) -> f64 {
        self.records.iter().map(f).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_by(&self, f: impl Fn(&PointRecord) -> f64) -> f64 {
        self.records.iter().map(f).fold(f64::INFINITY, f64::min)
    }
}

/// Invariants and classes at every node (nodes evaluated in parallel).
pub fn analyze_grid(surface: &ParametricSurface, grid: &Grid2, tol: &Tolerances) -> Result<GridAnalysis, AnalysisError> {
    let records = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let (u, v) = grid.node(idx / grid.nv, idx % grid.nv);
            let fd = fundamental_forms_with(surface, u, v, tol)?;
            let inv = invariants_from(&fd);
            Ok(PointRecord {
                u,
                v,
                e: fd.e,
                f: fd.f,
                g: fd.g,
                class: classify_point_with(&inv, tol),
                inv,
                decomposition_residual: fd.decomposition_residual,
            })
        })
        .collect::<Result<Vec<_>, AnalysisError>>()?;
    let mut histogram = ClassHistogram::default();
    for r in &records {
        histogram.add(r.class);
    }
    Ok(GridAnalysis { grid: *grid, records, histogram })
}
