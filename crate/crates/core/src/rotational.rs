//! Generating curves with constant curvatures, the rotational surfaces
//! they sweep, and the minimality condition for their meridians.

use std::sync::Arc;

use thiserror::Error;

use crate::geom::{Frame4, Vec4};
use crate::grid::Grid1;
use crate::stencil;
use crate::canonical::InvariantField;
use crate::frenet;
use crate::surface::{Domain, ParametricSurface, Partials, SurfaceError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RotationalError {
    #[error("curve is not unit speed: a²α² + b²β² = {0}")]
    NotUnitSpeed(f64),
    #[error("α = β gives a circle")]
    CircleDegenerate,
    #[error("rotation rates must be positive")]
    BadRates,
    #[error("irregular profile at u = {u}: {reason}")]
    IrregularProfile { u: f64, reason: &'static str },
    #[error("profile has the wrong form for this construction")]
    WrongForm,
    #[error("profile needs at least {need} nodes, got {got}")]
    TooShort { need: usize, got: usize },
    #[error("α²f² + β²g² = {value:e} at the initial point")]
    Degenerate { value: f64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// Value and first two derivatives of a meridian `(f, g)` at one `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileJet {
    pub f: [f64; 3],
    pub g: [f64; 3],
}

/// Value and first two derivatives of normal-plane offsets `(A, B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbJet {
    pub a: [f64; 3],
    pub b: [f64; 3],
}

/// `k`-th `v`-derivative of `(p cos αv, p sin αv, q cos βv, q sin βv)`.
fn circ(p: f64, q: f64, alpha: f64, beta: f64, v: f64, k: i32) -> Vec4 {
    let shift = k as f64 * std::f64::consts::FRAC_PI_2;
    let (sa, ca) = (alpha * v + shift).sin_cos();
    let (sb, cb) = (beta * v + shift).sin_cos();
    let (pa, qb) = (p * alpha.powi(k), q * beta.powi(k));
    Vec4::new(pa * ca, pa * sa, qb * cb, qb * sb)
}

/// Chart `(f cos αv, f sin αv, g cos βv, g sin βv)` with partials from the
/// profile jet.
pub fn revolve(
    alpha: f64,
    beta: f64,
    domain: Domain,
    jet: impl Fn(f64) -> ProfileJet + Send + Sync + 'static,
) -> ParametricSurface {
    ParametricSurface::with_analytic(domain, move |u, v| {
        let ProfileJet { f, g } = jet(u);
        let c = |p: f64, q: f64, k: i32| circ(p, q, alpha, beta, v, k);
        Partials {
            z: c(f[0], g[0], 0),
            z_u: c(f[1], g[1], 0),
            z_v: c(f[0], g[0], 1),
            z_uu: c(f[2], g[2], 0),
            z_uv: c(f[1], g[1], 1),
            z_vv: c(f[0], g[0], 2),
        }
    })
}

/// `c(v) = (a cos αv, a sin αv, b cos βv, b sin βv)` with `a²α² + b²β² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratingCurve {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Curvature ϰ.
    pub kappa: f64,
    /// Torsion τ.
    pub tau: f64,
    /// Third curvature σ.
    pub sigma: f64,
}

impl GeneratingCurve {
    pub fn new(a: f64, b: f64, alpha: f64, beta: f64) -> Result<Self, RotationalError> {
        if !(alpha > 0.0 && beta > 0.0) {
            return Err(RotationalError::BadRates);
        }
        if alpha == beta {
            return Err(RotationalError::CircleDegenerate);
        }
        let speed = a * a * alpha * alpha + b * b * beta * beta;
        if (speed - 1.0).abs() > 1e-12 {
            return Err(RotationalError::NotUnitSpeed(speed));
        }
        let kappa = (a * a * alpha.powi(4) + b * b * beta.powi(4)).sqrt();
        Ok(GeneratingCurve {
            a,
            b,
            alpha,
            beta,
            kappa,
            tau: a * b * alpha * beta * (alpha * alpha - beta * beta) / kappa,
            sigma: alpha * beta / kappa,
        })
    }

    pub fn position(&self, v: f64) -> Vec4 {
        circ(self.a, self.b, self.alpha, self.beta, v, 0)
    }

    /// `k`-th derivatives of the Frenet vectors `(t, n, b, b₁)`.
    pub fn frenet_derivative(&self, v: f64, k: i32) -> [Vec4; 4] {
        let (a, b, al, be, ka) = (self.a, self.b, self.alpha, self.beta, self.kappa);
        let c = |p: f64, q: f64, j: i32| circ(p, q, al, be, v, j);
        [
            c(a, b, k + 1),
            c(-a * al * al / ka, -b * be * be / ka, k),
            // (bβ sin αv, −bβ cos αv, −aα sin βv, aα cos βv)
            c(-b * be / al, a * al / be, k + 1),
            c(b * be * be / ka, -a * al * al / ka, k),
        ]
    }

    /// Frenet frame `{t, n, b, b₁}` stored as `{x, y, n₁, n₂}`.
    pub fn frenet(&self, v: f64) -> Frame4 {
        Frame4::from_vectors(self.frenet_derivative(v, 0))
    }
}

/// Which pair of functions a [`MeridianProfile`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileForm {
    /// Meridian coordinates `(f, g)`.
    Fg,
    /// Offsets `(A, B)` along `n` and `b₁` of a generating curve.
    Ab,
}

type JetFn = Arc<dyn Fn(f64) -> [[f64; 3]; 2] + Send + Sync>;

/// Two functions of `u` sampled on a lattice, with a dense evaluator for
/// values and derivatives.
#[derive(Clone)]
pub struct MeridianProfile {
    pub form: ProfileForm,
    pub grid: Grid1,
    pub first: Vec<f64>,
    pub second: Vec<f64>,
    jet: JetFn,
}

impl std::fmt::Debug for MeridianProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MeridianProfile")
            .field("form", &self.form)
            .field("grid", &self.grid)
            .finish()
    }
}

impl MeridianProfile {
    /// Profile interpolated from samples by 5-point Lagrange stencils.
    pub fn from_samples(form: ProfileForm, grid: Grid1, first: Vec<f64>, second: Vec<f64>) -> Result<Self, RotationalError> {
        if first.len() != grid.n || second.len() != grid.n {
            return Err(RotationalError::TooShort { need: grid.n, got: first.len().min(second.len()) });
        }
        if grid.n < 5 {
            return Err(RotationalError::TooShort { need: 5, got: grid.n });
        }
        let (p, q) = (Arc::new(first.clone()), Arc::new(second.clone()));
        let jet: JetFn = Arc::new(move |u| {
            let s = stencil::window(grid.nearest(u), grid.n, 5);
            let w = stencil::lagrange_weights(u, grid.u(s), grid.h, 5);
            let eval = |vals: &[f64]| -> [f64; 3] {
                std::array::from_fn(|d| (0..5).map(|k| w[d][k] * vals[s + k]).sum())
            };
            [eval(&p), eval(&q)]
        });
        Ok(MeridianProfile { form, grid, first, second, jet })
    }

    /// Profile with an exact evaluator; samples are taken on `grid`.
    pub fn from_fn(form: ProfileForm, grid: Grid1, jet: impl Fn(f64) -> [[f64; 3]; 2] + Send + Sync + 'static) -> Self {
        let jet: JetFn = Arc::new(jet);
        let (first, second) = (0..grid.n).map(|i| {
            let [p, q] = jet(grid.u(i));
            (p[0], q[0])
        }).unzip();
        MeridianProfile { form, grid, first, second, jet }
    }

    pub fn jet(&self, u: f64) -> [[f64; 3]; 2] {
        (self.jet)(u)
    }

    pub fn fg_jet(&self, u: f64) -> ProfileJet {
        let [f, g] = self.jet(u);
        ProfileJet { f, g }
    }

    pub fn ab_jet(&self, u: f64) -> AbJet {
        let [a, b] = self.jet(u);
        AbJet { a, b }
    }

    pub fn u_range(&self) -> (f64, f64) {
        (self.grid.u0, self.grid.u_max())
    }
}

/// Meridian `(f, g)` of the surface swept by `(A, B)` along `c`.
pub fn fg_from_ab(curve: &GeneratingCurve, ab: &AbJet) -> ProfileJet {
    let (a, b, al2, be2, ka) = (curve.a, curve.b, curve.alpha.powi(2), curve.beta.powi(2), curve.kappa);
    let f = std::array::from_fn(|d| {
        let base = if d == 0 { a } else { 0.0 };
        base + (-a * al2 * ab.a[d] + b * be2 * ab.b[d]) / ka
    });
    let g = std::array::from_fn(|d| {
        let base = if d == 0 { b } else { 0.0 };
        base + (-b * be2 * ab.a[d] - a * al2 * ab.b[d]) / ka
    });
    ProfileJet { f, g }
}

fn check_fg(jet: &ProfileJet, alpha: f64, beta: f64, u: f64) -> Result<(), RotationalError> {
    let ProfileJet { f, g } = jet;
    if !(f[1] * f[1] + g[1] * g[1] > 1e-12) {
        return Err(RotationalError::IrregularProfile { u, reason: "f'² + g'² vanishes" });
    }
    if !(alpha * alpha * f[0] * f[0] + beta * beta * g[0] * g[0] > 1e-12) {
        return Err(RotationalError::IrregularProfile { u, reason: "α²f² + β²g² vanishes" });
    }
    Ok(())
}

fn full_period(u0: f64, u1: f64) -> Result<Domain, RotationalError> {
    Domain::new(u0, u1, 0.0, std::f64::consts::TAU)
        .map_err(|_| RotationalError::TooShort { need: 2, got: 1 })
}

/// Chart `(f cos αv, f sin αv, g cos βv, g sin βv)` over the profile's
/// `u` range and one period `v ∈ [0, 2π]`.
pub fn surface_from_profile(profile: &MeridianProfile, alpha: f64, beta: f64) -> Result<ParametricSurface, RotationalError> {
    if profile.form != ProfileForm::Fg {
        return Err(RotationalError::WrongForm);
    }
    for i in 0..profile.grid.n {
        let u = profile.grid.u(i);
        check_fg(&profile.fg_jet(u), alpha, beta, u)?;
    }
    let (u0, u1) = profile.u_range();
    let p = profile.clone();
    Ok(revolve(alpha, beta, full_period(u0, u1)?, move |u| p.fg_jet(u)))
}

/// Chart `c(v) + A(u) n(v) + B(u) b₁(v)`, assembled from the Frenet frame.
pub fn surface_from_ab(profile: &MeridianProfile, curve: &GeneratingCurve) -> Result<ParametricSurface, RotationalError> {
    if profile.form != ProfileForm::Ab {
        return Err(RotationalError::WrongForm);
    }
    let (ka, ta, si) = (curve.kappa, curve.tau, curve.sigma);
    for i in 0..profile.grid.n {
        let u = profile.grid.u(i);
        let AbJet { a, b } = profile.ab_jet(u);
        if !(a[1] * a[1] + b[1] * b[1] > 1e-12) {
            return Err(RotationalError::IrregularProfile { u, reason: "A'² + B'² vanishes" });
        }
        if !((ka * a[0] - 1.0).powi(2) + (ta * a[0] - si * b[0]).powi(2) > 1e-12) {
            return Err(RotationalError::IrregularProfile { u, reason: "(ϰA − 1)² + (τA − σB)² vanishes" });
        }
    }
    let (u0, u1) = profile.u_range();
    let p = profile.clone();
    let c = *curve;
    Ok(ParametricSurface::with_analytic(full_period(u0, u1)?, move |u, v| {
        let AbJet { a, b } = p.ab_jet(u);
        let d0 = c.frenet_derivative(v, 0);
        let d1 = c.frenet_derivative(v, 1);
        let d2 = c.frenet_derivative(v, 2);
        const N: usize = 1;
        const B1: usize = 3;
        Partials {
            z: c.position(v) + d0[N] * a[0] + d0[B1] * b[0],
            z_u: d0[N] * a[1] + d0[B1] * b[1],
            z_v: d0[0] + d1[N] * a[0] + d1[B1] * b[0],
            z_uu: d0[N] * a[2] + d0[B1] * b[2],
            z_uv: d1[N] * a[1] + d1[B1] * b[1],
            z_vv: d1[0] + d2[N] * a[0] + d2[B1] * b[0],
        }
    }))
}

/// Difference of the two sides of the meridian minimality condition,
/// `(g′f″ − f′g″)/(f′² + g′²) − (α²fg′ − β²gf′)/(α²f² + β²g²)`.
pub fn minimality_residual(jet: &ProfileJet, alpha: f64, beta: f64) -> f64 {
    let ProfileJet { f, g } = jet;
    let (a2, b2) = (alpha * alpha, beta * beta);
    (g[1] * f[2] - f[1] * g[2]) / (f[1] * f[1] + g[1] * g[1])
        - (a2 * f[0] * g[1] - b2 * g[0] * f[1]) / (a2 * f[0] * f[0] + b2 * g[0] * g[0])
}

/// The same condition written in the offsets `(A, B)` and the curvatures
/// of the generating curve.
pub fn minimality_residual_ab(jet: &AbJet, curve: &GeneratingCurve) -> f64 {
    let AbJet { a, b } = jet;
    let (ka, ta, si) = (curve.kappa, curve.tau, curve.sigma);
    let lhs = (a[2] * b[1] - a[1] * b[2]) / (a[1] * a[1] + b[1] * b[1]);
    let p = ka * a[0] - 1.0;
    let q = ta * a[0] - si * b[0];
    let rhs = (p * ka * b[1] + q * (si * a[1] + ta * b[1])) / (p * p + q * q);
    lhs - rhs
}

/// Closed-form `(k, κ)` of a rotational surface from its meridian jet.
pub fn closed_form_k_kappa(jet: &ProfileJet, alpha: f64, beta: f64) -> (f64, f64) {
    let ProfileJet { f, g } = jet;
    let (a2, b2) = (alpha * alpha, beta * beta);
    let s = a2 * f[0] * f[0] + b2 * g[0] * g[0];
    let e = f[1] * f[1] + g[1] * g[1];
    let m = g[0] * f[1] - f[0] * g[1];
    let curv = g[1] * f[2] - f[1] * g[2];
    let tw = b2 * g[0] * f[1] - a2 * f[0] * g[1];
    let k = -4.0 * a2 * b2 * m * m * curv * tw / (s.powi(3) * e.powi(3));
    let kappa = alpha * beta * m / (s * s * e * e) * (s * curv - e * tw);
    (k, kappa)
}

/// Meridian solving the minimality condition, parametrized by arc length.
#[derive(Debug, Clone)]
pub struct MinimalProfile {
    pub profile: MeridianProfile,
    pub alpha: f64,
    pub beta: f64,
    /// Tangent angle `θ` with `f′ = cos θ`, `g′ = sin θ`.
    pub theta: Vec<f64>,
    /// Set when `α²f² + β²g²` collapsed before the requested length.
    pub truncated_at: Option<f64>,
}

fn theta_rhs(alpha: f64, beta: f64, s: [f64; 3]) -> Option<[f64; 3]> {
    let [f, g, th] = s;
    let den = alpha * alpha * f * f + beta * beta * g * g;
    if !(den > 1e-10) {
        return None;
    }
    let (st, ct) = th.sin_cos();
    Some([ct, st, (beta * beta * g * ct - alpha * alpha * f * st) / den])
}

fn rk4(alpha: f64, beta: f64, s: [f64; 3], h: f64) -> Option<[f64; 3]> {
    let add = |s: [f64; 3], k: [f64; 3], c: f64| std::array::from_fn(|i| s[i] + c * k[i]);
    let k1 = theta_rhs(alpha, beta, s)?;
    let k2 = theta_rhs(alpha, beta, add(s, k1, h / 2.0))?;
    let k3 = theta_rhs(alpha, beta, add(s, k2, h / 2.0))?;
    let k4 = theta_rhs(alpha, beta, add(s, k3, h))?;
    Some(std::array::from_fn(|i| s[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])))
}

/// Integrates `f′ = cos θ`, `g′ = sin θ`,
/// `θ′ = (β²g cos θ − α²f sin θ)/(α²f² + β²g²)` with classical RK4 from
/// `u = 0`.
pub fn solve_minimal_profile(
    alpha: f64,
    beta: f64,
    f0: f64,
    g0: f64,
    theta0: f64,
    length: f64,
    h_u: f64,
) -> Result<MinimalProfile, RotationalError> {
    let den = alpha * alpha * f0 * f0 + beta * beta * g0 * g0;
    if !(den > 1e-10) {
        return Err(RotationalError::Degenerate { value: den });
    }
    let steps = (length / h_u - 1e-9).ceil().max(1.0) as usize;
    let mut states = vec![[f0, g0, theta0]];
    let mut truncated_at = None;
    for i in 0..steps {
        match rk4(alpha, beta, states[i], h_u) {
            Some(s) => states.push(s),
            None => {
                truncated_at = Some(i as f64 * h_u);
                break;
            }
        }
    }
    if states.len() < 5 {
        return Err(RotationalError::TooShort { need: 5, got: states.len() });
    }
    let grid = Grid1::new(0.0, h_u, states.len()).map_err(|_| RotationalError::TooShort { need: 5, got: 0 })?;
    let theta = states.iter().map(|s| s[2]).collect();
    let nodes = Arc::new(states);
    let profile = MeridianProfile::from_fn(ProfileForm::Fg, grid, move |u| {
        let i = grid.nearest(u);
        let s = rk4(alpha, beta, nodes[i], u - grid.u(i)).unwrap_or([f64::NAN; 3]);
        let [f1, g1, dth] = theta_rhs(alpha, beta, s).unwrap_or([f64::NAN; 3]);
        [[s[0], f1, -g1 * dth], [s[1], g1, f1 * dth]]
    });
    Ok(MinimalProfile { profile, alpha, beta, theta, truncated_at })
}

/// Numerical and closed-form curvatures of one v-line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VLineCheck {
    pub u: f64,
    /// Mean of `(ϰ, τ, |σ|)` over the sampled `v`.
    pub numeric: [f64; 3],
    /// `ϰ_v`, `τ_v`, `σ_v` from `ν, μ, γ₂, β₂`.
    pub closed_form: [f64; 3],
    /// Largest spread of each curvature along the line.
    pub variation: f64,
    /// Largest `| numeric − |closed form| |` over samples.
    pub mismatch: f64,
    /// Distance of `x`, `n₁` from `span{n_v, b₁_v}`.
    pub span_defect: f64,
}

/// Curvature and planarity of one u-line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ULineCheck {
    pub v: f64,
    /// Largest `|ϰ_u − |ν||` over sampled nodes.
    pub curvature_mismatch: f64,
    pub max_torsion: f64,
    /// Largest component of `z_u`, `z_uu` outside `span{x, n₁}`.
    pub plane_defect: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineCurvatureReport {
    pub v_lines: Vec<VLineCheck>,
    pub u_lines: Vec<ULineCheck>,
}

impl LineCurvatureReport {
    pub fn max_v_variation(&self) -> f64 {
        self.v_lines.iter().map(|c| c.variation).fold(0.0, f64::max)
    }

    pub fn max_v_mismatch(&self) -> f64 {
        self.v_lines.iter().map(|c| c.mismatch).fold(0.0, f64::max)
    }

    pub fn max_span_defect(&self) -> f64 {
        self.v_lines.iter().map(|c| c.span_defect).fold(0.0, f64::max)
    }

    pub fn max_u_torsion(&self) -> f64 {
        self.u_lines.iter().map(|c| c.max_torsion).fold(0.0, f64::max)
    }

    pub fn max_u_curvature_mismatch(&self) -> f64 {
        self.u_lines.iter().map(|c| c.curvature_mismatch).fold(0.0, f64::max)
    }

    pub fn max_plane_defect(&self) -> f64 {
        self.u_lines.iter().map(|c| c.plane_defect).fold(0.0, f64::max)
    }

    /// Every check within the stated tolerances.
    pub fn passes(&self) -> bool {
        self.max_v_variation() < 1e-4
            && self.max_v_mismatch() < 1e-4
            && self.max_span_defect() < 1e-4
            && self.max_u_torsion() < 1e-5
            && self.max_u_curvature_mismatch() < 1e-4
    }
}

/// Closed-form `(ϰ_v, τ_v, σ_v)` of a v-line.
pub fn v_line_curvatures(nu: f64, mu: f64, gamma2: f64, beta2: f64) -> [f64; 3] {
    let r = nu.hypot(gamma2);
    [r, (mu * gamma2 - nu * beta2).abs() / r, -(mu * nu + gamma2 * beta2) / r]
}

fn outside(v: &Vec4, a: &Vec4, b: &Vec4) -> f64 {
    (*v - *a * v.dot(a) - *b * v.dot(b)).norm()
}

/// Checks the constant-curvature v-lines and planar u-lines of a surface in
/// the `γ₁ = 0` class at the given node rows `u_nodes` and columns `v_nodes`.
pub fn verify_line_curvatures(
    surface: &ParametricSurface,
    field: &InvariantField,
    u_nodes: &[usize],
    v_nodes: &[usize],
) -> Result<LineCurvatureReport, RotationalError> {
    let g1 = field.max_abs(&field.gamma1, 0);
    if !(g1 < 1e-5) {
        return Err(RotationalError::PreconditionFailed(format!("max |γ₁| = {g1:e}")));
    }
    let grid = field.grid;
    let fd_fail = |e: SurfaceError| RotationalError::PreconditionFailed(e.to_string());
    let h = 1e-3;

    let mut v_lines = Vec::new();
    for &i in u_nodes {
        let closed = v_line_curvatures(field.nu.at(i, 0), field.mu.at(i, 0), field.gamma2.at(i, 0), field.beta2.at(i, 0));
        let expect = [closed[0], closed[1], closed[2].abs()];
        let (mut lo, mut hi, mut sum) = ([f64::INFINITY; 3], [f64::NEG_INFINITY; 3], [0.0; 3]);
        let (mut mismatch, mut span_defect) = (0.0f64, 0.0f64);
        for j in 0..grid.nv {
            let (u, v) = grid.node(i, j);
            let d = frenet::line_derivatives(surface, u, v, 1, h).map_err(fd_fail)?;
            let k = frenet::curvatures(&d);
            for m in 0..3 {
                lo[m] = lo[m].min(k[m]);
                hi[m] = hi[m].max(k[m]);
                sum[m] += k[m];
                mismatch = mismatch.max((k[m] - expect[m]).abs());
            }
            let (e, _) = frenet::gram_schmidt_norms(&d);
            let fr = field.frame(i, j);
            span_defect = span_defect.max(outside(&fr.x, &e[1], &e[3])).max(outside(&fr.n1, &e[1], &e[3]));
        }
        let variation = (0..3).map(|m| hi[m] - lo[m]).fold(0.0, f64::max);
        v_lines.push(VLineCheck {
            u: grid.u(i),
            numeric: sum.map(|x| x / grid.nv as f64),
            closed_form: closed,
            variation,
            mismatch,
            span_defect,
        });
    }

    let mut u_lines = Vec::new();
    for &j in v_nodes {
        let (mut cm, mut tor, mut plane) = (0.0f64, 0.0f64, 0.0f64);
        // keep the difference stencil inside the chart
        for i in 1..grid.nu - 1 {
            let (u, v) = grid.node(i, j);
            let d = frenet::line_derivatives(surface, u, v, 0, h).map_err(fd_fail)?;
            let k = frenet::curvatures(&d);
            cm = cm.max((k[0] - field.nu.at(i, j).abs()).abs());
            tor = tor.max(k[1]);
            let fr = field.frame(i, j);
            let scale = d[1].norm().max(1.0);
            plane = plane.max(outside(&d[0], &fr.x, &fr.n1)).max(outside(&d[1], &fr.x, &fr.n1) / scale);
        }
        u_lines.push(ULineCheck { v: grid.v(j), curvature_mismatch: cm, max_torsion: tor, plane_defect: plane });
    }
    Ok(LineCurvatureReport { v_lines, u_lines })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_examples() {
        assert_eq!(GeneratingCurve::new(0.5, 0.5, 1.0, 1.0), Err(RotationalError::CircleDegenerate));
        let c = GeneratingCurve::new(0.6, 0.4, 1.0, 2.0).unwrap();
        assert!((c.kappa - 2.92f64.sqrt()).abs() < 1e-14);
        assert!(matches!(GeneratingCurve::new(0.6, 0.5, 1.0, 2.0), Err(RotationalError::NotUnitSpeed(_))));
        for k in 0..100 {
            let fr = c.frenet(0.063 * k as f64);
            assert!(fr.is_valid(1e-12));
        }
    }

    #[test]
    fn frenet_equations_hold() {
        let c = GeneratingCurve::new(0.6, 0.4, 1.0, 2.0).unwrap();
        let v = 0.8;
        let [t, n, b, b1] = c.frenet_derivative(v, 0);
        let [dt, dn, db, db1] = c.frenet_derivative(v, 1);
        assert!((dt - n * c.kappa).max_abs() < 1e-12);
        assert!((dn - (t * -c.kappa + b * c.tau)).max_abs() < 1e-12);
        assert!((db - (n * -c.tau + b1 * c.sigma)).max_abs() < 1e-12);
        assert!((db1 - b * -c.sigma).max_abs() < 1e-12);
    }

    #[test]
    fn reduced_equation_at_start() {
        let p = solve_minimal_profile(1.0, 2.0, 0.7, 0.0, std::f64::consts::FRAC_PI_2, 0.1, 0.01).unwrap();
        let j = p.profile.fg_jet(0.0);
        // θ′ = g″/f′ cannot be read when f′ = 0; use f″ = −sin θ θ′
        assert!((j.f[2] - 1.0 / 0.7).abs() < 1e-12);
    }
}
