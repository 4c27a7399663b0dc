//! Parametric charts `z(u, v)` into R⁴.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::geom::Vec4;
use crate::grid::Grid2;
use crate::stencil;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("finite differences produced non-finite values at ({u}, {v})")]
    FdFailure { u: f64, v: f64 },
    #[error("sample count {got} does not match grid size {expected}")]
    SampleMismatch { expected: usize, got: usize },
    #[error("sampled charts need at least 5 nodes per direction")]
    TooFewSamples,
    #[error("empty or inverted domain")]
    BadDomain,
}

/// Closed parameter rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl Domain {
    pub fn new(u_min: f64, u_max: f64, v_min: f64, v_max: f64) -> Result<Self, SurfaceError> {
        if !(u_min < u_max && v_min < v_max) {
            return Err(SurfaceError::BadDomain);
        }
        Ok(Domain { u_min, u_max, v_min, v_max })
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        let eps = 1e-12 * self.diameter();
        u >= self.u_min - eps && u <= self.u_max + eps && v >= self.v_min - eps && v <= self.v_max + eps
    }

    pub fn diameter(&self) -> f64 {
        (self.u_max - self.u_min).hypot(self.v_max - self.v_min)
    }

    pub fn extent(&self) -> f64 {
        (self.u_max - self.u_min).max(self.v_max - self.v_min)
    }

    pub fn center(&self) -> (f64, f64) {
        (0.5 * (self.u_min + self.u_max), 0.5 * (self.v_min + self.v_max))
    }

    /// Grid with `nu × nv` nodes covering the domain.
    pub fn grid(&self, nu: usize, nv: usize) -> Grid2 {
        Grid2::spanning(self.u_min, self.u_max, nu, self.v_min, self.v_max, nv)
            .expect("domain grids need at least 2 nodes")
    }
}

/// Position and first/second partial derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials {
    pub z: Vec4,
    pub z_u: Vec4,
    pub z_v: Vec4,
    pub z_uu: Vec4,
    pub z_uv: Vec4,
    pub z_vv: Vec4,
}

impl Partials {
    pub fn is_finite(&self) -> bool {
        [self.z, self.z_u, self.z_v, self.z_uu, self.z_uv, self.z_vv]
            .iter()
            .all(Vec4::is_finite)
    }
}

pub type PositionFn = Arc<dyn Fn(f64, f64) -> Vec4 + Send + Sync>;
pub type PartialsFn = Arc<dyn Fn(f64, f64) -> Partials + Send + Sync>;

/// A chart with optional analytic partials; without them, partials come
/// from central differences with step `fd_step`.
#[derive(Clone)]
pub struct ParametricSurface {
    pub domain: Domain,
    position: PositionFn,
    partials: Option<PartialsFn>,
    pub fd_step: f64,
}

impl fmt::Debug for ParametricSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricSurface")
            .field("domain", &self.domain)
            .field("analytic", &self.partials.is_some())
            .field("fd_step", &self.fd_step)
            .finish()
    }
}

impl ParametricSurface {
    pub fn new(domain: Domain, position: impl Fn(f64, f64) -> Vec4 + Send + Sync + 'static) -> Self {
        ParametricSurface {
            domain,
            position: Arc::new(position),
            partials: None,
            fd_step: 1e-4 * domain.extent(),
        }
    }

    /// Chart whose position and partials all come from one callback.
    pub fn with_analytic(domain: Domain, partials: impl Fn(f64, f64) -> Partials + Send + Sync + 'static) -> Self {
        let partials: PartialsFn = Arc::new(partials);
        let p = partials.clone();
        ParametricSurface {
            domain,
            position: Arc::new(move |u, v| p(u, v).z),
            partials: Some(partials),
            fd_step: 1e-4 * domain.extent(),
        }
    }

    pub fn with_partials(mut self, partials: impl Fn(f64, f64) -> Partials + Send + Sync + 'static) -> Self {
        self.partials = Some(Arc::new(partials));
        self
    }

    pub fn with_fd_step(mut self, h: f64) -> Self {
        self.fd_step = h;
        self
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    /// Same chart with analytic partials dropped.
    pub fn fd_only(&self) -> Self {
        ParametricSurface { partials: None, ..self.clone() }
    }

    pub fn has_analytic_partials(&self) -> bool {
        self.partials.is_some()
    }

    pub fn position(&self, u: f64, v: f64) -> Vec4 {
        (self.position)(u, v)
    }

    pub fn partials(&self, u: f64, v: f64) -> Result<Partials, SurfaceError> {
        let p = match &self.partials {
            Some(f) => f(u, v),
            None => self.fd_partials(u, v),
        };
        if p.is_finite() {
            Ok(p)
        } else {
            Err(SurfaceError::FdFailure { u, v })
        }
    }

    fn fd_partials(&self, u: f64, v: f64) -> Partials {
        let h = self.fd_step;
        let z = |du: f64, dv: f64| self.position(u + du, v + dv);
        let c = z(0.0, 0.0);
        let (up, um, vp, vm) = (z(h, 0.0), z(-h, 0.0), z(0.0, h), z(0.0, -h));
        Partials {
            z: c,
            z_u: (up - um) / (2.0 * h),
            z_v: (vp - vm) / (2.0 * h),
            z_uu: (up - c * 2.0 + um) / (h * h),
            z_uv: (z(h, h) - z(h, -h) - z(-h, h) + z(-h, -h)) / (4.0 * h * h),
            z_vv: (vp - c * 2.0 + vm) / (h * h),
        }
    }

    /// Positions at every node of `grid`.
    pub fn sample(&self, grid: &Grid2) -> Vec<Vec4> {
        grid.nodes().map(|(i, j)| self.position(grid.u(i), grid.v(j))).collect()
    }

    /// Chart interpolating node samples with 5-point Lagrange stencils in
    /// each direction (nearest-node centered, shifted inward at the edges).
    pub fn from_samples(grid: Grid2, points: Vec<Vec4>) -> Result<Self, SurfaceError> {
        if points.len() != grid.len() {
            return Err(SurfaceError::SampleMismatch { expected: grid.len(), got: points.len() });
        }
        if grid.nu < 5 || grid.nv < 5 {
            return Err(SurfaceError::TooFewSamples);
        }
        let domain = Domain::new(grid.u0, grid.u_max(), grid.v0, grid.v_max())?;
        let points = Arc::new(points);
        Ok(ParametricSurface::with_analytic(domain, move |u, v| {
            interpolate(&grid, &points, u, v)
        }))
    }

    /// Chart `(s, t) ↦ z(u(s), v(t))` for monotone 1-D reparametrizations
    /// given as jets `(value, first, second derivative)`.
    pub fn reparametrized(
        &self,
        domain: Domain,
        u_of: impl Fn(f64) -> [f64; 3] + Send + Sync + 'static,
        v_of: impl Fn(f64) -> [f64; 3] + Send + Sync + 'static,
    ) -> Self {
        let base = self.clone();
        ParametricSurface::with_analytic(domain, move |s, t| {
            let [u, du, ddu] = u_of(s);
            let [v, dv, ddv] = v_of(t);
            // non-finite output is reported by the caller's `partials`
            let p = base.partials(u, v).unwrap_or(Partials { z: Vec4([f64::NAN; 4]), ..zero_partials() });
            Partials {
                z: p.z,
                z_u: p.z_u * du,
                z_v: p.z_v * dv,
                z_uu: p.z_uu * (du * du) + p.z_u * ddu,
                z_uv: p.z_uv * (du * dv),
                z_vv: p.z_vv * (dv * dv) + p.z_v * ddv,
            }
        })
    }
}

fn zero_partials() -> Partials {
    Partials {
        z: Vec4::ZERO,
        z_u: Vec4::ZERO,
        z_v: Vec4::ZERO,
        z_uu: Vec4::ZERO,
        z_uv: Vec4::ZERO,
        z_vv: Vec4::ZERO,
    }
}

fn nearest(x: f64, x0: f64, h: f64, n: usize) -> usize {
    ((x - x0) / h).round().clamp(0.0, (n - 1) as f64) as usize
}

fn interpolate(grid: &Grid2, points: &[Vec4], u: f64, v: f64) -> Partials {
    const W: usize = 5;
    let si = stencil::window(nearest(u, grid.u0, grid.hu, grid.nu), grid.nu, W);
    let sj = stencil::window(nearest(v, grid.v0, grid.hv, grid.nv), grid.nv, W);
    let wu = stencil::lagrange_weights(u, grid.u(si), grid.hu, W);
    let wv = stencil::lagrange_weights(v, grid.v(sj), grid.hv, W);
    let mut out = zero_partials();
    for a in 0..W {
        for b in 0..W {
            let p = points[grid.index(si + a, sj + b)];
            out.z += p * (wu[0][a] * wv[0][b]);
            out.z_u += p * (wu[1][a] * wv[0][b]);
            out.z_v += p * (wu[0][a] * wv[1][b]);
            out.z_uu += p * (wu[2][a] * wv[0][b]);
            out.z_uv += p * (wu[1][a] * wv[1][b]);
            out.z_vv += p * (wu[0][a] * wv[2][b]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> ParametricSurface {
        let d = Domain::new(0.0, 1.0, 0.0, 1.0).unwrap();
        ParametricSurface::new(d, |u, v| Vec4::new(u.cos(), u.sin(), v.cos(), v.sin()))
    }

    #[test]
    fn fd_partials_match_analytic() {
        let s = torus();
        let p = s.partials(0.3, 0.7).unwrap();
        assert!((p.z_u - Vec4::new(-0.3f64.sin(), 0.3f64.cos(), 0.0, 0.0)).max_abs() < 1e-8);
        assert!((p.z_vv - Vec4::new(0.0, 0.0, -0.7f64.cos(), -0.7f64.sin())).max_abs() < 1e-6);
        assert!(p.z_uv.max_abs() < 1e-6);
    }

    #[test]
    fn sampled_chart_reproduces_partials() {
        let s = torus();
        let g = s.domain.grid(41, 41);
        let sampled = ParametricSurface::from_samples(g, s.sample(&g)).unwrap();
        let p = sampled.partials(0.41, 0.66).unwrap();
        assert!((p.z - s.position(0.41, 0.66)).max_abs() < 1e-9);
        assert!((p.z_u - Vec4::new(-0.41f64.sin(), 0.41f64.cos(), 0.0, 0.0)).max_abs() < 1e-7);
        assert!((p.z_vv - Vec4::new(0.0, 0.0, -0.66f64.cos(), -0.66f64.sin())).max_abs() < 1e-5);
    }

    #[test]
    fn sample_count_checked() {
        let g = Grid2::spanning(0.0, 1.0, 5, 0.0, 1.0, 5).unwrap();
        assert!(matches!(
            ParametricSurface::from_samples(g, vec![Vec4::ZERO; 3]),
            Err(SurfaceError::SampleMismatch { .. })
        ));
    }
}
