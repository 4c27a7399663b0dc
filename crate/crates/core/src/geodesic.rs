//! Geodesics of a chart by RK4 on the Christoffel system, with accelerations
//! measured from the traced points.

use thiserror::Error;

use crate::analysis::{fundamental_forms_with, AnalysisError, FundamentalData};
use crate::geom::Vec4;
use crate::stencil;
use crate::surface::ParametricSurface;
use crate::tol::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeodesicError {
    #[error("geodesic left the chart at ({u}, {v}) after arc length {s}")]
    LeftDomain { u: f64, v: f64, s: f64 },
    #[error("direction has no tangential component")]
    BadDirection,
    #[error("length and step must be positive")]
    BadLength,
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// Samples of a unit-speed geodesic `s ∈ [0, length]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicTrace {
    pub step: f64,
    pub s: Vec<f64>,
    pub uv: Vec<(f64, f64)>,
    pub points: Vec<Vec4>,
    /// Unit tangents `t = z_u u′ + z_v v′`.
    pub tangents: Vec<Vec4>,
    /// `t′` from a five-point second difference of the points.
    pub accel: Vec<Vec4>,
}

impl GeodesicTrace {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

/// Parameter velocity `(u′, v′)` of the tangent vector closest to `dir`,
/// scaled to unit length in the metric.
pub fn parameter_direction(fd: &FundamentalData, dir: &Vec4) -> Result<(f64, f64), GeodesicError> {
    let p = &fd.partials;
    let (bu, bv) = (dir.dot(&p.z_u), dir.dot(&p.z_v));
    let det = fd.e * fd.g - fd.f * fd.f;
    let du = (fd.g * bu - fd.f * bv) / det;
    let dv = (fd.e * bv - fd.f * bu) / det;
    let speed = (fd.e * du * du + 2.0 * fd.f * du * dv + fd.g * dv * dv).sqrt();
    if !(speed > 0.0) || !speed.is_finite() {
        return Err(GeodesicError::BadDirection);
    }
    Ok((du / speed, dv / speed))
}

type State = [f64; 4];

fn rhs(surface: &ParametricSurface, y: &State, s: f64, tol: &Tolerances) -> Result<State, GeodesicError> {
    let [u, v, du, dv] = *y;
    if !surface.domain.contains(u, v) {
        return Err(GeodesicError::LeftDomain { u, v, s });
    }
    let c = fundamental_forms_with(surface, u, v, tol)?.christoffel;
    let acc = |k: usize| -(c[k][0] * du * du + 2.0 * c[k][1] * du * dv + c[k][2] * dv * dv);
    Ok([du, dv, acc(0), acc(1)])
}

fn rk4(surface: &ParametricSurface, y: &State, s: f64, h: f64, tol: &Tolerances) -> Result<State, GeodesicError> {
    let add = |a: &State, k: &State, f: f64| -> State { std::array::from_fn(|i| a[i] + f * k[i]) };
    let k1 = rhs(surface, y, s, tol)?;
    let k2 = rhs(surface, &add(y, &k1, h / 2.0), s + h / 2.0, tol)?;
    let k3 = rhs(surface, &add(y, &k2, h / 2.0), s + h / 2.0, tol)?;
    let k4 = rhs(surface, &add(y, &k3, h), s + h, tol)?;
    Ok(std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])))
}

/// Traces the geodesic through `start` tangent to `direction` for arc
/// length `length`, step `1e-3 ×` the domain diameter.
pub fn geodesic_trace(
    surface: &ParametricSurface,
    start: (f64, f64),
    direction: Vec4,
    length: f64,
) -> Result<GeodesicTrace, GeodesicError> {
    let step = 1e-3 * surface.domain.diameter();
    geodesic_trace_with(surface, start, direction, length, step, &Tolerances::default())
}

pub fn geodesic_trace_with(
    surface: &ParametricSurface,
    start: (f64, f64),
    direction: Vec4,
    length: f64,
    step: f64,
    tol: &Tolerances,
) -> Result<GeodesicTrace, GeodesicError> {
    if !(length > 0.0 && step > 0.0) {
        return Err(GeodesicError::BadLength);
    }
    let fd = fundamental_forms_with(surface, start.0, start.1, tol)?;
    let (du, dv) = parameter_direction(&fd, &direction)?;
    let n = (length / step).ceil() as usize;
    let h = length / n as f64;
    let y0 = [start.0, start.1, du, dv];

    // two extra steps on each side give every returned sample a centered stencil
    let mut back = vec![y0];
    for k in 0..2 {
        let y = rk4(surface, &back[k], -(k as f64) * h, -h, tol)?;
        back.push(y);
    }
    let mut states: Vec<State> = back.into_iter().rev().collect();
    let mut y = y0;
    for k in 0..n + 2 {
        y = rk4(surface, &y, k as f64 * h, h, tol)?;
        states.push(y);
    }
    let points: Vec<Vec4> = states.iter().map(|y| surface.position(y[0], y[1])).collect();
    let w = stencil::offset_weights(&[-2, -1, 0, 1, 2], 2);

    let mut trace = GeodesicTrace {
        step: h,
        s: Vec::with_capacity(n + 1),
        uv: Vec::with_capacity(n + 1),
        points: Vec::with_capacity(n + 1),
        tangents: Vec::with_capacity(n + 1),
        accel: Vec::with_capacity(n + 1),
    };
    for k in 2..n + 3 {
        let y = &states[k];
        let p = surface.partials(y[0], y[1]).map_err(AnalysisError::from)?;
        let acc = (0..5).fold(Vec4::ZERO, |a, m| a + points[k + m - 2] * w[m]) * (1.0 / (h * h));
        trace.s.push((k - 2) as f64 * h);
        trace.uv.push((y[0], y[1]));
        trace.points.push(points[k]);
        trace.tangents.push(p.z_u * y[2] + p.z_v * y[3]);
        trace.accel.push(acc);
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn great_circle_on_clifford_torus() {
        // u-lines of the flat torus are geodesics with t′ = −(z in the first plane)
        let s = crate::catalog::clifford_torus();
        let tr = geodesic_trace(&s, (0.2, 0.5), Vec4::new(-(0.2f64).sin(), 0.2f64.cos(), 0.0, 0.0), 0.5).unwrap();
        for k in 0..tr.len() {
            let (u, v) = tr.uv[k];
            assert!((v - 0.5).abs() < 1e-12);
            assert!((u - 0.2 - tr.s[k]).abs() < 1e-10);
            let expect = Vec4::new(-u.cos(), -u.sin(), 0.0, 0.0);
            assert!((tr.accel[k] - expect).max_abs() < 1e-7);
        }
        let e = geodesic_trace(&s, (0.9, 0.5), Vec4::unit(1), 0.5);
        assert!(matches!(e, Err(GeodesicError::LeftDomain { .. })));
    }
}
