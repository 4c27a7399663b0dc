//! Frenet curvatures of curves in R⁴ from their first four derivatives.

use crate::geom::Vec4;
use crate::stencil;
use crate::surface::{ParametricSurface, SurfaceError};

/// Gram–Schmidt of `c′, c″, c‴, c⁗`: the unit vectors and the norms
/// `w₁..w₄` of the orthogonalized derivatives.
pub fn gram_schmidt_norms(d: &[Vec4; 4]) -> ([Vec4; 4], [f64; 4]) {
    let mut e = [Vec4::ZERO; 4];
    let mut w = [0.0; 4];
    for k in 0..4 {
        let mut r = d[k];
        for m in 0..k {
            r = r - e[m] * r.dot(&e[m]);
        }
        // second pass keeps the basis orthogonal when w is small
        for m in 0..k {
            r = r - e[m] * r.dot(&e[m]);
        }
        w[k] = r.norm();
        e[k] = if w[k] > 0.0 { r * (1.0 / w[k]) } else { Vec4::ZERO };
    }
    (e, w)
}

/// `(ϰ₁, ϰ₂, ϰ₃)` = curvature, torsion and third curvature, all `≥ 0`.
pub fn curvatures(d: &[Vec4; 4]) -> [f64; 3] {
    let (_, w) = gram_schmidt_norms(d);
    [w[1] / (w[0] * w[0]), w[2] / (w[0] * w[1]), w[3] / (w[0] * w[2])]
}

/// Derivatives of a parameter line of a chart: `dir = 0` for the u-line
/// through `(u, v)`, `1` for the v-line. Orders one and two come from the
/// partials, three and four from differences of the second partial.
pub fn line_derivatives(surface: &ParametricSurface, u: f64, v: f64, dir: usize, h: f64) -> Result<[Vec4; 4], SurfaceError> {
    let offs = [-2i32, -1, 0, 1, 2];
    let second = |t: f64| -> Result<Vec4, SurfaceError> {
        let p = if dir == 0 { surface.partials(u + t, v)? } else { surface.partials(u, v + t)? };
        Ok(if dir == 0 { p.z_uu } else { p.z_vv })
    };
    let p = surface.partials(u, v)?;
    let samples = offs.iter().map(|&o| second(o as f64 * h)).collect::<Result<Vec<_>, _>>()?;
    let fd = |order: usize| {
        let w = stencil::offset_weights(&offs, order);
        samples.iter().zip(&w).fold(Vec4::ZERO, |a, (s, c)| a + *s * *c) * (1.0 / h.powi(order as i32))
    };
    Ok(if dir == 0 { [p.z_u, p.z_uu, fd(1), fd(2)] } else { [p.z_v, p.z_vv, fd(1), fd(2)] })
}
