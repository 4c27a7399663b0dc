//! Built-in test charts with analytic partials.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::geom::Vec4;
use crate::rotational::{revolve, ProfileJet};
use crate::surface::{Domain, ParametricSurface, Partials};

pub const BUILTIN_NAMES: [&str; 7] = [
    "plane",
    "clifford",
    "catenoid",
    "holomorphic",
    "weierstrass",
    "rotational-explicit",
    "rotational-linear",
];

fn dom(u0: f64, u1: f64, v0: f64, v1: f64) -> Domain {
    Domain::new(u0, u1, v0, v1).expect("builtin domains are non-empty")
}

pub fn plane() -> ParametricSurface {
    ParametricSurface::with_analytic(dom(-1.0, 1.0, -1.0, 1.0), |u, v| Partials {
        z: Vec4::new(u, v, 0.0, 0.0),
        z_u: Vec4::unit(0),
        z_v: Vec4::unit(1),
        z_uu: Vec4::ZERO,
        z_uv: Vec4::ZERO,
        z_vv: Vec4::ZERO,
    })
}

/// `(cos u, sin u, cos v, sin v)`.
pub fn clifford_torus() -> ParametricSurface {
    ParametricSurface::with_analytic(dom(0.0, 1.0, 0.0, 1.0), |u, v| {
        let (su, cu) = u.sin_cos();
        let (sv, cv) = v.sin_cos();
        Partials {
            z: Vec4::new(cu, su, cv, sv),
            z_u: Vec4::new(-su, cu, 0.0, 0.0),
            z_v: Vec4::new(0.0, 0.0, -sv, cv),
            z_uu: Vec4::new(-cu, -su, 0.0, 0.0),
            z_uv: Vec4::ZERO,
            z_vv: Vec4::new(0.0, 0.0, -cv, -sv),
        }
    })
}

/// Catenoid in the hyperplane `x₄ = 0`.
pub fn catenoid() -> ParametricSurface {
    ParametricSurface::with_analytic(dom(-0.5, 0.5, 0.0, 1.0), |u, v| {
        let (ch, sh) = (u.cosh(), u.sinh());
        let (sv, cv) = v.sin_cos();
        Partials {
            z: Vec4::new(ch * cv, ch * sv, u, 0.0),
            z_u: Vec4::new(sh * cv, sh * sv, 1.0, 0.0),
            z_v: Vec4::new(-ch * sv, ch * cv, 0.0, 0.0),
            z_uu: Vec4::new(ch * cv, ch * sv, 0.0, 0.0),
            z_uv: Vec4::new(-sh * sv, sh * cv, 0.0, 0.0),
            z_vv: Vec4::new(-ch * cv, -ch * sv, 0.0, 0.0),
        }
    })
}

/// Graph of `w ↦ w²`: `(u, v, u² − v², 2uv)`.
pub fn holomorphic_graph() -> ParametricSurface {
    ParametricSurface::with_analytic(dom(-0.7, 0.7, -0.7, 0.7), |u, v| Partials {
        z: Vec4::new(u, v, u * u - v * v, 2.0 * u * v),
        z_u: Vec4::new(1.0, 0.0, 2.0 * u, 2.0 * v),
        z_v: Vec4::new(0.0, 1.0, -2.0 * v, 2.0 * u),
        z_uu: Vec4::new(0.0, 0.0, 2.0, 0.0),
        z_uv: Vec4::new(0.0, 0.0, 0.0, 2.0),
        z_vv: Vec4::new(0.0, 0.0, -2.0, 0.0),
    })
}

/// Weierstrass-type minimal surface `z = Re ∫ Φ dw` with
/// `Φ = (1 + cw², i(1 − cw²), (1 − c)w, −i(1 + c)w)`.
///
/// For `c = ±1/4` the coordinates `(u, v)` are canonical and the surface is
/// of general type with neither family of coordinate lines geodesic away
/// from the axes.
pub fn weierstrass(c: f64, domain: Domain) -> ParametricSurface {
    ParametricSurface::with_analytic(domain, move |u, v| {
        let w = Complex64::new(u, v);
        let i = Complex64::i();
        let w2 = w * w;
        let w3 = w2 * w;
        let pos = [
            w + c * w3 / 3.0,
            i * (w - c * w3 / 3.0),
            (1.0 - c) * w2 / 2.0,
            -i * (1.0 + c) * w2 / 2.0,
        ];
        let phi = [1.0 + c * w2, i * (1.0 - c * w2), (1.0 - c) * w, -i * (1.0 + c) * w];
        let dphi = [2.0 * c * w, -2.0 * i * c * w, Complex64::new(1.0 - c, 0.0), -i * (1.0 + c)];
        let re = |a: [Complex64; 4]| Vec4(a.map(|z| z.re));
        let im = |a: [Complex64; 4]| Vec4(a.map(|z| z.im));
        Partials {
            z: re(pos),
            z_u: re(phi),
            z_v: -im(phi),
            z_uu: re(dphi),
            z_uv: -im(dphi),
            z_vv: -re(dphi),
        }
    })
}

pub fn weierstrass_default() -> ParametricSurface {
    weierstrass(0.25, dom(0.3, 1.3, 0.3, 1.3))
}

/// Minimal rotational surface with `f = cosh αu`, `g = (α/β) sinh βu`.
pub fn explicit_rotational(alpha: f64, beta: f64, domain: Domain) -> ParametricSurface {
    revolve(alpha, beta, domain, move |u| ProfileJet {
        f: [(alpha * u).cosh(), alpha * (alpha * u).sinh(), alpha * alpha * (alpha * u).cosh()],
        g: [
            alpha / beta * (beta * u).sinh(),
            alpha * (beta * u).cosh(),
            alpha * beta * (beta * u).sinh(),
        ],
    })
}

/// Non-minimal rotational surface with `f = u + 1`, `g = u`.
pub fn linear_rotational(alpha: f64, beta: f64, domain: Domain) -> ParametricSurface {
    revolve(alpha, beta, domain, |u| ProfileJet { f: [u + 1.0, 1.0, 0.0], g: [u, 1.0, 0.0] })
}

/// Looks up a built-in chart; `params` may override `c`, `alpha`, `beta`
/// and the domain bounds `u_min, u_max, v_min, v_max`.
pub fn builtin(name: &str, params: &BTreeMap<String, f64>) -> Option<ParametricSurface> {
    let p = |k: &str, d: f64| params.get(k).copied().unwrap_or(d);
    let base = match name {
        "plane" => plane(),
        "clifford" => clifford_torus(),
        "catenoid" => catenoid(),
        "holomorphic" => holomorphic_graph(),
        "weierstrass" => weierstrass_default(),
        "rotational-explicit" => explicit_rotational(1.0, 2.0, dom(0.2, 1.2, 0.0, std::f64::consts::TAU)),
        "rotational-linear" => linear_rotational(1.0, 2.0, dom(0.1, 1.1, 0.0, std::f64::consts::TAU)),
        _ => return None,
    };
    let d = base.domain;
    let domain = Domain::new(p("u_min", d.u_min), p("u_max", d.u_max), p("v_min", d.v_min), p("v_max", d.v_max)).ok()?;
    Some(match name {
        "weierstrass" => weierstrass(p("c", 0.25), domain),
        "rotational-explicit" => explicit_rotational(p("alpha", 1.0), p("beta", 2.0), domain),
        "rotational-linear" => linear_rotational(p("alpha", 1.0), p("beta", 2.0), domain),
        _ => base.with_domain(domain),
    })
}
