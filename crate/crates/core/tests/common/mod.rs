//! Reference computations shared by the integration tests. They use only
//! chart positions and plain arrays, never the library's analysis code.

#![allow(dead_code)]

use minsurf4::{ParametricSurface, Vec4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type V = [f64; 4];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(p: Vec4) -> V {
    p.components()
}

pub fn dot(a: &V, b: &V) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &V, b: &V) -> V {
    std::array::from_fn(|i| a[i] - b[i])
}

pub fn axpy(s: f64, a: &V, b: &V) -> V {
    std::array::from_fn(|i| s * a[i] + b[i])
}

pub fn norm(a: &V) -> f64 {
    dot(a, a).sqrt()
}

/// Determinant by cofactor expansion along the first row.
pub fn det4(m: [V; 4]) -> f64 {
    let det3 = |r: [[f64; 3]; 3]| {
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    };
    (0..4)
        .map(|c| {
            let minor: [[f64; 3]; 3] = std::array::from_fn(|r| {
                let cols: Vec<usize> = (0..4).filter(|&k| k != c).collect();
                std::array::from_fn(|k| m[r + 1][cols[k]])
            });
            let s = if c % 2 == 0 { 1.0 } else { -1.0 };
            s * m[0][c] * det3(minor)
        })
        .sum()
}

/// Position partials by sixth-order central differences of positions.
pub struct FdPartials {
    pub z_u: V,
    pub z_v: V,
    pub z_uu: V,
    pub z_uv: V,
    pub z_vv: V,
}

pub fn fd_partials(s: &ParametricSurface, u: f64, w: f64, h: f64) -> FdPartials {
    let p = |a: f64, b: f64| v(s.position(u + a * h, w + b * h));
    const D1: [(f64, f64); 3] = [(1.0, 45.0 / 60.0), (2.0, -9.0 / 60.0), (3.0, 1.0 / 60.0)];
    const D2: [(f64, f64); 3] = [(1.0, 270.0 / 180.0), (2.0, -27.0 / 180.0), (3.0, 2.0 / 180.0)];
    let mut out = FdPartials { z_u: [0.0; 4], z_v: [0.0; 4], z_uu: [0.0; 4], z_uv: [0.0; 4], z_vv: [0.0; 4] };
    let c = p(0.0, 0.0);
    for i in 0..4 {
        out.z_uu[i] = -490.0 / 180.0 * c[i] / (h * h);
        out.z_vv[i] = -490.0 / 180.0 * c[i] / (h * h);
    }
    for (k, wgt) in D1 {
        let d = |a: V, b: V| sub(&a, &b);
        out.z_u = axpy(wgt / h, &d(p(k, 0.0), p(-k, 0.0)), &out.z_u);
        out.z_v = axpy(wgt / h, &d(p(0.0, k), p(0.0, -k)), &out.z_v);
    }
    for (k, wgt) in D2 {
        let s2 = |a: V, b: V| std::array::from_fn::<f64, 4, _>(|i| a[i] + b[i]);
        out.z_uu = axpy(wgt / (h * h), &s2(p(k, 0.0), p(-k, 0.0)), &out.z_uu);
        out.z_vv = axpy(wgt / (h * h), &s2(p(0.0, k), p(0.0, -k)), &out.z_vv);
    }
    // mixed derivative as the u-difference of v-differences
    for (a, wa) in D1 {
        for (b, wb) in D1 {
            let t = std::array::from_fn::<f64, 4, _>(|i| {
                p(a, b)[i] - p(a, -b)[i] - p(-a, b)[i] + p(-a, -b)[i]
            });
            out.z_uv = axpy(wa * wb / (h * h), &t, &out.z_uv);
        }
    }
    out
}

/// `(E, F, G, L, M, N, k, κ, K)` from determinants of raw partials:
/// the normal parts never need an explicit normal frame.
#[derive(Debug, Clone, Copy)]
pub struct OracleInvariants {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub k: f64,
    pub kappa: f64,
    pub gauss: f64,
}

pub fn oracle_invariants(s: &ParametricSurface, u: f64, w: f64) -> OracleInvariants {
    let d = fd_partials(s, u, w, 1e-3 * s.domain.extent());
    let (e, f, g) = (dot(&d.z_u, &d.z_u), dot(&d.z_u, &d.z_v), dot(&d.z_v, &d.z_v));
    let w2 = e * g - f * f;
    let l = 2.0 * det4([d.z_u, d.z_v, d.z_uu, d.z_uv]) / w2;
    let m = det4([d.z_u, d.z_v, d.z_uu, d.z_vv]) / w2;
    let n = 2.0 * det4([d.z_u, d.z_v, d.z_uv, d.z_vv]) / w2;
    let k = (l * n - m * m) / w2;
    let kappa = (e * n + g * l - 2.0 * f * m) / (2.0 * w2);
    // normal parts by subtracting the tangential projection
    let normal = |p: &V| {
        let (a, b) = (dot(p, &d.z_u), dot(p, &d.z_v));
        let cu = (g * a - f * b) / w2;
        let cv = (e * b - f * a) / w2;
        axpy(-cv, &d.z_v, &axpy(-cu, &d.z_u, p))
    };
    let (nuu, nuv, nvv) = (normal(&d.z_uu), normal(&d.z_uv), normal(&d.z_vv));
    let gauss = (dot(&nuu, &nvv) - dot(&nuv, &nuv)) / w2;
    OracleInvariants { e, f, g, l, m, n, k, kappa, gauss }
}

/// Angle in `(−π/8, π/8]` minimizing the rotated cross term, by scanning.
pub fn brute_force_angle(a: f64, b: f64, c: f64, d: f64, samples: usize) -> (f64, f64) {
    let lo = -std::f64::consts::FRAC_PI_8;
    let span = std::f64::consts::FRAC_PI_4;
    let mut best = (0.0, f64::INFINITY);
    for i in 1..=samples {
        let phi = lo + span * i as f64 / samples as f64;
        let cross = rotated_cross(a, b, c, d, phi).abs();
        if cross < best.1 {
            best = (phi, cross);
        }
    }
    best
}

/// `āc̄ + b̄d̄` after turning the tangent frame by `phi`, written out from
/// `σ(x̄,x̄)` and `σ(x̄,ȳ)` with `σ(y,y) = −σ(x,x)`.
pub fn rotated_cross(a: f64, b: f64, c: f64, d: f64, phi: f64) -> f64 {
    let (s2, c2) = (2.0 * phi).sin_cos();
    let abar = a * c2 + c * s2;
    let bbar = b * c2 + d * s2;
    let cbar = -a * s2 + c * c2;
    let dbar = -b * s2 + d * c2;
    abar * cbar + bbar * dbar
}

pub fn random_in(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    r.gen_range(lo..hi)
}

/// Sup of `|a − b|` over paired samples.
pub fn max_diff(a: impl IntoIterator<Item = f64>, b: impl IntoIterator<Item = f64>) -> f64 {
    a.into_iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

// ---- fixtures built with the library itself ----

use minsurf4::canonical::{frame_invariants_field, to_canonical_parameters, CanonicalVariant, InvariantField};
use minsurf4::rotational::{solve_minimal_profile, surface_from_profile};
use minsurf4::tol::Tolerances;
use minsurf4::{Grid1, Grid2, ScalarProfile};

/// Rotational minimal surface (α = 1, β = 2) in canonical parameters on
/// `[0, 1]²` with step `h`, its invariant field and profiles.
pub struct RotationalFixture {
    pub surface: ParametricSurface,
    pub grid: Grid2,
    pub field: InvariantField,
    pub mu: ScalarProfile,
    pub nu: ScalarProfile,
}

pub fn rotational_fixture(h: f64) -> RotationalFixture {
    let tol = Tolerances::default();
    let mp = solve_minimal_profile(1.0, 2.0, 1.0, 0.5, 0.5, 1.0, h).unwrap();
    let s = surface_from_profile(&mp.profile, 1.0, 2.0).unwrap();
    let n = mp.profile.grid.n;
    let g0 = Grid2::new(0.0, h, n, 0.0, 1.0 / 40.0, 41).unwrap();
    let f0 = frame_invariants_field(&s, &g0).unwrap();
    let surface = to_canonical_parameters(&s, &f0, CanonicalVariant::Gamma1Zero, &tol).unwrap().surface;
    let grid = Grid2::new(0.0, h, n, 0.0, h, n).unwrap();
    let field = frame_invariants_field(&surface, &grid).unwrap();
    let g1 = Grid1::new(0.0, h, n).unwrap();
    let line = |f: &minsurf4::ScalarField| ScalarProfile::new(g1, (0..n).map(|i| f.at(i, 0)).collect()).unwrap();
    let (mu, nu) = (line(&field.mu), line(&field.nu));
    RotationalFixture { surface, grid, field, mu, nu }
}

/// Weierstrass-type surface (c = 1/4) in canonical parameters.
pub fn weierstrass_fixture(c: f64, n: usize) -> (ParametricSurface, Grid2, InvariantField) {
    let d = minsurf4::Domain::new(0.3, 1.3, 0.3, 1.3).unwrap();
    let s = minsurf4::catalog::weierstrass(c, d);
    let grid = d.grid(n, n);
    let field = frame_invariants_field(&s, &grid).unwrap();
    (s, grid, field)
}
