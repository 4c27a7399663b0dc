mod common;

use std::f64::consts::{FRAC_PI_8, TAU};

use common::{brute_force_angle, oracle_invariants, random_in, rng, rotated_cross};
use minsurf4::canonical::{
    canonical_rotation_angle, check_canonical_parameters, frame_invariants_at, frame_invariants_field, geometric_frame,
    rotate_coefficients, to_canonical_parameters, CanonicalError, CanonicalVariant,
};
use minsurf4::catalog;
use minsurf4::geodesic::geodesic_trace;
use minsurf4::geom::orientation_det;
use minsurf4::rotational::{solve_minimal_profile, surface_from_profile};
use minsurf4::tol::Tolerances;
use minsurf4::{Domain, Grid2, ScalarField, Vec4};

#[test]
fn rotation_angle_examples() {
    assert_eq!(canonical_rotation_angle(2.0, 0.5, -0.25, 1.0).unwrap(), 0.0);
    let phi = canonical_rotation_angle(1.0, 0.0, 1.0, 0.0).unwrap();
    assert!((phi - FRAC_PI_8).abs() < 1e-15);
    assert!(rotated_cross(1.0, 0.0, 1.0, 0.0, phi).abs() < 1e-15);
    assert_eq!(canonical_rotation_angle(1.0, 0.0, 0.0, 1.0), Err(CanonicalError::SuperConformal));
}

#[test]
fn rotation_angle_against_scan() {
    let mut r = rng(23);
    for _ in 0..10 {
        let q: [f64; 4] = std::array::from_fn(|_| random_in(&mut r, -1.0, 1.0));
        let phi = canonical_rotation_angle(q[0], q[1], q[2], q[3]).unwrap();
        assert!(phi > -FRAC_PI_8 && phi <= FRAC_PI_8);
        let (a, b, c, d) = rotate_coefficients(q[0], q[1], q[2], q[3], phi);
        assert!((a * c + b * d).abs() < 1e-10);
        assert!((rotated_cross(q[0], q[1], q[2], q[3], phi)).abs() < 1e-10);
        let (best, _) = brute_force_angle(q[0], q[1], q[2], q[3], 100_000);
        assert!((best - phi).abs() < 1e-4, "{best} vs {phi}");
    }
}

#[test]
fn frame_identities_on_grid() {
    let s = catalog::weierstrass_default();
    let mut r = rng(29);
    for _ in 0..20 {
        let (u, v) = (random_in(&mut r, 0.35, 1.25), random_in(&mut r, 0.35, 1.25));
        let cf = geometric_frame(&s, u, v).unwrap();
        let f = cf.frame;
        assert!(f.orthonormality_defect() < 1e-12);
        assert!((orientation_det(&f) - 1.0).abs() < 1e-12);
        assert!(cf.mu > 0.0);
        let o = oracle_invariants(&s, u, v);
        assert!((o.gauss + cf.nu * cf.nu + cf.mu * cf.mu).abs() < 1e-7);
        assert!((o.kappa.abs() - (2.0 * cf.nu * cf.mu).abs()).abs() < 1e-7);
        assert!((o.k - 4.0 * cf.nu * cf.nu * cf.mu * cf.mu).abs() < 1e-7);
        // canonical tangents: σ(x,x) ⊥ σ(x,y)
        let p = s.partials(u, v).unwrap();
        let second = |a: Vec4, b: Vec4| {
            // σ(a, b) from the chart: second derivative along a, b minus its tangent part
            let (au, av) = param(&p, a);
            let (bu, bv) = param(&p, b);
            let raw = p.z_uu * (au * bu) + p.z_uv * (au * bv + av * bu) + p.z_vv * (av * bv);
            raw - f.x * raw.dot(&f.x) - f.y * raw.dot(&f.y)
        };
        let (sxx, sxy) = (second(f.x, f.x), second(f.x, f.y));
        assert!(sxx.dot(&sxy).abs() < 1e-8 * (sxx.norm() * sxy.norm() + 1.0));
        assert!((sxx.norm() - cf.nu.abs()).abs() < 1e-8);
        assert!((sxy.norm() - cf.mu).abs() < 1e-8);
    }
}

/// Coefficients of a tangent vector in the coordinate basis.
fn param(p: &minsurf4::Partials, t: Vec4) -> (f64, f64) {
    let (e, f, g) = (p.z_u.dot(&p.z_u), p.z_u.dot(&p.z_v), p.z_v.dot(&p.z_v));
    let (a, b) = (t.dot(&p.z_u), t.dot(&p.z_v));
    let w2 = e * g - f * f;
    ((g * a - f * b) / w2, (e * b - f * a) / w2)
}

#[test]
fn rotational_frame_matches_explicit_formulas() {
    let (alpha, beta) = (1.0, 2.0);
    let s = catalog::explicit_rotational(alpha, beta, Domain::new(0.2, 1.2, 0.0, TAU).unwrap());
    for (u, v) in [(0.5, 0.3), (0.9, 2.0)] {
        let (f, f1) = ((alpha * u).cosh(), alpha * (alpha * u).sinh());
        let (g, g1) = (alpha / beta * (beta * u).sinh(), alpha * (beta * u).cosh());
        let (sa, ca) = (alpha * v).sin_cos();
        let (sb, cb) = (beta * v).sin_cos();
        let e = (f1 * f1 + g1 * g1).sqrt();
        let rho = (alpha * alpha * f * f + beta * beta * g * g).sqrt();
        let want = [
            Vec4::new(f1 * ca, f1 * sa, g1 * cb, g1 * sb) / e,
            Vec4::new(-alpha * f * sa, alpha * f * ca, -beta * g * sb, beta * g * cb) / rho,
            Vec4::new(g1 * ca, g1 * sa, -f1 * cb, -f1 * sb) / e,
            Vec4::new(-beta * g * sa, beta * g * ca, alpha * f * sb, -alpha * f * cb) / rho,
        ];
        let got = geometric_frame(&s, u, v).unwrap().frame.vectors();
        for (a, b) in got.iter().zip(&want) {
            assert!((a.dot(b).abs() - 1.0).abs() < 1e-10, "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn rotational_gamma1_and_beta1_vanish() {
    let (alpha, beta) = (1.0, 2.0);
    let mp = solve_minimal_profile(alpha, beta, 1.0, 0.5, 0.5, 1.0, 5e-3).unwrap();
    let s = surface_from_profile(&mp.profile, alpha, beta).unwrap();
    let grid = Grid2::spanning(0.0, 1.0, 201, 0.0, 1.0, 21).unwrap();
    let field = frame_invariants_field(&s, &grid).unwrap();
    assert!(field.max_abs(&field.gamma1, 0) < 1e-10);
    assert!(field.max_abs(&field.beta1, 0) < 1e-10);
}

#[test]
fn strongly_regular_gammas() {
    let s = catalog::weierstrass_default();
    let grid = s.domain.grid(101, 101);
    let field = frame_invariants_field(&s, &grid).unwrap();
    let root4 = field.gap().map(|x| x.powf(0.25));
    let (du, dv) = (root4.d_du(), root4.d_dv());
    let diff = |a: &ScalarField, b: &ScalarField| a.zip_map(b, |x, y| x - y);
    assert!(field.max_abs(&diff(&field.gamma1, &dv), 2) < 1e-6);
    assert!(field.max_abs(&diff(&field.gamma2, &du), 2) < 1e-6);
    // Codazzi and normal connection at h = 1e-2
    let c = field.max_codazzi(1);
    assert!(c.iter().all(|x| *x < 5e-4), "{c:?}");
    assert!(field.max_abs(&field.normal_connection, 1) < 5e-4);
    let p = frame_invariants_at(&s, 0.8, 0.7, 1e-3).unwrap();
    assert!((p.gamma1 - field.gamma1.at(50, 40)).abs() < 1e-6);
}

#[test]
fn canonical_parameter_checks() {
    let tol = Tolerances::default();
    let s = catalog::weierstrass_default();
    let grid = s.domain.grid(41, 41);
    let mut field = frame_invariants_field(&s, &grid).unwrap();
    let r = check_canonical_parameters(&field, CanonicalVariant::StronglyRegular, &tol);
    assert!(r.is_canonical && r.max_defect < 1e-10);

    // already canonical: the maps are the identity
    let re = to_canonical_parameters(&s, &field, CanonicalVariant::StronglyRegular, &tol).unwrap();
    for x in [0.3, 0.77, 1.3] {
        assert!((re.u_map.inverse_jet(x)[0] - x).abs() < 1e-10);
        assert!((re.v_map.inverse_jet(x)[0] - x).abs() < 1e-10);
    }

    field.e = field.e.map(|e| 2.0 * e);
    let r = check_canonical_parameters(&field, CanonicalVariant::StronglyRegular, &tol);
    assert!(!r.is_canonical && (r.max_defect - 1.0).abs() < 1e-10);
}

#[test]
fn stretched_chart_recovers_canonical_parameters() {
    let tol = Tolerances::default();
    let s = catalog::weierstrass_default();
    let stretched = s.reparametrized(Domain::new(0.15, 0.65, 0.3, 1.3).unwrap(), |x| [2.0 * x, 2.0, 0.0], |t| [t, 1.0, 0.0]);
    let grid = stretched.domain.grid(51, 101);
    let field = frame_invariants_field(&stretched, &grid).unwrap();
    assert!(!check_canonical_parameters(&field, CanonicalVariant::StronglyRegular, &tol).is_canonical);
    let re = to_canonical_parameters(&stretched, &field, CanonicalVariant::StronglyRegular, &tol).unwrap();
    let g2 = re.surface.domain.grid(51, 101);
    let f2 = frame_invariants_field(&re.surface, &g2).unwrap();
    let r = check_canonical_parameters(&f2, CanonicalVariant::StronglyRegular, &tol);
    assert!(r.is_canonical && r.max_defect < 1e-6, "{r:?}");
}

#[test]
fn unit_speed_meridian_rescales_only_v() {
    let tol = Tolerances::default();
    let (alpha, beta) = (1.0, 2.0);
    let mp = solve_minimal_profile(alpha, beta, 1.0, 0.5, 0.5, 1.0, 5e-3).unwrap();
    let s = surface_from_profile(&mp.profile, alpha, beta).unwrap();
    let grid = Grid2::spanning(0.0, 1.0, 201, 0.0, 1.0, 41).unwrap();
    let field = frame_invariants_field(&s, &grid).unwrap();
    let re = to_canonical_parameters(&s, &field, CanonicalVariant::Gamma1Zero, &tol).unwrap();
    for x in [0.1, 0.5, 0.9] {
        assert!((re.u_map.inverse_jet(x)[0] - x).abs() < 1e-8);
    }
    // oracle: ψ = G·(K² − κ²)^{1/4} from position differences, integrated by trapezoids
    let (u, n) = (0.4, 200);
    let psi = |v: f64| {
        let o = oracle_invariants(&s, u, v);
        o.g * (o.gauss * o.gauss - o.kappa * o.kappa).sqrt().sqrt()
    };
    let h = 1.0 / n as f64;
    let integral: f64 = (0..n).map(|k| 0.5 * h * (psi(k as f64 * h).sqrt() + psi((k + 1) as f64 * h).sqrt())).sum();
    let (t0, t1) = re.v_map.range();
    assert!(((t1 - t0) - integral).abs() < 1e-6, "{} vs {integral}", t1 - t0);
    let f2 = frame_invariants_field(&re.surface, &re.surface.domain.grid(201, 41)).unwrap();
    assert!(check_canonical_parameters(&f2, CanonicalVariant::Gamma1Zero, &tol).max_defect < 1e-6);
}

#[test]
fn sheared_chart_is_not_semi_canonical() {
    let s = catalog::weierstrass_default();
    let base = s.clone();
    let sheared = minsurf4::ParametricSurface::new(Domain::new(0.3, 0.9, 0.3, 0.9).unwrap(), move |u, v| {
        base.position(u + 0.3 * v, v)
    });
    let grid = sheared.domain.grid(9, 9);
    assert!(matches!(frame_invariants_field(&sheared, &grid), Err(CanonicalError::NotSemiCanonical { .. })));
    let plane = catalog::plane();
    assert!(matches!(
        frame_invariants_field(&plane, &plane.domain.grid(9, 9)),
        Err(CanonicalError::NotGeneralType { .. })
    ));
}

#[test]
fn geodesics_along_canonical_tangents() {
    let s = catalog::weierstrass_default();
    for (u, v) in [(0.8, 0.7), (0.6, 0.9)] {
        let cf = geometric_frame(&s, u, v).unwrap();
        let f = cf.frame;
        let tx = geodesic_trace(&s, (u, v), f.x, 0.5).unwrap();
        let ty = geodesic_trace(&s, (u, v), f.y, 0.5).unwrap();
        let ax = tx.accel[0];
        assert!((ax - f.n1 * ax.dot(&f.n1)).norm() < 1e-5);
        assert!((ax - f.n1 * cf.nu).norm() < 1e-5);
        assert!((ty.accel[0] + f.n1 * cf.nu).norm() < 1e-5);
        // bisector: u′ = 1/√(2E), v′ = 1/√(2G) gives Eu′² − Gv′² = 0 and 2μ√(EG)u′v′ = μ
        let p = s.partials(u, v).unwrap();
        let (e, g) = (p.z_u.dot(&p.z_u), p.z_v.dot(&p.z_v));
        let (du, dv) = (1.0 / (2.0 * e).sqrt(), 1.0 / (2.0 * g).sqrt());
        let predicted = 2.0 * cf.mu * (e * g).sqrt() * du * dv;
        let tb = geodesic_trace(&s, (u, v), (f.x + f.y) / 2f64.sqrt(), 0.5).unwrap();
        assert!((tb.accel[0].dot(&f.n2) - predicted).abs() < 1e-5);
        assert!((tb.accel[0].dot(&f.n1)).abs() < 1e-5);
    }
}
