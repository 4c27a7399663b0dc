mod common;

use common::{rotational_fixture, weierstrass_fixture};
use minsurf4::align::aligned_distance;
use minsurf4::analysis::{analyze_grid, PointClass};
use minsurf4::bonnet::{
    integrability_defect, integrate_frame, integrate_position, reconstruct_from_invariants, reconstruct_gamma1_zero,
    BonnetError, FrameSystem,
};
use minsurf4::canonical::frame_invariants_field;
use minsurf4::frenet::{curvatures, line_derivatives};
use minsurf4::tol::Tolerances;
use minsurf4::{Frame4, Grid2, ScalarField, ScalarProfile, Vec4};
use nalgebra::Matrix4;

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn system_from_analyzed_surface() {
    let (_, _, field) = weierstrass_fixture(0.25, 101);
    let sys = FrameSystem::from_field(&field).unwrap();
    assert!(sys.antisymmetry_defect() < 1e-15);
    let d = integrability_defect(&sys);
    assert!(d < 5e-4, "{d}");

    let mut bent = field.clone();
    bent.beta2 = bent.beta2.map(|b| b + 0.1);
    let d = integrability_defect(&FrameSystem::from_field(&bent).unwrap());
    println!("integrability with β₂ + 0.1: {d:e}");
    assert!(d > 0.05);

    let zero = ScalarField::from_fn(field.grid, |_, _| 0.0);
    let r = FrameSystem::new(field.e.clone(), field.g.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone(), zero);
    assert!(matches!(r, Err(BonnetError::DegenerateInvariants(_))));
}

#[test]
fn rotational_frames_and_paths() {
    let fx = rotational_fixture(1e-2);
    assert_eq!((fx.grid.nu, fx.grid.nv), (101, 101));
    let sys = FrameSystem::from_field(&fx.field).unwrap();
    let start = *fx.field.frame(0, 0);
    let fi = integrate_frame(&sys, start, &tol()).unwrap();
    assert!(fi.orthonormality < 1e-6, "{}", fi.orthonormality);
    assert!(fi.path_dependence < 1e-6, "{}", fi.path_dependence);

    // standard start: frames differ from the analyzer's by the fixed motion
    // taking the standard basis to the analyzer's anchor frame
    let std = integrate_frame(&sys, Frame4::standard(), &tol()).unwrap();
    let m = start.to_matrix();
    let mut worst = 0.0f64;
    for (i, j) in fx.grid.nodes() {
        let mapped = Frame4::from_matrix(&(std.frame(i, j).to_matrix() * m));
        worst = worst.max(mapped.distance(fx.field.frame(i, j)));
    }
    assert!(worst < 1e-5, "{worst}");

    let origin = fx.surface.position(0.0, 0.0);
    let pos = integrate_position(&fi, &sys.e, &sys.g, origin, &tol()).unwrap();
    assert!(pos.closure < 1e-7, "{}", pos.closure);
    let d = aligned_distance(&pos.points, &fx.surface.sample(&fx.grid)).unwrap();
    assert!(d < 1e-5, "{d}");

    // translating the start point translates the chart exactly
    let shift = Vec4::new(1.0, -2.0, 0.5, 3.0);
    let moved = integrate_position(&fi, &sys.e, &sys.g, origin + shift, &tol()).unwrap();
    for (a, b) in moved.points.iter().zip(&pos.points) {
        assert!((*a - *b - shift).max_abs() < 1e-12);
    }
}

#[test]
fn motion_equivariance() {
    let (s, grid, field) = weierstrass_fixture(0.25, 41);
    let sys = FrameSystem::from_field(&field).unwrap();
    let start = *field.frame(0, 0);
    let origin = s.position(grid.u0, grid.v0);
    let loose = Tolerances { drift_tol: 1e-3, ..tol() };
    let a = integrate_frame(&sys, start, &loose).unwrap();
    let pa = integrate_position(&a, &sys.e, &sys.g, origin, &loose).unwrap();
    let q = nalgebra::Rotation3::from_euler_angles(0.3, -0.7, 1.1);
    let mut r = Matrix4::identity();
    r.fixed_view_mut::<3, 3>(1, 1).copy_from(q.matrix());
    let t = Vec4::new(0.2, 0.1, -0.4, 0.9);
    let b = integrate_frame(&sys, start.transformed(&r), &loose).unwrap();
    let pb = integrate_position(&b, &sys.e, &sys.g, minsurf4::geom::apply(&r, &origin) + t, &loose).unwrap();
    for (p, q) in pa.points.iter().zip(&pb.points) {
        assert!((minsurf4::geom::apply(&r, p) + t - *q).max_abs() < 1e-10);
    }
    for (f, g) in a.frames.iter().zip(&b.frames) {
        assert!(f.transformed(&r).distance(g) < 1e-10);
    }
}

#[test]
fn strongly_regular_round_trip() {
    let (s, grid, field) = weierstrass_fixture(0.25, 101);
    let r = reconstruct_from_invariants(&field.mu, &field.nu, *field.frame(0, 0), s.position(0.3, 0.3), &tol()).unwrap();
    assert_eq!(r.histogram.count(PointClass::MinimalGeneralType), r.histogram.total());
    let inner = Grid2::new(grid.u0 + grid.hu, grid.hu, 99, grid.v0 + grid.hv, grid.hv, 99).unwrap();
    let a = analyze_grid(&r.surface, &inner, &tol()).unwrap();
    assert!(a.max_by(|p| p.inv.minimality_defect().abs()) < 1e-7);
    let b = analyze_grid(&s, &inner, &tol()).unwrap();
    for (x, y) in a.records.iter().zip(&b.records) {
        assert!((x.inv.gauss - y.inv.gauss).abs() < 1e-4 && (x.inv.kappa - y.inv.kappa).abs() < 1e-4);
    }
    let d = aligned_distance(&r.points, &s.sample(&grid)).unwrap();
    assert!(d < 1e-5, "{d}");
}

#[test]
fn incompatible_invariants_rejected() {
    let (_, grid, field) = weierstrass_fixture(0.25, 41);
    let bumped = field.mu.zip_map(&ScalarField::from_fn(grid, |u, v| 0.05 * (7.0 * u).sin() * (5.0 * v).cos()), |a, b| a + b);
    let r = reconstruct_from_invariants(&bumped, &field.nu, *field.frame(0, 0), Vec4::ZERO, &tol());
    assert!(matches!(r, Err(BonnetError::CompatibilityRejected { .. })), "{r:?}");

    let fx = rotational_fixture(1e-2);
    let mu = ScalarProfile::new(fx.mu.grid, fx.mu.values.iter().enumerate().map(|(i, m)| m * (1.0 + 0.05 * (i as f64 * 0.1).sin())).collect()).unwrap();
    let r = reconstruct_gamma1_zero(&mu, &fx.nu, 1.0, 101, Frame4::standard(), Vec4::ZERO, &tol());
    assert!(matches!(r, Err(BonnetError::CompatibilityRejected { .. })), "{r:?}");
}

#[test]
fn gamma1_zero_round_trip() {
    let fx = rotational_fixture(1e-2);
    let start = *fx.field.frame(0, 0);
    let origin = fx.surface.position(0.0, 0.0);
    let r = reconstruct_gamma1_zero(&fx.mu, &fx.nu, 1.0, 101, start, origin, &tol()).unwrap();
    let d = aligned_distance(&r.points, &fx.surface.sample(&fx.grid)).unwrap();
    assert!(d < 1e-5, "{d}");

    let inner = Grid2::new(0.02, 1e-2, 97, 0.02, 1e-2, 97).unwrap();
    let again = frame_invariants_field(&r.surface, &inner).unwrap();
    assert!(again.max_abs(&again.gamma1, 0) < 1e-5);

    // v-lines of the rebuilt chart keep constant curvatures
    for i in [10usize, 50, 90] {
        let u = r.grid.u(i);
        let ks: Vec<[f64; 3]> = (10..=90)
            .step_by(20)
            .map(|j| curvatures(&line_derivatives(&r.surface, u, r.grid.v(j), 1, 1e-3).unwrap()))
            .collect();
        for m in 0..3 {
            let (lo, hi) = ks.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), k| (a.min(k[m]), b.max(k[m])));
            assert!(hi - lo < 1e-4, "u = {u}, curvature {m}: {lo} .. {hi}");
        }
    }
}
