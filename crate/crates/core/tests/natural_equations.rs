mod common;

use minsurf4::analysis::invariants;
use minsurf4::bonnet::reconstruct_from_invariants;
use minsurf4::canonical::{frame_invariants_field, frame_invariants_field_with};
use minsurf4::catalog;
use minsurf4::natural::{laplacian, ode_residuals, pde_residuals_kkappa, pde_residuals_munu};
use minsurf4::rotational::{solve_minimal_profile, surface_from_profile};
use minsurf4::tol::Tolerances;
use minsurf4::{Domain, Grid1, Grid2, ParametricSurface, Partials, ScalarField, ScalarProfile, Vec4};

#[test]
fn laplacian_examples() {
    let g = Grid2::spanning(0.0, 1.0, 101, 0.0, 1.0, 101).unwrap();
    let c = laplacian(&ScalarField::from_fn(g, |_, _| 3.0)).unwrap();
    assert!(c.max_abs() < 1e-9);
    let q = laplacian(&ScalarField::from_fn(g, |u, v| u * u + v * v)).unwrap();
    assert!(q.iter().all(|(_, _, x)| (x - 4.0).abs() < 1e-8));
    let s = laplacian(&ScalarField::from_fn(g, |u, v| u.sin() * v.sin())).unwrap();
    for (i, j, x) in s.iter() {
        let (u, v) = g.node(i, j);
        assert!((x + 2.0 * u.sin() * v.sin()).abs() < 1e-4);
    }
    assert!(s.get(0, 5).is_none());
}

#[test]
fn constant_inputs() {
    let g = Grid2::spanning(0.0, 1.0, 9, 0.0, 1.0, 9).unwrap();
    let (mu, nu) = (0.7, 0.2);
    let r = pde_residuals_munu(&ScalarField::from_fn(g, |_, _| mu), &ScalarField::from_fn(g, |_, _| nu)).unwrap();
    assert!(r.r1.iter().all(|(_, _, x)| (x - (mu * mu + nu * nu)).abs() < 1e-12));
    assert!(r.r2.iter().all(|(_, _, x)| (x - 2.0 * mu * nu).abs() < 1e-12));
    let (k, kappa) = (-0.53, 0.28);
    let r = pde_residuals_kkappa(&ScalarField::from_fn(g, |_, _| k), &ScalarField::from_fn(g, |_, _| kappa)).unwrap();
    assert!(r.r1.iter().all(|(_, _, x)| (x + k).abs() < 1e-12));
    assert!(r.r2.iter().all(|(_, _, x)| (x - kappa).abs() < 1e-12));
    let g1 = Grid1::new(0.0, 0.1, 9).unwrap();
    let r = ode_residuals(&ScalarProfile::from_fn(g1, |_| mu), &ScalarProfile::from_fn(g1, |_| nu)).unwrap();
    assert!(r.r1.iter().all(|(_, x)| (x - (mu * mu + nu * nu)).abs() < 1e-12));
    assert!(r.r2.iter().all(|(_, x)| (x - 2.0 * mu * nu).abs() < 1e-12));
}

#[test]
fn reconstructed_surface_solves_both_forms() {
    let s = catalog::weierstrass_default();
    let grid = s.domain.grid(101, 101);
    let field = frame_invariants_field(&s, &grid).unwrap();
    let r = reconstruct_from_invariants(&field.mu, &field.nu, *field.frame(0, 0), s.position(0.3, 0.3), &Tolerances::default())
        .unwrap();
    // four boundary rows are skipped: the frame system takes one-sided
    // differences of the input there, and the chart interpolates samples,
    // so its parametric lines are canonical only up to interpolation error
    let inner = Grid2::new(grid.u0 + 4.0 * grid.hu, grid.hu, 93, grid.v0 + 4.0 * grid.hv, grid.hv, 93).unwrap();
    let loose = Tolerances { semi_tol: 1e-4, ..Tolerances::default() };
    let again = frame_invariants_field_with(&r.surface, &inner, &loose).unwrap();
    let a = pde_residuals_munu(&again.mu, &again.nu).unwrap();
    let b = pde_residuals_kkappa(&again.gauss, &again.kappa).unwrap();
    assert!(a.max_abs() < 5e-4, "{}", a.max_abs());
    assert!(b.max_abs() < 5e-4, "{}", b.max_abs());
    // same surface, two formulations
    for ((_, _, x), (_, _, y)) in a.r1.iter().zip(b.r1.iter()) {
        assert!((x - y).abs() < 1e-6);
    }
    for ((_, _, x), (_, _, y)) in a.r2.iter().zip(b.r2.iter()) {
        assert!((x - y).abs() < 1e-6);
    }
}

#[test]
fn non_minimal_fields_are_rejected() {
    // magnitudes of σ(x,x), σ(x,y) on a graph of non-harmonic functions
    let s = ParametricSurface::with_analytic(Domain::new(0.0, 1.0, 0.0, 1.0).unwrap(), |u, v| Partials {
        z: Vec4::new(u, v, u * u + 0.5 * v * v, u * v + 0.3 * u * u * u),
        z_u: Vec4::new(1.0, 0.0, 2.0 * u, v + 0.9 * u * u),
        z_v: Vec4::new(0.0, 1.0, v, u),
        z_uu: Vec4::new(0.0, 0.0, 2.0, 1.8 * u),
        z_uv: Vec4::new(0.0, 0.0, 0.0, 1.0),
        z_vv: Vec4::new(0.0, 0.0, 1.0, 0.0),
    });
    let g = Grid2::spanning(0.0, 0.3, 31, 0.2, 0.5, 31).unwrap();
    let at = |u: f64, v: f64| invariants(&s, u, v).unwrap();
    let nu = ScalarField::from_fn(g, |u, v| at(u, v).sigma_xx.norm());
    let mu = ScalarField::from_fn(g, |u, v| at(u, v).sigma_xy.norm());
    let r = pde_residuals_munu(&mu, &nu).unwrap();
    println!("non-minimal PDE residual {:e}", r.max_abs());
    assert!(r.max_abs() > 1e-2);

    let g1 = Grid1::new(0.0, 0.01, 31).unwrap();
    let nu = ScalarProfile::from_fn(g1, |u| at(u, 0.3).sigma_xx.norm());
    let mu = ScalarProfile::from_fn(g1, |u| at(u, 0.3).sigma_xy.norm());
    let r = ode_residuals(&mu, &nu).unwrap();
    println!("non-minimal ODE residual {:e}", r.max_abs());
    assert!(r.max_abs() > 1e-2);
}

fn rotational_profiles(h: f64) -> (ScalarProfile, ScalarProfile) {
    let mp = solve_minimal_profile(1.0, 2.0, 1.0, 0.5, 0.5, 1.0, h).unwrap();
    let s = surface_from_profile(&mp.profile, 1.0, 2.0).unwrap();
    let n = mp.profile.grid.n;
    let grid = Grid2::new(0.0, h, n, 0.0, 0.05, 5).unwrap();
    let f = frame_invariants_field(&s, &grid).unwrap();
    let g1 = mp.profile.grid;
    let line = |x: &ScalarField| ScalarProfile::new(g1, (0..n).map(|i| x.at(i, 2)).collect()).unwrap();
    (line(&f.mu), line(&f.nu))
}

#[test]
fn rotational_profiles_solve_the_ode() {
    let (mu, nu) = rotational_profiles(1e-2);
    let coarse = ode_residuals(&mu, &nu).unwrap();
    let (mu, nu) = rotational_profiles(5e-3);
    let fine = ode_residuals(&mu, &nu).unwrap();
    assert!(fine.max_abs() < 1e-4 && coarse.max_abs() < 1e-4);
    let ratio = coarse.max_abs() / fine.max_abs();
    assert!((3.0..=5.0).contains(&ratio), "ratio {ratio}");
}
