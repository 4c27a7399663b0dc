//! Minimal meridian from the profile ODE, its surface and line curvatures.

use minsurf4::canonical::frame_invariants_field;
use minsurf4::rotational::{minimality_residual, solve_minimal_profile, surface_from_profile, verify_line_curvatures, GeneratingCurve};
use minsurf4::{Domain, Grid2};

fn main() {
    let c = GeneratingCurve::new(0.6, 0.4, 1.0, 2.0).unwrap();
    println!("curve ϰ = {} τ = {} σ = {}", c.kappa, c.tau, c.sigma);

    let (alpha, beta) = (1.0, 2.0);
    let mp = solve_minimal_profile(alpha, beta, 1.0, 0.5, 0.5, 1.0, 5e-3).unwrap();
    let p = &mp.profile;
    let res = (0..p.grid.n).map(|i| minimality_residual(&p.fg_jet(p.grid.u(i)), alpha, beta).abs()).fold(0.0, f64::max);
    println!("profile nodes {}  max minimality residual {res:.2e}", p.grid.n);

    let tau = std::f64::consts::TAU;
    let s = surface_from_profile(p, alpha, beta).unwrap().with_domain(Domain::new(0.0, 1.0, 0.0, tau).unwrap());
    let grid = Grid2::spanning(0.0, 1.0, p.grid.n, 0.0, tau, 128).unwrap();
    let field = frame_invariants_field(&s, &grid).unwrap();
    println!("max |γ₁| {:.2e}  max |β₁| {:.2e}", field.max_abs(&field.gamma1, 0), field.max_abs(&field.beta1, 0));
    let rep = verify_line_curvatures(&s, &field, &[50, 100, 150], &[0, 16, 32, 64, 96]).unwrap();
    println!(
        "v-lines: variation {:.2e} mismatch {:.2e}; u-lines: torsion {:.2e} curvature {:.2e}",
        rep.max_v_variation(),
        rep.max_v_mismatch(),
        rep.max_u_torsion(),
        rep.max_u_curvature_mismatch()
    );
}
