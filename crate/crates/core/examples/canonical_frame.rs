//! Geometric frame at one point and the frame invariants over a grid.

use minsurf4::canonical::{
    canonical_rotation_angle, check_canonical_parameters, frame_invariants_field, geometric_frame, CanonicalVariant,
};
use minsurf4::catalog;
use minsurf4::tol::Tolerances;

fn main() {
    println!("φ for a=c=1, b=d=0: {}", canonical_rotation_angle(1.0, 0.0, 1.0, 0.0).unwrap());

    let s = catalog::weierstrass_default();
    let cf = geometric_frame(&s, 0.8, 0.7).unwrap();
    println!("ν = {:.6}  μ = {:.6}  φ = {:.3e}", cf.nu, cf.mu, cf.phi);
    println!("κ − 2νμ = {:.3e}", cf.kappa - 2.0 * cf.nu * cf.mu);
    println!("K + ν² + μ² = {:.3e}", cf.gauss + cf.nu * cf.nu + cf.mu * cf.mu);

    let field = frame_invariants_field(&s, &s.domain.grid(101, 101)).unwrap();
    let c = field.max_codazzi(1);
    println!("Codazzi maxima {:.2e}", c.iter().fold(0.0f64, |m, x| m.max(*x)));
    println!("normal connection {:.2e}", field.max_abs(&field.normal_connection, 1));
    let r = check_canonical_parameters(&field, CanonicalVariant::StronglyRegular, &Tolerances::default());
    println!("canonical: {} (defect {:.2e})", r.is_canonical, r.max_defect);
}
