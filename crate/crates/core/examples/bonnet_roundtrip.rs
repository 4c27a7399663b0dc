//! Analyze a surface, rebuild it from (μ, ν) alone and compare.

use minsurf4::align::aligned_distance;
use minsurf4::bonnet::reconstruct_from_invariants;
use minsurf4::canonical::frame_invariants_field;
use minsurf4::catalog;
use minsurf4::tol::Tolerances;

fn main() {
    let s = catalog::weierstrass_default();
    let grid = s.domain.grid(101, 101);
    let field = frame_invariants_field(&s, &grid).unwrap();
    let origin = s.position(grid.u0, grid.v0);
    let r = reconstruct_from_invariants(&field.mu, &field.nu, *field.frame(0, 0), origin, &Tolerances::default()).unwrap();
    print!("{}", r.summary());
    let original = s.sample(&grid);
    println!("direct error {:.3e}", r.points.iter().zip(&original).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max));
    println!("aligned error {:.3e}", aligned_distance(&r.points, &original).unwrap());
}
