//! Geodesics launched along the canonical tangents and their bisector.

use minsurf4::canonical::geometric_frame;
use minsurf4::catalog;
use minsurf4::geodesic::geodesic_trace;

fn main() {
    let s = catalog::weierstrass_default();
    let (u, v) = (0.8, 0.7);
    let cf = geometric_frame(&s, u, v).unwrap();
    let f = cf.frame;
    let bisector = (f.x + f.y) / 2f64.sqrt();
    for (name, dir, sign) in [("x", f.x, 1.0), ("y", f.y, -1.0)] {
        let tr = geodesic_trace(&s, (u, v), dir, 0.5).unwrap();
        let dev = (tr.accel[0] - f.n1 * (sign * cf.nu)).norm();
        println!("along {name}: |t′ ∓ νn₁| = {dev:.3e} after {} steps", tr.len() - 1);
    }
    let tr = geodesic_trace(&s, (u, v), bisector, 0.5).unwrap();
    println!("bisector: t′·n₂ = {:.8}, μ = {:.8}", tr.accel[0].dot(&f.n2), cf.mu);
}
