//! Residuals of the natural equations under grid refinement.

use minsurf4::canonical::frame_invariants_field;
use minsurf4::catalog;
use minsurf4::natural::{pde_residuals_kkappa, pde_residuals_munu};

fn main() {
    let s = catalog::weierstrass_default();
    for n in [51, 101] {
        let field = frame_invariants_field(&s, &s.domain.grid(n, n)).unwrap();
        let a = pde_residuals_munu(&field.mu, &field.nu).unwrap();
        let b = pde_residuals_kkappa(&field.gauss, &field.kappa).unwrap();
        println!("{n}×{n}: (μ,ν) form {:.3e}  (K,κ) form {:.3e}", a.max_abs(), b.max_abs());
    }
}
