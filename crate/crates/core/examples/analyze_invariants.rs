//! Invariants and point classes of a few built-in charts.

use std::collections::BTreeMap;

use minsurf4::analysis::{analyze_grid, PointClass};
use minsurf4::catalog;
use minsurf4::tol::Tolerances;

fn main() {
    let tol = Tolerances::default();
    for name in ["plane", "clifford", "holomorphic", "weierstrass"] {
        let s = catalog::builtin(name, &BTreeMap::new()).unwrap();
        let grid = s.domain.grid(41, 41);
        let a = analyze_grid(&s, &grid, &tol).unwrap();
        let counts: Vec<String> = PointClass::ALL.iter().map(|c| format!("{}={}", c.name(), a.histogram.count(*c))).collect();
        println!("{name:12} {}", counts.join(" "));
        println!(
            "{:12} max|κ²−k| {:.3e}  min(K²−κ²) {:.3e}  max K {:.3e}",
            "",
            a.max_by(|r| r.inv.minimality_defect().abs()),
            a.min_by(|r| r.inv.conformality_defect()),
            a.max_by(|r| r.inv.gauss)
        );
    }
}
