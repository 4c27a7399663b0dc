//! Writes a 4-D quad mesh and three 3-D projections of a rotational surface.

use std::collections::BTreeMap;

use minsurf4::catalog;
use minsurf4::io::mesh::write_mesh;

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "mesh_out".into());
    std::fs::create_dir_all(&dir).unwrap();
    let s = catalog::builtin("rotational-explicit", &BTreeMap::new()).unwrap();
    let grid = s.domain.grid(41, 64);
    for p in write_mesh(dir.as_ref(), "rotational", &grid, &s.sample(&grid)).unwrap() {
        println!("{}", p.display());
    }
}
