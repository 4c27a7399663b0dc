//! Quad meshes of sampled charts: a plain-text 4D format and three OBJ
//! projections to R³.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::IoError;
use crate::geom::Vec4;
use crate::grid::Grid2;

/// Vertices and 0-based quads of a sampled chart.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadMesh {
    pub vertices: Vec<Vec4>,
    pub quads: Vec<[usize; 4]>,
    /// True when the last v-column coincided with the first and was merged.
    pub welded: bool,
}

/// Seam tolerance for closing the mesh in v.
pub const SEAM_TOL: f64 = 1e-9;

/// Builds the mesh; the v-seam is welded when the first and last columns
/// agree within [`SEAM_TOL`].
pub fn quad_mesh(grid: &Grid2, points: &[Vec4]) -> Result<QuadMesh, IoError> {
    if grid.nu < 2 || grid.nv < 2 || points.len() != grid.len() {
        return Err(IoError::Invalid("mesh needs at least a 2×2 grid of samples".into()));
    }
    let welded = grid.nv > 2
        && (0..grid.nu).all(|i| (points[grid.index(i, 0)] - points[grid.index(i, grid.nv - 1)]).max_abs() <= SEAM_TOL);
    let cols = if welded { grid.nv - 1 } else { grid.nv };
    let id = |i: usize, j: usize| i * cols + (j % cols);
    let mut vertices = Vec::with_capacity(grid.nu * cols);
    for i in 0..grid.nu {
        for j in 0..cols {
            vertices.push(points[grid.index(i, j)]);
        }
    }
    let mut quads = Vec::new();
    for i in 0..grid.nu - 1 {
        for j in 0..grid.nv - 1 {
            quads.push([id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    Ok(QuadMesh { vertices, quads, welded })
}

impl QuadMesh {
    /// `mesh4` text: counts, one vertex per line, then quads (0-based).
    pub fn to_mesh4(&self) -> String {
        let mut s = String::new();
        writeln!(s, "mesh4 {} {}", self.vertices.len(), self.quads.len()).unwrap();
        for v in &self.vertices {
            writeln!(s, "{} {} {} {}", v.0[0], v.0[1], v.0[2], v.0[3]).unwrap();
        }
        for q in &self.quads {
            writeln!(s, "{} {} {} {}", q[0], q[1], q[2], q[3]).unwrap();
        }
        s
    }

    /// OBJ of the projection keeping coordinates `keep`.
    pub fn to_obj(&self, keep: [usize; 3]) -> String {
        let mut s = String::new();
        writeln!(s, "# projection to x{} x{} x{}", keep[0] + 1, keep[1] + 1, keep[2] + 1).unwrap();
        for v in &self.vertices {
            writeln!(s, "v {} {} {}", v.0[keep[0]], v.0[keep[1]], v.0[keep[2]]).unwrap();
        }
        for q in &self.quads {
            writeln!(s, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1).unwrap();
        }
        s
    }
}

/// Projections written next to the 4D mesh, named by the kept axes.
pub const PROJECTIONS: [[usize; 3]; 3] = [[0, 1, 2], [0, 1, 3], [0, 2, 3]];

/// Writes `<stem>.mesh4` and `<stem>_xyz.obj`, `<stem>_xyw.obj`,
/// `<stem>_xzw.obj`; returns the paths written.
pub fn write_mesh(dir: &Path, stem: &str, grid: &Grid2, points: &[Vec4]) -> Result<Vec<PathBuf>, IoError> {
    let mesh = quad_mesh(grid, points)?;
    let axis = ["x", "y", "z", "w"];
    let mut files = vec![(dir.join(format!("{stem}.mesh4")), mesh.to_mesh4())];
    for keep in PROJECTIONS {
        let tag: String = keep.iter().map(|&k| axis[k]).collect();
        files.push((dir.join(format!("{stem}_{tag}.obj")), mesh.to_obj(keep)));
    }
    for (p, text) in &files {
        std::fs::write(p, text).map_err(|e| IoError::file(p, e))?;
    }
    Ok(files.into_iter().map(|(p, _)| p).collect())
}
