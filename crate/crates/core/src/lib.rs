//! Invariants, canonical frames, natural equations and moving-frame
//! reconstruction for minimal surfaces in R⁴.

pub mod align;
pub mod analysis;
pub mod bonnet;
pub mod canonical;
pub mod catalog;
pub mod cli;
pub mod frenet;
pub mod geodesic;
pub mod geom;
pub mod io;
pub mod natural;
pub mod grid;
pub mod rotational;
pub mod stencil;
pub mod surface;
pub mod tol;

pub use geom::{Frame4, Vec4};
pub use grid::{Grid1, Grid2, InteriorField, ScalarField, ScalarProfile};
pub use surface::{Domain, ParametricSurface, Partials};
