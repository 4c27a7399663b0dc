//! Fixed-size linear algebra in R⁴.
//!
//! Everything downstream works with [`Vec4`] for points and vectors and
//! [`Frame4`] for ordered orthonormal frames `{x, y, n₁, n₂}`.

use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use nalgebra::Matrix4;
use thiserror::Error;

/// Orthonormality tolerance for frames.
pub const TOL_ORTHO: f64 = 1e-9;
/// Minimum pivot norm accepted by [`gram_schmidt`].
pub const TOL_RANK: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("rank deficient input: pivot {index} has norm {norm:e}")]
    RankDeficient { index: usize, norm: f64 },
    #[error("non-finite vector component")]
    NonFinite,
}

/// A vector (or point) in Euclidean R⁴.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub const ZERO: Vec4 = Vec4([0.0; 4]);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Vec4([a, b, c, d])
    }

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_new(c: [f64; 4]) -> Result<Self, GeomError> {
        if c.iter().all(|x| x.is_finite()) {
            Ok(Vec4(c))
        } else {
            Err(GeomError::NonFinite)
        }
    }

    /// The `i`-th standard basis vector.
    pub fn unit(i: usize) -> Self {
        let mut c = [0.0; 4];
        c[i] = 1.0;
        Vec4(c)
    }

    pub fn dot(&self, other: &Vec4) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn normalized(&self) -> Option<Vec4> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| *self / n)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn components(&self) -> [f64; 4] {
        self.0
    }

    /// Component of `self` orthogonal to the unit vector `e`.
    pub fn reject(&self, e: &Vec4) -> Vec4 {
        *self - *e * self.dot(e)
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, o: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, o: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4(self.0.map(|x| -x))
    }
}

impl Mul<f64> for Vec4 {
    type Output = Vec4;
    fn mul(self, s: f64) -> Vec4 {
        Vec4(self.0.map(|x| x * s))
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, v: Vec4) -> Vec4 {
        v * self
    }
}

impl Div<f64> for Vec4 {
    type Output = Vec4;
    fn div(self, s: f64) -> Vec4 {
        Vec4(self.0.map(|x| x / s))
    }
}

impl AddAssign for Vec4 {
    fn add_assign(&mut self, o: Vec4) {
        *self = *self + o;
    }
}

impl SubAssign for Vec4 {
    fn sub_assign(&mut self, o: Vec4) {
        *self = *self - o;
    }
}

impl std::iter::Sum for Vec4 {
    fn sum<I: Iterator<Item = Vec4>>(iter: I) -> Vec4 {
        iter.fold(Vec4::ZERO, |a, b| a + b)
    }
}

/// Euclidean inner product.
pub fn dot(u: &Vec4, v: &Vec4) -> f64 {
    u.dot(v)
}

/// Ordered frame `{x, y, n₁, n₂}`: two tangent and two normal vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame4 {
    pub x: Vec4,
    pub y: Vec4,
    pub n1: Vec4,
    pub n2: Vec4,
}

impl Frame4 {
    pub fn new(x: Vec4, y: Vec4, n1: Vec4, n2: Vec4) -> Self {
        Frame4 { x, y, n1, n2 }
    }

    pub fn standard() -> Self {
        Frame4::new(Vec4::unit(0), Vec4::unit(1), Vec4::unit(2), Vec4::unit(3))
    }

    pub fn vectors(&self) -> [Vec4; 4] {
        [self.x, self.y, self.n1, self.n2]
    }

    pub fn from_vectors(v: [Vec4; 4]) -> Self {
        Frame4::new(v[0], v[1], v[2], v[3])
    }

    /// Rows of the returned matrix are the frame vectors.
    pub fn to_matrix(&self) -> Matrix4<f64> {
        let v = self.vectors();
        Matrix4::from_fn(|r, c| v[r][c])
    }

    pub fn from_matrix(m: &Matrix4<f64>) -> Self {
        Frame4::from_vectors(std::array::from_fn(|r| {
            Vec4(std::array::from_fn(|c| m[(r, c)]))
        }))
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let v = self.vectors();
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in i..4 {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v[i].dot(&v[j]) - target).abs());
            }
        }
        worst
    }

    /// Orthonormal and positively oriented within `tol`.
    pub fn is_valid(&self, tol: f64) -> bool {
        self.orthonormality_defect() < tol && (orientation_det(self) - 1.0).abs() < tol
    }

    /// Applies a linear map to every frame vector (`v ↦ R v`).
    pub fn transformed(&self, r: &Matrix4<f64>) -> Frame4 {
        let map = |v: Vec4| apply(r, &v);
        Frame4::new(map(self.x), map(self.y), map(self.n1), map(self.n2))
    }

    /// Largest component difference between two frames.
    pub fn distance(&self, other: &Frame4) -> f64 {
        self.vectors()
            .iter()
            .zip(other.vectors().iter())
            .map(|(a, b)| (*a - *b).max_abs())
            .fold(0.0, f64::max)
    }
}

/// Matrix-vector product `R v`.
pub fn apply(r: &Matrix4<f64>, v: &Vec4) -> Vec4 {
    Vec4(std::array::from_fn(|i| (0..4).map(|j| r[(i, j)] * v[j]).sum()))
}

/// Determinant of a 4×4 matrix given by rows (partial-pivot elimination).
pub fn det4(rows: [[f64; 4]; 4]) -> f64 {
    let mut a = rows;
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..4 {
            let factor = a[r][col] / a[col][col];
            for c in col..4 {
                a[r][c] -= factor * a[col][c];
            }
        }
    }
    det
}

/// `det[x y n₁ n₂]` with the frame vectors as rows.
pub fn orientation_det(f: &Frame4) -> f64 {
    det4(f.vectors().map(|v| v.0))
}

/// Modified Gram–Schmidt with one re-orthogonalization pass.
///
/// The first output is the normalized first input; each output spans the
/// same flag as the corresponding prefix of the input.
pub fn gram_schmidt(vectors: &[Vec4]) -> Result<Vec<Vec4>, GeomError> {
    gram_schmidt_with_tol(vectors, TOL_RANK)
}

pub fn gram_schmidt_with_tol(vectors: &[Vec4], tol_rank: f64) -> Result<Vec<Vec4>, GeomError> {
    let mut out: Vec<Vec4> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        if !v.is_finite() {
            return Err(GeomError::NonFinite);
        }
        let mut w = *v;
        for _ in 0..2 {
            for e in &out {
                w = w.reject(e);
            }
        }
        let norm = w.norm();
        if norm <= tol_rank {
            return Err(GeomError::RankDeficient { index, norm });
        }
        out.push(w / norm);
    }
    Ok(out)
}

/// Completes `[a, b, c]` with the unit vector making `det[a b c d] = +1`
/// (generalized cross product of three vectors in R⁴).
pub fn cross3(a: &Vec4, b: &Vec4, c: &Vec4) -> Vec4 {
    // d_i = (-1)^{i+3} * minor obtained by deleting column i
    let rows = [a.0, b.0, c.0];
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&k| k != skip).collect();
        let m = |r: usize, k: usize| rows[r][cols[k]];
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    };
    Vec4(std::array::from_fn(|i| {
        let sign = if (i + 3) % 2 == 0 { 1.0 } else { -1.0 };
        sign * minor(i)
    }))
}
