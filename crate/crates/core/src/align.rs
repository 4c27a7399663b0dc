//! Optimal rigid alignment of point clouds in R⁴.

use nalgebra::{Matrix4, Vector4};

use crate::geom::{apply, Vec4};

/// Proper rotation `r` and translation `t` minimizing `Σ|r pᵢ + t − qᵢ|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion {
    pub rotation: Matrix4<f64>,
    pub translation: Vec4,
}

impl RigidMotion {
    pub fn apply(&self, p: &Vec4) -> Vec4 {
        apply(&self.rotation, p) + self.translation
    }
}

fn centroid(pts: &[Vec4]) -> Vec4 {
    pts.iter().fold(Vec4::ZERO, |a, p| a + *p) * (1.0 / pts.len() as f64)
}

/// Kabsch alignment of `from` onto `to` (equal lengths, at least 5 points).
pub fn kabsch(from: &[Vec4], to: &[Vec4]) -> Option<RigidMotion> {
    if from.len() != to.len() || from.len() < 5 {
        return None;
    }
    let (cp, cq) = (centroid(from), centroid(to));
    let mut h = Matrix4::zeros();
    for (p, q) in from.iter().zip(to) {
        let a = Vector4::from((*p - cp).0);
        let b = Vector4::from((*q - cq).0);
        h += a * b.transpose();
    }
    let svd = h.svd(true, true);
    let (u, vt) = (svd.u?, svd.v_t?);
    let mut d = Matrix4::identity();
    if (vt.transpose() * u.transpose()).determinant() < 0.0 {
        d[(3, 3)] = -1.0;
    }
    let rotation = vt.transpose() * d * u.transpose();
    let translation = cq - apply(&rotation, &cp);
    Some(RigidMotion { rotation, translation })
}

/// Largest pointwise distance after optimal proper rigid alignment.
pub fn aligned_distance(from: &[Vec4], to: &[Vec4]) -> Option<f64> {
    let m = kabsch(from, to)?;
    Some(from.iter().zip(to).map(|(p, q)| (m.apply(p) - *q).norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_rotation() {
        let pts: Vec<Vec4> = (0..20).map(|k| {
            let t = k as f64 * 0.37;
            Vec4::new(t.sin(), (2.0 * t).cos(), t * 0.1, (t * 1.3).sin() * t)
        }).collect();
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        #[rustfmt::skip]
        let r = Matrix4::new(c, -s, 0.0, 0.0, s, c, 0.0, 0.0, 0.0, 0.0, c, s, 0.0, 0.0, -s, c);
        let moved: Vec<Vec4> = pts.iter().map(|p| apply(&r, p) + Vec4::new(1.0, 2.0, 3.0, 4.0)).collect();
        assert!(aligned_distance(&pts, &moved).unwrap() < 1e-12);
    }
}
