//! Named tolerances shared by the analysis, reconstruction and CLI layers.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TolError {
    #[error("unknown tolerance `{0}`")]
    Unknown(String),
    #[error("tolerance `{name}` must be positive and finite, got {value}")]
    NotPositive { name: String, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub tol_ortho: f64,
    pub tol_rank: f64,
    /// Minimum `W = √(EG − F²)`.
    pub tol_reg: f64,
    /// Residual of the tangent/normal decomposition of second partials.
    pub tol_decomp: f64,
    pub tol_flat: f64,
    pub tol_min: f64,
    pub tol_sc: f64,
    /// Floor on `|μ² − ν²|` and related general-type quantities.
    pub tol_gen: f64,
    /// Relative `|F|/√(EG)` and rotation angle accepted as semi-canonical.
    pub semi_tol: f64,
    /// Separation-of-variables check before reparametrizing.
    pub lemma_tol: f64,
    pub reparam_tol: f64,
    pub admit_tol: f64,
    pub drift_tol: f64,
    /// Largest accepted jump of `μ²`, `ν²` between neighbouring nodes.
    pub jump_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_ortho: 1e-9,
            tol_rank: 1e-12,
            tol_reg: 1e-10,
            tol_decomp: 1e-8,
            tol_flat: 1e-7,
            tol_min: 1e-7,
            tol_sc: 1e-7,
            tol_gen: 1e-10,
            semi_tol: 1e-6,
            lemma_tol: 1e-4,
            reparam_tol: 1e-6,
            admit_tol: 1e-3,
            drift_tol: 1e-5,
            jump_tol: 0.5,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 14] = [
        "tol_ortho",
        "tol_rank",
        "tol_reg",
        "tol_decomp",
        "tol_flat",
        "tol_min",
        "tol_sc",
        "tol_gen",
        "semi_tol",
        "lemma_tol",
        "reparam_tol",
        "admit_tol",
        "drift_tol",
        "jump_tol",
    ];

    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "tol_ortho" => &mut self.tol_ortho,
            "tol_rank" => &mut self.tol_rank,
            "tol_reg" => &mut self.tol_reg,
            "tol_decomp" => &mut self.tol_decomp,
            "tol_flat" => &mut self.tol_flat,
            "tol_min" => &mut self.tol_min,
            "tol_sc" => &mut self.tol_sc,
            "tol_gen" => &mut self.tol_gen,
            "semi_tol" => &mut self.semi_tol,
            "lemma_tol" => &mut self.lemma_tol,
            "reparam_tol" => &mut self.reparam_tol,
            "admit_tol" => &mut self.admit_tol,
            "drift_tol" => &mut self.drift_tol,
            "jump_tol" => &mut self.jump_tol,
            _ => return None,
        })
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        let mut copy = *self;
        copy.slot(name).map(|v| *v)
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<(), TolError> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(TolError::NotPositive { name: name.to_string(), value });
        }
        let slot = self.slot(name).ok_or_else(|| TolError::Unknown(name.to_string()))?;
        *slot = value;
        Ok(())
    }
}
