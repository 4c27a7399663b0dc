//! Spec and config files, CSV tables and mesh export.

pub mod mesh;
pub mod spec;
pub mod table;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Invalid(String),
}

impl IoError {
    pub(crate) fn parse(path: impl Into<String>, msg: impl Into<String>) -> Self {
        IoError::Parse { path: path.into(), msg: msg.into() }
    }

    pub(crate) fn file(path: &std::path::Path, source: std::io::Error) -> Self {
        IoError::File { path: path.display().to_string(), source }
    }
}
