use thiserror::Error;

use crate::solver::SolveReport;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum FemError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported dimension {0} (expected 2 or 3)")]
    UnsupportedDimension(usize),

    #[error("mesh structure: {0}")]
    Structure(String),

    #[error("degenerate geometry: {0}")]
    Geometry(String),

    #[error("ill-conditioned frame (condition number {cond:.3e})")]
    Frame { cond: f64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("solver: {msg} [{report}]")]
    Solver { msg: String, report: SolveReport },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FemError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(FemError::InvalidArgument(msg.into()))
}
