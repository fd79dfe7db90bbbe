use std::io;

use thiserror::Error;

use crate::lp::ConstraintId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("code dimension {k} exceeds the enumeration limit {limit}")]
    DimensionTooLarge { k: usize, limit: usize },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown code `{0}`")]
    UnknownCode(String),
    #[error("unknown decoder preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid rate {0}; must lie in (0, 1]")]
    InvalidRate(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("odd set has even size {0}")]
    EvenSet(usize),
    #[error("row {row} has degree {degree}, above the limit {limit}")]
    DegreeTooLarge { row: usize, degree: usize, limit: usize },
    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),
    #[error("unknown constraint id {0:?}")]
    UnknownConstraintId(ConstraintId),
    #[error("constraint {0:?} is always active and may not be pruned")]
    RemovalForbidden(ConstraintId),
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("simplex numerical failure: {0}")]
    NumericalFailure(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
