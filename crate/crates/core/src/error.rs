//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("arrow-ideal powers do not vanish by the cap ({cap}): not admissible within cap")]
    NotAdmissible { cap: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch between operands")]
    FieldMismatch,

    #[error("subspace is not a two-sided ideal: {0}")]
    NotAnIdeal(String),

    #[error("module is not recognized as projective: {0}")]
    NotProjective(String),

    #[error("maps do not commute: {0}")]
    NotCommuting(String),

    #[error("invalid selector: {0}")]
    InvalidSelector(String),
}

pub type Result<T> = std::result::Result<T, Error>;
