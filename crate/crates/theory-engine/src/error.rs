use thiserror::Error;

#[derive(Debug, Error)]
pub enum TheoryError {
    #[error("theory does not define class `{0}`")]
    UnknownClass(String),
    #[error("tabulated theory has no entry for sequence {0:?}")]
    UnknownSequence(Vec<String>),
    #[error("distribution invalid: {0}")]
    BadDistribution(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("basis {0} is not orthonormal within tolerance")]
    NonOrthonormalBasis(usize),
    #[error("sequence invalid: {0}")]
    BadSequence(String),
    #[error("malformed theory file: {0}")]
    BadFile(String),
}
