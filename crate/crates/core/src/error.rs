//! Error types shared by the lattice, weight and certificate layers.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("duplicate generator: positions {first} and {second} hold the same vector")]
    DuplicateGenerator { first: usize, second: usize },
    #[error("non-integer matrix entry `{0}`")]
    NonIntegerEntry(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {k} out of range for n = {n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("coordinates do not sum to zero")]
    NonZeroSum,
    #[error("shift precondition violated: |y_i - y_j| < 2")]
    ShiftGapTooSmall,
}

#[derive(Debug, Error)]
pub enum ForgeError {
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("highest weight is in the positive list ({0}); every subset is saturated")]
    SaturatedCase(String),
    #[error("no special point exists for this weight: {0}")]
    NotFound(String),
    #[error("certificate is not over a fundamental weight system")]
    NotFundamental,
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("routing failed: {0}")]
    Routing(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl ParseError {
    pub fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError::Line {
            line,
            message: message.into(),
        }
    }
}
