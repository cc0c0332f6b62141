use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("invalid lattice spec: {0}")]
    InvalidSpec(String),
    #[error("accumulator holds no samples")]
    EmptyAccumulator,
    #[error("accumulator shapes differ: {0}")]
    ShapeMismatch(String),
    #[error("boundary invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Theory(#[from] rectcft::Error),
}

pub type Result<T> = std::result::Result<T, SimError>;
