use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid rank {rank} for type {label}")]
    InvalidRank { label: String, rank: usize },

    #[error("unknown root system type `{0}`")]
    UnknownType(String),

    #[error("roots {0} and {1} are proportional")]
    ProportionalRoots(usize, usize),

    #[error("({0}, {1}) is not an induced orthogonal pair")]
    NotAnIop(usize, usize),

    #[error("operation requires {expected}, got {got}")]
    WrongSystem { expected: String, got: String },

    #[error("involution rejected: {reason} (witness: {witness})")]
    InvolutionRejected { reason: String, witness: String },

    #[error("invalid real form spec: {0}")]
    InvalidSpec(String),

    #[error("vector is outside the span of the source single roots")]
    OutsideSpan,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
