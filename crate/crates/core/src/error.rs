use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid setting: {0}")]
    InvalidSetting(String),

    #[error("vector length {got} does not match vertex count {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vertex {vertex} out of range (setting has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("reduction condition {condition} does not hold at vertex {vertex}")]
    ConditionViolated {
        condition: &'static str,
        vertex: usize,
    },

    #[error("operation requires every vertex dimension to be 1")]
    NotAllOnes,

    #[error("invalid representation type: {0}")]
    InvalidType(String),

    #[error("marking compensation impossible at original vertex {0}: no loop available")]
    CompensationImpossible(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unidentified singularity class for reduced core {0}")]
    UnidentifiedClass(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
