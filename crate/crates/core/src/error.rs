use thiserror::Error;

/// Malformed input: a missing table entry, a size mismatch, an out-of-range
/// index. Distinct from a *mathematical* failure, which is reported as a
/// violation witness, never as an error.
#[derive(Debug, Clone, Error)]
#[error("structural error: {0}")]
pub struct StructureError(pub String);

impl StructureError {
    pub fn new(msg: impl Into<String>) -> Self {
        StructureError(msg.into())
    }
}

/// Errors from the exact point calculus.
#[derive(Debug, Clone, Error)]
pub enum PointError {
    #[error("coordinates must be nonnegative and sum to 1: {0}")]
    BadCoordinates(String),
    #[error("operation needs a contraction on the facial set")]
    MissingContraction,
    #[error("operation needs an augmentation on the facial set")]
    MissingAugmentation,
    #[error("stage {0} exceeds the truncation level {1}")]
    StageOverflow(usize, usize),
    #[error("parameter {0} outside [0,1]")]
    ParameterRange(String),
    #[error("rewriting revisited a representative; quotient relation is not confluent here: {0}")]
    RewriteCycle(String),
    #[error("{0}")]
    Structure(String),
}
