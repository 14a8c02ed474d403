use thiserror::Error;

/// Errors surfaced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the zero vector has no step decomposition")]
    ZeroVector,

    #[error("index {index} out of range for {len} steps")]
    StepIndexOutOfRange { index: usize, len: usize },

    #[error("invalid box: lower bound exceeds upper bound in coordinate {coord}")]
    InvalidBox { coord: usize },

    #[error("matrix is not symmetric at ({row},{col})")]
    AsymmetricMatrix { row: usize, col: usize },

    #[error("matrix must be {expected}x{expected}, got a {got}-row matrix")]
    MatrixSize { expected: usize, got: usize },

    #[error("indeterminate extended-value subtraction (\u{221e} on the right-hand side)")]
    InfiniteSubtraction,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point {0} is outside the effective domain")]
    OutsideDomain(String),

    #[error("effective domain is empty on the given box")]
    EmptyDomain,

    #[error("malformed document: {0}")]
    Document(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
