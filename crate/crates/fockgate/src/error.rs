use thiserror::Error;

/// Errors produced by state construction, operator algebra, and experiment
/// pipelines.
#[derive(Debug, Error)]
pub enum Error {
    /// Vector/matrix dimensions do not match the operation's requirements.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The Fock-basis truncation cannot represent the requested state or
    /// operator within the leakage tolerance.
    #[error("cutoff too small: {0}")]
    CutoffTooSmall(String),

    /// An iterative numeric procedure failed to reach its tolerance.
    #[error("numeric convergence failure: {0}")]
    NumericConvergence(String),

    /// A physical parameter lies outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
