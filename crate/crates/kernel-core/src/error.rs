use thiserror::Error;

/// Errors produced by kernel-ridge data structures.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated its domain (e.g. a non-positive ridge).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two vectors that must share a dimension did not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A Cholesky pivot stayed non-positive even after the jitter ladder.
    ///
    /// `pivot` is the offending value of `k(z,z) + λ − ‖l‖²` and
    /// `max_jitter` the largest diagonal jitter that was attempted.
    #[error(
        "matrix not positive definite: pivot {pivot:.3e} after jitter up to {max_jitter:.3e}"
    )]
    IllConditioned { pivot: f64, max_jitter: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
