/// Errors produced by environment construction, dynamic programming, and
/// rollouts.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A scalar or structural parameter is outside its legal range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Tables passed to an operation do not have the shape the environment
    /// requires.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A rollout reached a (step, state) pair the policy does not cover.
    #[error("policy undefined at step {h}, state {x}")]
    PolicyUndefined { h: usize, x: usize },

    /// A randomized environment constructor exhausted its retry budget
    /// without producing a valid instance.
    #[error("construction failed: {0}")]
    Construction(String),

    /// Fixture I/O failed.
    #[error("fixture io: {0}")]
    Io(#[from] std::io::Error),

    /// Fixture (de)serialization failed.
    #[error("fixture json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
