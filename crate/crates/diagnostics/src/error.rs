use thiserror::Error;

/// Errors produced by the audit routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Inconsistent or out-of-range arguments.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// An episode record is missing its value tables. Audits need the full
    /// per-episode `Q`/`V`/width tables, so the run must be produced with
    /// table recording switched on.
    #[error("episode {0} has no recorded tables; rerun with table recording enabled")]
    MissingTables(usize),
    /// An environment query failed (bad policy table, out-of-range state).
    #[error(transparent)]
    Mdp(#[from] mdp_sim::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
