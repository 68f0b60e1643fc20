use thiserror::Error;

/// Everything that can go wrong while configuring or running the neural
/// learner.
#[derive(Debug, Error)]
pub enum Error {
    /// A configuration value is outside its legal range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Training produced a non-finite quantity.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A failure inside the ridge-regression machinery.
    #[error(transparent)]
    Kernel(#[from] kernel_core::Error),

    /// A failure inside the environment simulator.
    #[error(transparent)]
    Mdp(#[from] mdp_sim::Error),

    /// A failure inside the kernel-side learner (β schedules, configs).
    #[error(transparent)]
    Kovi(#[from] kovi::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
