use thiserror::Error;

/// Everything that can go wrong while configuring or running the learner.
#[derive(Debug, Error)]
pub enum Error {
    /// A configuration value is outside its legal range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A failure inside the ridge-regression machinery.
    #[error(transparent)]
    Kernel(#[from] kernel_core::Error),

    /// A failure inside the environment simulator.
    #[error(transparent)]
    Mdp(#[from] mdp_sim::Error),

    /// A failure while evaluating a spectral bonus schedule.
    #[error(transparent)]
    Spectrum(#[from] spectrum::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
