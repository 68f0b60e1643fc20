use thiserror::Error;

/// Exit code for configuration problems: unreadable or malformed config
/// files, out-of-range values, unknown kernels.
pub const EXIT_CONFIG: i32 = 2;
/// Exit code for numerical failures: diverged training, broken factorizations.
pub const EXIT_NUMERICAL: i32 = 3;
/// Exit code for violated structural invariants found by `validate`.
pub const EXIT_INVARIANT: i32 = 4;

/// Command-level error with a defined process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// The configuration could not be read, parsed, or validated.
    #[error("config error: {0}")]
    Config(String),
    /// A computation produced non-finite numbers or lost positive
    /// definiteness.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// A structural identity that must hold to rounding noise did not.
    #[error("invariant violation: {0}")]
    Invariant(String),
    /// Result files could not be written.
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    /// The process exit code this error maps to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => EXIT_CONFIG,
            Self::Numerical(_) => EXIT_NUMERICAL,
            Self::Invariant(_) => EXIT_INVARIANT,
            Self::Output(_) => 1,
        }
    }
}

impl From<kernel_core::Error> for CliError {
    fn from(e: kernel_core::Error) -> Self {
        match e {
            kernel_core::Error::InvalidParameter(_) => Self::Config(e.to_string()),
            kernel_core::Error::DimensionMismatch { .. }
            | kernel_core::Error::IllConditioned { .. } => Self::Numerical(e.to_string()),
        }
    }
}

impl From<mdp_sim::Error> for CliError {
    fn from(e: mdp_sim::Error) -> Self {
        match e {
            mdp_sim::Error::PolicyUndefined { .. } => Self::Numerical(e.to_string()),
            mdp_sim::Error::Io(_) => Self::Output(e.to_string()),
            _ => Self::Config(e.to_string()),
        }
    }
}

impl From<spectrum::Error> for CliError {
    fn from(e: spectrum::Error) -> Self {
        match e {
            spectrum::Error::QuadratureNotConverged { .. } => Self::Numerical(e.to_string()),
            _ => Self::Config(e.to_string()),
        }
    }
}

impl From<kovi::Error> for CliError {
    fn from(e: kovi::Error) -> Self {
        match e {
            kovi::Error::InvalidParameter(_) => Self::Config(e.to_string()),
            kovi::Error::Kernel(inner) => inner.into(),
            kovi::Error::Mdp(inner) => inner.into(),
            kovi::Error::Spectrum(inner) => inner.into(),
        }
    }
}

impl From<novi::Error> for CliError {
    fn from(e: novi::Error) -> Self {
        match e {
            novi::Error::InvalidParameter(_) => Self::Config(e.to_string()),
            novi::Error::Numerical(_) => Self::Numerical(e.to_string()),
            novi::Error::Kernel(inner) => inner.into(),
            novi::Error::Mdp(inner) => inner.into(),
            novi::Error::Kovi(inner) => inner.into(),
        }
    }
}

impl From<diagnostics::Error> for CliError {
    fn from(e: diagnostics::Error) -> Self {
        match e {
            diagnostics::Error::Mdp(inner) => inner.into(),
            _ => Self::Config(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Config(format!("json: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Output(format!("csv: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(CliError::Config("x".into()).exit_code(), 2);
        assert_eq!(CliError::Numerical("x".into()).exit_code(), 3);
        assert_eq!(CliError::Invariant("x".into()).exit_code(), 4);
        assert_eq!(CliError::Output("x".into()).exit_code(), 1);
    }

    #[test]
    fn library_errors_map_to_the_right_codes() {
        let diverged: CliError = novi::Error::Numerical("loss exploded".into()).into();
        assert_eq!(diverged.exit_code(), EXIT_NUMERICAL);

        let bad_cfg: CliError = kovi::Error::InvalidParameter("episodes".into()).into();
        assert_eq!(bad_cfg.exit_code(), EXIT_CONFIG);

        let chol: CliError = kernel_core::Error::IllConditioned { pivot: -1.0, max_jitter: 1e-6 }.into();
        assert_eq!(chol.exit_code(), EXIT_NUMERICAL);

        let env: CliError = mdp_sim::Error::InvalidParameter("states".into()).into();
        assert_eq!(env.exit_code(), EXIT_CONFIG);
    }
}
