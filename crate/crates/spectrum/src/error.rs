use thiserror::Error;

/// Errors for spectral computations and derived bounds.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Order doubling stopped improving before reaching the target agreement.
    #[error("quadrature did not converge: achieved {achieved:.3e} at order {order} (target {target:.3e})")]
    QuadratureNotConverged { achieved: f64, order: usize, target: f64 },

    /// The requested bound is undefined for these decay parameters.
    #[error("bound infeasible: {0}")]
    Infeasible(String),

    /// An integer quantity (e.g. a multiplicity) overflowed u64.
    #[error("integer overflow computing {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
