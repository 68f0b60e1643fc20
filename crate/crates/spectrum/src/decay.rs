use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Eigenvalue-decay classes of a kernel's Mercer spectrum (eigenvalues sorted
/// in decreasing order, counted with multiplicity).
///
/// * `Finite` — at most `count` nonzero eigenvalues (finite-rank kernels,
///   e.g. linear or squared-activation tangent kernels);
/// * `Exponential` — `ρ_m ≤ c1 · exp(−c2 · m^γ)` (e.g. squared-exponential
///   kernels, `γ = 1/d`);
/// * `Polynomial` — `ρ_m ≤ c1 · m^{−γ}` with eigenfunction sup-norm growth
///   `‖ψ_m‖_∞ ≤ cpsi · m^τ`, `τ ∈ [0, ½)`; carries the ambient dimension
///   `d`, which the growth bounds need (e.g. Matérn kernels,
///   `γ = 1 + 2ν/d`, `τ = 0`).
///
/// # Example
///
/// ```
/// use spectrum::DecayClass;
/// let fin = DecayClass::finite(10).unwrap();
/// let se = DecayClass::squared_exponential(4).unwrap();
/// let mat = DecayClass::matern(3, 2).unwrap(); // ν = 3/2 in d = 2
/// assert!(matches!(fin, DecayClass::Finite { count: 10 }));
/// assert!(matches!(se, DecayClass::Exponential { .. }));
/// assert!(matches!(mat, DecayClass::Polynomial { .. }));
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecayClass {
    Finite {
        count: u64,
    },
    Exponential {
        gamma: f64,
        #[serde(default = "one")]
        c1: f64,
        #[serde(default = "one")]
        c2: f64,
    },
    Polynomial {
        gamma: f64,
        d: usize,
        #[serde(default)]
        tau: f64,
        #[serde(default = "one")]
        c1: f64,
        #[serde(default = "one")]
        cpsi: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl DecayClass {
    /// Finite spectrum with `count ≥ 1` nonzero eigenvalues.
    pub fn finite(count: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidParameter("finite spectrum needs at least one eigenvalue".into()));
        }
        Ok(Self::Finite { count })
    }

    /// Exponential decay with exponent `γ > 0` and unit constants.
    pub fn exponential(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "exponential decay needs γ > 0, got {gamma}"
            )));
        }
        Ok(Self::Exponential { gamma, c1: 1.0, c2: 1.0 })
    }

    /// Polynomial decay with exponent `γ > 1` in ambient dimension `d`,
    /// eigenfunction growth `τ = 0`, unit constants.
    pub fn polynomial(gamma: f64, d: usize) -> Result<Self> {
        Self::polynomial_with_tau(gamma, d, 0.0)
    }

    /// Polynomial decay with explicit eigenfunction growth `τ ∈ [0, ½)`.
    pub fn polynomial_with_tau(gamma: f64, d: usize, tau: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "polynomial decay needs γ > 1, got {gamma}"
            )));
        }
        if !(0.0..0.5).contains(&tau) {
            return Err(Error::InvalidParameter(format!(
                "eigenfunction growth must lie in [0, ½), got {tau}"
            )));
        }
        if d == 0 {
            return Err(Error::InvalidParameter("ambient dimension must be positive".into()));
        }
        Ok(Self::Polynomial { gamma, d, tau, c1: 1.0, cpsi: 1.0 })
    }

    /// Known member: squared-exponential kernel on inputs in `R^d`
    /// (`γ = 1/d`).
    pub fn squared_exponential(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("ambient dimension must be positive".into()));
        }
        Self::exponential(1.0 / d as f64)
    }

    /// Known member: Matérn kernel with smoothness `ν = nu_times_two / 2` on
    /// inputs in `R^d` (`γ = 1 + 2ν/d`, `τ = 0`).
    pub fn matern(nu_times_two: u32, d: usize) -> Result<Self> {
        if !matches!(nu_times_two, 1 | 3 | 5) {
            return Err(Error::InvalidParameter(format!(
                "matern smoothness 2ν must be 1, 3 or 5, got {nu_times_two}"
            )));
        }
        Self::polynomial(1.0 + nu_times_two as f64 / d as f64, d)
    }

    /// Known member: rectifier-power tangent kernel on `S^{d−1}`
    /// (`γ = 1 + (1+2s)/(d−1)`, `τ = (d−2)/(2d+4s)`).
    pub fn relu_tangent(s: u32, d: usize) -> Result<Self> {
        if d < 3 {
            return Err(Error::InvalidParameter(
                "rectifier tangent decay constants assume d ≥ 3".into(),
            ));
        }
        let gamma = 1.0 + (1.0 + 2.0 * s as f64) / (d as f64 - 1.0);
        let tau = (d as f64 - 2.0) / (2.0 * d as f64 + 4.0 * s as f64);
        Self::polynomial_with_tau(gamma, d, tau)
    }
}
