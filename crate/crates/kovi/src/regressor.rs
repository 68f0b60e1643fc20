use kernel_core::{AppendStats, DataBlock, Kernel, PrimalRidge};
use nalgebra::DVector;

use crate::config::Engine;
use crate::error::{Error, Result};

/// Largest feature dimension for which [`Engine::Auto`] picks the primal
/// representation. Beyond this, maintaining the `p × p` design factor costs
/// more than the kernel form for typical run lengths.
pub const PRIMAL_DIM_LIMIT: usize = 512;

/// A fitted ridge solution, in whichever representation the engine keeps.
pub(crate) enum Weights {
    /// Kernel-space coefficients `α = (K + λI)⁻¹ y`.
    Alpha(Vec<f64>),
    /// Feature-space weights `w = Λ⁻¹ Φᵀ y` with `Λ = λI + ΦᵀΦ`.
    Linear(DVector<f64>),
}

/// One per-step regularized least-squares state, unifying the dual
/// (kernel-matrix) and primal (feature-space) engines behind the handful of
/// operations the backward sweep needs. The two are algebraically identical:
/// identical predictions, identical bonuses, identical information gain.
#[derive(Debug)]
pub(crate) enum Regressor {
    Dual(DataBlock),
    Primal { ridge: PrimalRidge, kernel: Kernel },
}

impl Regressor {
    /// Build an empty regressor. `probe` is any point of the input space; its
    /// feature image fixes the primal dimension when the kernel leaves the
    /// dimension implicit (identity feature maps).
    pub(crate) fn build(kernel: &Kernel, engine: Engine, lambda: f64, probe: &[f64]) -> Result<Self> {
        let feat_dim = kernel.features(probe).map(|phi| phi.len());
        let use_primal = match engine {
            Engine::Dual => false,
            Engine::Primal => {
                if feat_dim.is_none() {
                    return Err(Error::InvalidParameter(format!(
                        "kernel '{}' has no explicit feature map; the primal engine needs one",
                        kernel.name()
                    )));
                }
                true
            }
            Engine::Auto => feat_dim.is_some_and(|p| p <= PRIMAL_DIM_LIMIT),
        };
        Ok(if use_primal {
            Self::Primal {
                ridge: PrimalRidge::new(feat_dim.unwrap(), lambda)?,
                kernel: kernel.clone(),
            }
        } else {
            Self::Dual(DataBlock::new(kernel.clone(), lambda)?)
        })
    }

    fn phi(kernel: &Kernel, z: &[f64]) -> Vec<f64> {
        kernel
            .features(z)
            .expect("primal regressor exists only for kernels with a feature map")
    }

    /// Absorb one input point; targets are supplied later, at fit time.
    pub(crate) fn append(&mut self, z: &[f64]) -> Result<AppendStats> {
        match self {
            Self::Dual(block) => Ok(block.append(z)?),
            Self::Primal { ridge, kernel } => {
                let phi = Self::phi(kernel, z);
                let (pre_bonus_sq, info_gain_increment) = ridge.append(&phi);
                Ok(AppendStats {
                    index: ridge.len() - 1,
                    pre_bonus_sq,
                    post_bonus_sq: pre_bonus_sq / (1.0 + pre_bonus_sq),
                    info_gain_increment,
                    jitter: 0.0,
                })
            }
        }
    }

    /// Solve the ridge problem for the given targets (one per stored point).
    pub(crate) fn fit(&self, targets: &[f64]) -> Weights {
        match self {
            Self::Dual(block) => Weights::Alpha(block.solve(targets)),
            Self::Primal { ridge, .. } => Weights::Linear(ridge.weights(targets)),
        }
    }

    /// Posterior-mean prediction at `z` under previously fitted weights.
    pub(crate) fn value(&self, weights: &Weights, z: &[f64]) -> f64 {
        match (self, weights) {
            (Self::Dual(block), Weights::Alpha(alpha)) => block.predict(alpha, z),
            (Self::Primal { ridge, kernel }, Weights::Linear(w)) => {
                ridge.predict(w, &Self::phi(kernel, z))
            }
            _ => unreachable!("weights fitted by a different engine"),
        }
    }

    /// Uncertainty width `b(z)` at `z` (without the β multiplier).
    pub(crate) fn bonus(&self, z: &[f64]) -> f64 {
        match self {
            Self::Dual(block) => block.bonus(z),
            Self::Primal { ridge, kernel } => ridge.bonus(&Self::phi(kernel, z)),
        }
    }

    /// Cumulative information gain of the stored design.
    pub(crate) fn info_gain(&self) -> f64 {
        match self {
            Self::Dual(block) => block.info_gain(),
            Self::Primal { ridge, .. } => ridge.info_gain(),
        }
    }

    /// Number of stored points.
    pub(crate) fn len(&self) -> usize {
        match self {
            Self::Dual(block) => block.len(),
            Self::Primal { ridge, .. } => ridge.len(),
        }
    }

    pub(crate) fn is_primal(&self) -> bool {
        matches!(self, Self::Primal { .. })
    }
}
