use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::net::{Activation, InitScheme};
use crate::train::GdSettings;

/// Largest supported network half-width (`m`; the network has `2m` units).
/// The tangent design stores one `2m·d` row per episode and step, so memory
/// and per-episode cost grow linearly in `m`.
pub const MAX_HALF_WIDTH: usize = 8192;

/// Largest supported embedding dimension for the neural learner. The wide-
/// network analysis is a small-`d` regime and the closed-form limit kernels
/// used for cross-checks are cheapest there.
pub const MAX_EMBED_DIM: usize = 6;

/// Everything that parameterizes one neural optimistic value-iteration run
/// except the environment and the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoviConfig {
    /// Number of episodes `T`.
    pub episodes: usize,
    /// Ridge weight λ; `None` means the default `1 + 1/T`.
    #[serde(default)]
    pub lambda: Option<f64>,
    /// Exploration-bonus multiplier source.
    pub beta: kovi::BetaSource,
    /// First-layer activation.
    pub activation: Activation,
    /// Weight-initialization scheme.
    #[serde(default)]
    pub init: InitScheme,
    /// Network half-width `m` (the network has `2m` mirrored units).
    pub half_width: usize,
    /// Gradient-descent settings for the per-step fits.
    #[serde(default)]
    pub gd: GdSettings,
    /// Keep all features at the initialization and fit the linear model in
    /// that space instead of training the network. This mode is exactly
    /// kernel-based optimistic value iteration under the width-`2m`
    /// empirical tangent kernel.
    #[serde(default)]
    pub frozen_features: bool,
    /// Tie handling in the greedy policy.
    #[serde(default)]
    pub tie_break: kovi::TieBreak,
    /// Keep the full per-episode value/bonus tables in the run record.
    #[serde(default)]
    pub record_tables: bool,
}

impl NoviConfig {
    /// A run with β = 1, default λ, canonical init, default GD settings.
    pub fn new(episodes: usize, activation: Activation, half_width: usize) -> Self {
        Self {
            episodes,
            lambda: None,
            beta: kovi::BetaSource::Constant { value: 1.0 },
            activation,
            init: InitScheme::Canonical,
            half_width,
            gd: GdSettings::default(),
            frozen_features: false,
            tie_break: kovi::TieBreak::LowestIndex,
            record_tables: false,
        }
    }

    pub fn with_beta(mut self, beta: kovi::BetaSource) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_constant_beta(self, value: f64) -> Self {
        self.with_beta(kovi::BetaSource::Constant { value })
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn with_init(mut self, init: InitScheme) -> Self {
        self.init = init;
        self
    }

    pub fn with_gd(mut self, gd: GdSettings) -> Self {
        self.gd = gd;
        self
    }

    pub fn with_frozen_features(mut self) -> Self {
        self.frozen_features = true;
        self
    }

    pub fn with_recorded_tables(mut self) -> Self {
        self.record_tables = true;
        self
    }

    /// The ridge weight actually used: the explicit value, or `1 + 1/T`.
    pub fn resolved_lambda(&self) -> f64 {
        self.lambda
            .unwrap_or_else(|| 1.0 + 1.0 / self.episodes.max(1) as f64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.episodes == 0 {
            return Err(Error::InvalidParameter(
                "episodes must be at least 1".into(),
            ));
        }
        if self.half_width == 0 || self.half_width > MAX_HALF_WIDTH {
            return Err(Error::InvalidParameter(format!(
                "network half-width must be in 1..={MAX_HALF_WIDTH}, got {}",
                self.half_width
            )));
        }
        if let Some(l) = self.lambda {
            if !l.is_finite() || l <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "lambda must be a positive finite number, got {l}"
                )));
            }
        }
        if let kovi::BetaSource::Constant { value } = &self.beta {
            if !value.is_finite() || *value < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "constant beta must be finite and nonnegative, got {value}"
                )));
            }
        }
        self.gd.validate()
    }
}
