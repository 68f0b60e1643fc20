use serde::{Deserialize, Serialize};
use spectrum::{beta_schedule, DecayClass};

use crate::error::{Error, Result};

/// Which ridge-regression representation the learner keeps.
///
/// Both produce identical values and bonuses (up to floating-point noise);
/// they differ only in cost. The dual form works for any kernel and scales
/// with the number of stored transitions, the primal form needs an explicit
/// feature map and scales with its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// Primal when the kernel has a feature map of dimension at most
    /// [`PRIMAL_DIM_LIMIT`](crate::regressor::PRIMAL_DIM_LIMIT), dual otherwise.
    #[default]
    Auto,
    /// Always the kernel (dual) form.
    Dual,
    /// Always the feature-space (primal) form; errors if the kernel has no
    /// feature map.
    Primal,
}

/// How the greedy policy resolves exact ties in the action values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    /// First maximal action wins.
    #[default]
    LowestIndex,
    /// Last maximal action wins.
    HighestIndex,
}

/// Where the exploration-bonus multiplier β comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BetaSource {
    /// A fixed value used in every episode.
    Constant { value: f64 },
    /// The decay-class schedule evaluated once at the full episode budget;
    /// constant across the run.
    Schedule { decay: DecayClass, c_b: f64 },
    /// The decay-class schedule re-evaluated at the current episode count,
    /// so β grows as data accumulates. The schedule needs `t > 1`, so the
    /// first two episodes use its value at `t = 2`.
    GrowingSchedule { decay: DecayClass, c_b: f64 },
}

impl BetaSource {
    /// β for the 0-indexed episode `t` of a run with `episodes` episodes at
    /// horizon `horizon`.
    pub fn value_at(&self, t: usize, episodes: usize, horizon: usize) -> Result<f64> {
        let h = horizon as f64;
        match self {
            Self::Constant { value } => Ok(*value),
            Self::Schedule { decay, c_b } => {
                Ok(beta_schedule(decay, episodes.max(2) as f64, h, *c_b)?.beta)
            }
            Self::GrowingSchedule { decay, c_b } => {
                Ok(beta_schedule(decay, (t + 1).max(2) as f64, h, *c_b)?.beta)
            }
        }
    }

    /// Whether β is the same in every episode of a fixed-length run.
    pub fn is_constant_over_run(&self) -> bool {
        !matches!(self, Self::GrowingSchedule { .. })
    }
}

/// Everything that parameterizes one optimistic value-iteration run except
/// the environment, the kernel, and the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KoviConfig {
    /// Number of episodes `T`.
    pub episodes: usize,
    /// Ridge weight λ; `None` means the default `1 + 1/T`.
    #[serde(default)]
    pub lambda: Option<f64>,
    /// Exploration-bonus multiplier source.
    pub beta: BetaSource,
    /// Regression engine selection.
    #[serde(default)]
    pub engine: Engine,
    /// Tie handling in the greedy policy.
    #[serde(default)]
    pub tie_break: TieBreak,
    /// Keep the full per-episode value/bonus tables in the run record.
    /// Costs memory `O(T · H · |S| · |A|)`; needed by the audit tooling.
    #[serde(default)]
    pub record_tables: bool,
}

impl KoviConfig {
    /// A run of `episodes` episodes with β = 1, default λ, automatic engine.
    pub fn new(episodes: usize) -> Self {
        Self {
            episodes,
            lambda: None,
            beta: BetaSource::Constant { value: 1.0 },
            engine: Engine::Auto,
            tie_break: TieBreak::LowestIndex,
            record_tables: false,
        }
    }

    pub fn with_beta(mut self, beta: BetaSource) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_constant_beta(self, value: f64) -> Self {
        self.with_beta(BetaSource::Constant { value })
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
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
        if let Some(l) = self.lambda {
            if !l.is_finite() || l <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "lambda must be a positive finite number, got {l}"
                )));
            }
        }
        if let BetaSource::Constant { value } = &self.beta {
            if !value.is_finite() || *value < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "constant beta must be finite and nonnegative, got {value}"
                )));
            }
        }
        Ok(())
    }
}
