//! JSON run specifications.
//!
//! A spec carries a list of top-level seeds; each seed deterministically
//! splits into an environment stream and a rollout stream, so a spec plus a
//! binary version pins every byte of the output. Sweeps pair a base spec
//! with a grid file of labelled field overrides.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, Result};

/// Synthetic environment description. The environment itself is always the
/// low-rank construction whose rewards and transitions are exactly linear in
/// `d`-dimensional state-action embeddings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvSpec {
    /// Embedding dimension.
    pub d: usize,
    /// Number of states.
    pub n_states: usize,
    /// Number of actions.
    pub n_actions: usize,
    /// Steps per episode.
    pub horizon: usize,
    /// Normalize stored embeddings to the unit sphere (for kernels defined
    /// there). Dynamics are unchanged.
    #[serde(default)]
    pub sphere_normalize: bool,
    /// Episode start states: `null` draws a seeded random cycle, a list
    /// cycles through the given states.
    #[serde(default)]
    pub starts: Option<Vec<usize>>,
}

impl EnvSpec {
    /// Build the environment from the spec and its dedicated seed stream.
    pub fn build(&self, env_seed: u64, episodes: usize) -> Result<mdp_sim::EpisodicMdp> {
        let initial_rule = match &self.starts {
            Some(states) => mdp_sim::InitialStateRule::Cycle(states.clone()),
            None => mdp_sim::InitialStateRule::seeded(
                env_seed.wrapping_add(1),
                self.n_states,
                episodes.clamp(1, 4096),
            )?,
        };
        let options = mdp_sim::LinearMdpOptions {
            sphere_normalize: self.sphere_normalize,
            initial_rule,
        };
        let (mdp, _) = mdp_sim::make_linear_mdp_with(
            self.d,
            self.n_states,
            self.n_actions,
            self.horizon,
            env_seed,
            &options,
        )?;
        Ok(mdp)
    }
}

/// Which learner to run, with its full configuration inlined.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LearnerSpec {
    /// Kernel ridge learner; `kernel` names the kernel (`linear`,
    /// `quadratic`, `sine`, `se:<len>`, `matern:<2nu>:<len>`,
    /// `relu_power:<s>`).
    Kovi {
        kernel: String,
        #[serde(flatten)]
        config: kovi::KoviConfig,
    },
    /// Two-layer network learner trained in the tangent regime.
    Novi {
        #[serde(flatten)]
        config: novi::NoviConfig,
    },
}

impl LearnerSpec {
    /// Episode count requested by the learner config.
    pub fn episodes(&self) -> usize {
        match self {
            Self::Kovi { config, .. } => config.episodes,
            Self::Novi { config } => config.episodes,
        }
    }

    /// Cap the episode count (used by `validate --fast`).
    pub fn truncate_episodes(&mut self, cap: usize) {
        match self {
            Self::Kovi { config, .. } => config.episodes = config.episodes.min(cap),
            Self::Novi { config } => config.episodes = config.episodes.min(cap),
        }
    }

    /// Force per-episode table recording (needed by the audits).
    pub fn force_recorded_tables(&mut self) {
        match self {
            Self::Kovi { config, .. } => config.record_tables = true,
            Self::Novi { config } => config.record_tables = true,
        }
    }

    /// Validate the embedded learner configuration.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Kovi { config, .. } => config.validate()?,
            Self::Novi { config } => config.validate()?,
        }
        Ok(())
    }

    /// Apply a grid cell's field overrides on top of this learner and
    /// validate the result. Every override key must name an existing field
    /// (`episodes`, `lambda`, `beta`, `half_width`, …), so typos fail loudly
    /// instead of silently sweeping nothing.
    pub fn with_overrides(&self, overrides: &Map<String, Value>) -> Result<Self> {
        let mut base = serde_json::to_value(self)?;
        let obj = base
            .as_object_mut()
            .expect("learner specs serialize to JSON objects");
        for (key, value) in overrides {
            if !obj.contains_key(key) {
                let mut known: Vec<&str> = obj.keys().map(String::as_str).collect();
                known.sort_unstable();
                return Err(CliError::Config(format!(
                    "unknown override '{key}' for this learner; valid keys: {}",
                    known.join(", ")
                )));
            }
            obj.insert(key.clone(), value.clone());
        }
        let learner: Self = serde_json::from_value(base)?;
        learner.validate()?;
        Ok(learner)
    }
}

/// One complete experiment: environment, learner, and the seeds to run it
/// under (one run per seed).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    /// Top-level seeds; each is split deterministically into environment and
    /// rollout streams, and each produces one run.
    pub seeds: Vec<u64>,
    pub env: EnvSpec,
    pub learner: LearnerSpec,
}

/// One cell of a sweep grid: a label plus learner-field overrides.
#[derive(Debug, Clone)]
pub struct GridCell {
    pub label: String,
    pub overrides: Map<String, Value>,
}

/// Parse a grid file: a JSON array of objects, each carrying a non-empty
/// string `label` plus any learner fields to override. An empty array is a
/// valid (empty) grid.
pub fn parse_grid(text: &str) -> Result<Vec<GridCell>> {
    let cells: Vec<Map<String, Value>> = serde_json::from_str(text)?;
    cells
        .into_iter()
        .enumerate()
        .map(|(i, mut obj)| {
            let label = match obj.remove("label") {
                Some(Value::String(s)) if !s.is_empty() => s,
                _ => {
                    return Err(CliError::Config(format!(
                        "grid cell {i} needs a non-empty string 'label'"
                    )))
                }
            };
            Ok(GridCell {
                label,
                overrides: obj,
            })
        })
        .collect()
}

/// Split a top-level seed into `(environment_seed, run_seed)`.
pub fn split_seed(seed: u64) -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (rng.next_u64(), rng.next_u64())
}

fn check_env(env: &EnvSpec) -> Result<()> {
    if env.d == 0 || env.n_states == 0 || env.n_actions == 0 || env.horizon == 0 {
        return Err(CliError::Config(
            "env.d, env.n_states, env.n_actions and env.horizon must all be ≥ 1".into(),
        ));
    }
    Ok(())
}

impl RunSpec {
    /// Parse and validate a spec from JSON text.
    pub fn parse(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Validate seeds, environment, and learner settings.
    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(CliError::Config("'seeds' must list at least one seed".into()));
        }
        check_env(&self.env)?;
        self.learner.validate()
    }
}
