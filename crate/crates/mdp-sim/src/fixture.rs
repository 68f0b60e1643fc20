use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mdp::{EpisodicMdp, InitialStateRule};

/// One state in a serialized environment: its id and the per-action
/// embedding vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFixture {
    pub id: usize,
    /// `embed[a]` is the embedding of `(this state, action a)`.
    pub embed: Vec<Vec<f64>>,
}

/// JSON-serializable environment:
///
/// ```json
/// {
///   "H": 2,
///   "states": [{"id": 0, "embed": [[...], [...]]}, ...],
///   "actions": ["a0", "a1"],
///   "rewards": [[[r]]],          // [h][x][a]
///   "transitions": [[[[p]]]],    // [h][x][a][x']
///   "seed": 7
/// }
/// ```
///
/// The start rule is not part of the serialized form; loaded environments
/// start every episode in state 0 until a rule is attached with
/// [`EpisodicMdp::with_initial_rule`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MdpFixture {
    #[serde(rename = "H")]
    pub horizon: usize,
    pub states: Vec<StateFixture>,
    pub actions: Vec<String>,
    pub rewards: Vec<Vec<Vec<f64>>>,
    pub transitions: Vec<Vec<Vec<Vec<f64>>>>,
    /// Seed the instance was generated from (provenance only).
    pub seed: u64,
}

impl MdpFixture {
    /// Snapshot an environment.
    pub fn from_mdp(mdp: &EpisodicMdp, seed: u64) -> Self {
        let states = (0..mdp.n_states())
            .map(|x| StateFixture {
                id: x,
                embed: (0..mdp.n_actions()).map(|a| mdp.embed(x, a).to_vec()).collect(),
            })
            .collect();
        Self {
            horizon: mdp.horizon(),
            states,
            actions: (0..mdp.n_actions()).map(|a| format!("a{a}")).collect(),
            rewards: (0..mdp.horizon())
                .map(|h| {
                    (0..mdp.n_states())
                        .map(|x| (0..mdp.n_actions()).map(|a| mdp.reward(h, x, a)).collect())
                        .collect()
                })
                .collect(),
            transitions: (0..mdp.horizon())
                .map(|h| {
                    (0..mdp.n_states())
                        .map(|x| {
                            (0..mdp.n_actions())
                                .map(|a| mdp.transition_row(h, x, a).to_vec())
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            seed,
        }
    }

    /// Rebuild (and re-validate) the environment. States must be listed in
    /// id order.
    pub fn to_mdp(&self) -> Result<EpisodicMdp> {
        for (i, st) in self.states.iter().enumerate() {
            if st.id != i {
                return Err(Error::InvalidParameter(format!(
                    "states must be listed in id order; position {i} has id {}",
                    st.id
                )));
            }
        }
        let embeddings = self.states.iter().map(|s| s.embed.clone()).collect();
        EpisodicMdp::new(
            self.horizon,
            embeddings,
            self.rewards.clone(),
            self.transitions.clone(),
            InitialStateRule::Fixed(0),
        )
    }

    /// Write as pretty-printed JSON.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(path, json)?;
        Ok(())
    }

    /// Load from a JSON file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}
