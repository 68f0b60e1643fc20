use rand::Rng;

use crate::error::Result;
use crate::mdp::EpisodicMdp;
use crate::policy::Policy;

/// One executed step: the pair visited, the reward collected, and where the
/// environment moved next.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub state: usize,
    pub action: usize,
    pub reward: f64,
    pub next_state: usize,
}

/// A full episode: exactly `H` steps plus the realized return.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Episode index this trajectory was generated in.
    pub episode: usize,
    pub steps: Vec<Step>,
    /// Sum of the collected rewards.
    pub ret: f64,
}

impl Trajectory {
    /// State visited at step `h ∈ 0..=H` (index `H` is the terminal state).
    pub fn state_at(&self, h: usize) -> usize {
        if h < self.steps.len() {
            self.steps[h].state
        } else {
            self.steps.last().expect("trajectory has H ≥ 1 steps").next_state
        }
    }
}

/// Execute one episode: start in `mdp.initial_state(episode)`, act with
/// `policy`, and draw next states from the transition rows using `rng`.
///
/// Identical `(mdp, policy, episode, rng seed)` reproduce the trajectory
/// exactly; deterministic policies additionally consume no randomness for
/// action choice, so on deterministic environments their trajectories do not
/// depend on the generator at all.
///
/// # Errors
///
/// [`crate::Error::PolicyUndefined`] if the policy does not cover a reached
/// `(h, x)`.
pub fn rollout(
    mdp: &EpisodicMdp,
    policy: &Policy,
    episode: usize,
    rng: &mut impl Rng,
) -> Result<Trajectory> {
    let mut x = mdp.initial_state(episode);
    let mut steps = Vec::with_capacity(mdp.horizon());
    let mut ret = 0.0;
    for h in 0..mdp.horizon() {
        let a = policy.sample(h, x, mdp.n_actions(), rng)?;
        let reward = mdp.reward(h, x, a);
        let next = sample_categorical(mdp.transition_row(h, x, a), rng);
        steps.push(Step { state: x, action: a, reward, next_state: next });
        ret += reward;
        x = next;
    }
    Ok(Trajectory { episode, steps, ret })
}

/// Draw an index from a probability row. Rounding slack beyond the cumulative
/// sum falls to the last index with positive mass.
fn sample_categorical(row: &[f64], rng: &mut impl Rng) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &p) in row.iter().enumerate() {
        if p > 0.0 {
            last_positive = i;
            acc += p;
            if u < acc {
                return i;
            }
        }
    }
    last_positive
}
