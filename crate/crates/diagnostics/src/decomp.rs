//! Exact per-episode regret decomposition.
//!
//! For each episode the instantaneous regret against a comparator policy π̃
//! splits *algebraically* into three parts:
//!
//! ```text
//! V^π̃₁(x₁) − V^π₁(x₁) = bellman_term + noise_term + policy_term
//! ```
//!
//! * `bellman_term` — Bellman residuals `δ_h` averaged over the comparator's
//!   exact occupancy minus the residuals along the realized trajectory,
//! * `noise_term` — per-step sampling terms: an action-consistency gap plus
//!   transition noise (expected next value under the true kernel minus the
//!   value at the sampled next state),
//! * `policy_term` — `Σ_h E_π̃[⟨Q_h(x,·), π̃(·|x) − π(·|x)⟩]`, which is
//!   non-positive whenever the rollout policy π is greedy for `Q`.
//!
//! Every expectation is evaluated with exact dynamic programming (occupancy
//! measures and policy evaluation), so the identity holds to machine
//! precision; the audit reports the worst residual. The noise terms double as
//! the martingale increments consumed by the concentration check.

use crate::error::Result;
use crate::td::td_error_table;
use crate::view::EpisodeView;
use mdp_sim::{occupancy, policy_values, EpisodicMdp, Policy, ValueTables};
use serde::{Deserialize, Serialize};

/// Sampling terms of one realized step.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NoiseStep {
    /// `[V_h(x) − V^π_h(x)] − [Q_h(x,a) − Q^π_h(x,a)]` at the realized
    /// `(x, a)`. Identically zero when the rollout action is the greedy one,
    /// because then `V = Q(·, a)` on both sides.
    pub action_consistency: f64,
    /// `[P_h(V_{h+1} − V^π_{h+1})](x, a) − [V_{h+1} − V^π_{h+1}](x')` at the
    /// realized transition — the gap between the exact expectation and the
    /// sampled next state.
    pub transition_noise: f64,
}

impl NoiseStep {
    /// Combined martingale increment of this step.
    pub fn total(&self) -> f64 {
        self.action_consistency + self.transition_noise
    }
}

/// One episode's exact decomposition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EpisodeDecomposition {
    pub episode: usize,
    /// The recorded instantaneous regret this episode.
    pub regret: f64,
    /// Comparator-averaged minus realized Bellman residuals.
    pub bellman_term: f64,
    /// Sum of the sampling terms along the trajectory.
    pub noise_term: f64,
    /// Comparator-weighted action-value gap between comparator and rollout
    /// policy; non-positive for greedy rollouts.
    pub policy_term: f64,
    /// `|regret − (bellman + noise + policy)|`.
    pub residual: f64,
    /// Largest `|action_consistency|` along this trajectory.
    pub max_action_consistency: f64,
}

/// Aggregate outcome over a run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub episodes: Vec<EpisodeDecomposition>,
    /// Worst per-episode identity residual.
    pub max_residual: f64,
    /// Largest policy term (should stay ≤ ~0 for greedy rollouts).
    pub max_policy_term: f64,
    /// Largest action-consistency gap anywhere (0 for greedy rollouts).
    pub max_action_consistency: f64,
}

/// Per-step sampling terms of one episode, given the rollout policy's exact
/// values. See [`NoiseStep`].
fn noise_steps_with(mdp: &EpisodicMdp, view: &EpisodeView, pol: &ValueTables) -> Vec<NoiseStep> {
    let tables = view.tables;
    view.trajectory
        .steps
        .iter()
        .enumerate()
        .map(|(h, step)| {
            let (x, a, xn) = (step.state, step.action, step.next_state);
            let action_consistency =
                (tables.v[h][x] - pol.v[h][x]) - (tables.q[h][x][a] - pol.q[h][x][a]);
            let transition_noise = mdp.expected_next_value(h, x, a, &tables.v[h + 1])
                - mdp.expected_next_value(h, x, a, &pol.v[h + 1])
                - (tables.v[h + 1][xn] - pol.v[h + 1][xn]);
            NoiseStep { action_consistency, transition_noise }
        })
        .collect()
}

/// Per-step sampling terms of one episode (computes the rollout policy's
/// exact values internally).
///
/// # Errors
///
/// Propagates environment errors from exact policy evaluation.
pub fn noise_steps(mdp: &EpisodicMdp, view: &EpisodeView) -> Result<Vec<NoiseStep>> {
    let pol = policy_values(mdp, &view.tables.greedy_policy())?;
    Ok(noise_steps_with(mdp, view, &pol))
}

/// Verify the three-term regret identity on every episode of a run.
///
/// `comparator` is the policy the regret is measured against — normally the
/// exact optimal greedy policy. Works for any comparator (the identity is
/// algebraic); `policy_term ≤ 0` is only guaranteed when the rollout policy
/// is greedy for its own tables.
///
/// # Errors
///
/// Propagates environment errors (policy evaluation, occupancy).
pub fn decomposition_check(
    mdp: &EpisodicMdp,
    comparator: &Policy,
    views: &[EpisodeView],
) -> Result<DecompositionReport> {
    let (horizon, s, a_n) = (mdp.horizon(), mdp.n_states(), mdp.n_actions());
    let mut episodes = Vec::with_capacity(views.len());
    let mut max_residual: f64 = 0.0;
    let mut max_policy_term = f64::NEG_INFINITY;
    let mut max_action_consistency: f64 = 0.0;

    for view in views {
        let tables = view.tables;
        let delta = td_error_table(mdp, tables);
        let rollout = tables.greedy_policy();
        let pol = policy_values(mdp, &rollout)?;
        let x1 = view.trajectory.state_at(0);
        let occ = occupancy(mdp, comparator, x1)?;
        let steps = noise_steps_with(mdp, view, &pol);

        let mut bellman_term = 0.0;
        let mut policy_term = 0.0;
        for h in 0..horizon {
            let mut expected_delta = 0.0;
            let mut policy_gap = 0.0;
            for x in 0..s {
                let weight = occ[h][x];
                if weight == 0.0 {
                    continue;
                }
                let comparator_probs = comparator.probs(h, x, a_n)?;
                let rollout_probs = rollout.probs(h, x, a_n)?;
                for a in 0..a_n {
                    expected_delta += weight * comparator_probs[a] * delta[h][x][a];
                    policy_gap +=
                        weight * (comparator_probs[a] - rollout_probs[a]) * tables.q[h][x][a];
                }
            }
            let step = &view.trajectory.steps[h];
            bellman_term += expected_delta - delta[h][step.state][step.action];
            policy_term += policy_gap;
        }

        let noise_term: f64 = steps.iter().map(NoiseStep::total).sum();
        let episode_max_consistency = steps
            .iter()
            .map(|n| n.action_consistency.abs())
            .fold(0.0f64, f64::max);
        let residual =
            (view.instant_regret - (bellman_term + noise_term + policy_term)).abs();

        max_residual = max_residual.max(residual);
        max_policy_term = max_policy_term.max(policy_term);
        max_action_consistency = max_action_consistency.max(episode_max_consistency);
        episodes.push(EpisodeDecomposition {
            episode: view.episode,
            regret: view.instant_regret,
            bellman_term,
            noise_term,
            policy_term,
            residual,
            max_action_consistency: episode_max_consistency,
        });
    }

    if episodes.is_empty() {
        max_policy_term = 0.0;
    }
    Ok(DecompositionReport { episodes, max_residual, max_policy_term, max_action_consistency })
}
