use kernel_core::Kernel;
use mdp_sim::{exact_optimal_values, policy_values, rollout, EpisodicMdp, Policy, Trajectory, ValueTables};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::agent::{EpisodeTables, KoviAgent};
use crate::config::KoviConfig;
use crate::error::Result;

/// Everything measured in one episode.
#[derive(Debug, Clone)]
pub struct EpisodeRecord {
    /// 0-indexed episode number.
    pub episode: usize,
    /// `V*₁(x₁) − V₁^{π_t}(x₁)`, both sides computed by exact dynamic
    /// programming — no Monte-Carlo noise enters the regret.
    pub instant_regret: f64,
    /// Running sum of `instant_regret`.
    pub cum_regret: f64,
    /// Cumulative information gain `Γ_h` of each step's design *after* this
    /// episode's transitions were absorbed.
    pub info_gain_per_step: Vec<f64>,
    /// The bonus multiplier used this episode.
    pub beta: f64,
    /// The states, actions, and rewards actually traversed.
    pub trajectory: Trajectory,
    /// Full sweep tables, present only when the config asked for them.
    pub tables: Option<EpisodeTables>,
}

/// A complete run: per-episode records plus the exact optimal values the
/// regret was measured against, and the final learner state.
pub struct KoviRun {
    pub records: Vec<EpisodeRecord>,
    pub optimal: ValueTables,
    pub seed: u64,
    pub agent: KoviAgent,
}

impl KoviRun {
    pub fn final_cum_regret(&self) -> f64 {
        self.records.last().map_or(0.0, |r| r.cum_regret)
    }

    pub fn cum_regret_series(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.cum_regret).collect()
    }

    /// Growth exponent of the cumulative regret; see [`regret_exponent`].
    pub fn regret_exponent(&self) -> Option<f64> {
        regret_exponent(&self.cum_regret_series())
    }
}

/// Run optimistic least-squares value iteration for `config.episodes`
/// episodes on `mdp` under `kernel`.
///
/// Each episode: one backward sweep over the current data produces
/// optimistic tables, the greedy policy is rolled out once, its exact value
/// is compared against the optimum, and only then are the new transitions
/// absorbed — episode `t` plans from episodes `0..t` alone.
pub fn run_kovi(
    mdp: &EpisodicMdp,
    kernel: &Kernel,
    config: &KoviConfig,
    seed: u64,
) -> Result<KoviRun> {
    config.validate()?;
    let optimal = exact_optimal_values(mdp);
    let mut agent = KoviAgent::new(mdp, kernel, config.engine, config.resolved_lambda())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // constant-β sources are evaluated once; growing schedules per episode
    let fixed_beta = config
        .beta
        .is_constant_over_run()
        .then(|| config.beta.value_at(0, config.episodes, mdp.horizon()))
        .transpose()?;
    let mut records = Vec::with_capacity(config.episodes);
    let mut cum_regret = 0.0;
    for t in 0..config.episodes {
        debug_assert!(
            (0..mdp.horizon()).all(|h| agent.step_count(h) == t),
            "episode {t} must plan from exactly {t} stored transitions per step"
        );
        let beta = match fixed_beta {
            Some(b) => b,
            None => config.beta.value_at(t, config.episodes, mdp.horizon())?,
        };
        let tables = agent.sweep(mdp, beta, config.tie_break)?;
        let policy = tables.greedy_policy();
        let trajectory = rollout(mdp, &policy, t, &mut rng)?;
        let x1 = trajectory.steps[0].state;
        let instant_regret = optimal.v[0][x1] - policy_values(mdp, &policy)?.v[0][x1];
        cum_regret += instant_regret;
        agent.record_episode(mdp, &trajectory)?;
        records.push(EpisodeRecord {
            episode: t,
            instant_regret,
            cum_regret,
            info_gain_per_step: agent.info_gain_per_step(),
            beta,
            trajectory,
            tables: config.record_tables.then_some(tables),
        });
    }
    Ok(KoviRun {
        records,
        optimal,
        seed,
        agent,
    })
}

/// Exact cumulative regret of the uniform-random policy over `episodes`
/// episodes, under the environment's own initial-state rule. The natural
/// "no learning" baseline: entry `t` is the sum of the first `t+1` gaps
/// `V*₁(x₁ᵗ) − V₁^U(x₁ᵗ)`.
pub fn uniform_baseline(mdp: &EpisodicMdp, episodes: usize) -> Result<Vec<f64>> {
    let optimal = exact_optimal_values(mdp);
    let uniform = policy_values(mdp, &Policy::Uniform)?;
    let mut out = Vec::with_capacity(episodes);
    let mut cum = 0.0;
    for t in 0..episodes {
        let x1 = mdp.initial_state(t);
        cum += optimal.v[0][x1] - uniform.v[0][x1];
        out.push(cum);
    }
    Ok(out)
}

/// Least-squares slope of `ln(cumulative regret)` against `ln t` over the
/// last three quarters of the run (1-indexed episodes `t ∈ [T/4, T]`),
/// skipping episodes whose cumulative regret is not yet positive.
///
/// A slope near 1 means linear regret (no learning); sublinear growth shows
/// up as a slope strictly below 1. `None` when fewer than two usable points
/// remain.
pub fn regret_exponent(cum_regret: &[f64]) -> Option<f64> {
    let total = cum_regret.len();
    let start = (total / 4).max(1);
    let points: Vec<(f64, f64)> = (start..=total)
        .filter_map(|t| {
            let c = cum_regret[t - 1];
            (c > 0.0).then(|| ((t as f64).ln(), c.ln()))
        })
        .collect();
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
