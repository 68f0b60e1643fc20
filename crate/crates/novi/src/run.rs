use kernel_core::{DataBlock, Kernel};
use kovi::{pick_action, EpisodeTables};
use mdp_sim::{exact_optimal_values, rollout, policy_values, EpisodicMdp, Trajectory, ValueTables};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{NoviConfig, MAX_EMBED_DIM};
use crate::error::{Error, Result};
use crate::net::TwoLayerNet;
use crate::train::fit_ridge_gd;

/// Everything measured in one episode of the neural learner.
#[derive(Debug, Clone)]
pub struct NoviEpisode {
    /// 0-indexed episode number.
    pub episode: usize,
    /// `V*₁(x₁) − V₁^{π_t}(x₁)`, both by exact dynamic programming.
    pub instant_regret: f64,
    /// Running sum of `instant_regret`.
    pub cum_regret: f64,
    /// Cumulative information gain of each step's tangent design **as used
    /// by this episode's bonuses** (rows for episodes `0..t`).
    pub info_gain_per_step: Vec<f64>,
    /// The bonus multiplier used this episode.
    pub beta: f64,
    /// Largest final-gradient norm over this episode's per-step fits
    /// (0 in frozen-feature mode).
    pub grad_norm_max: f64,
    /// Largest `|f(z; Ŵ) − f_lin(z; Ŵ)|` over all grid queries this episode
    /// (0 in frozen-feature mode).
    pub linearization_gap: f64,
    /// Largest `‖Ŵ_h − W₀‖²_F` over steps after this episode's fits.
    pub param_distance_sq_max: f64,
    /// The states, actions, and rewards actually traversed.
    pub trajectory: Trajectory,
    /// Full sweep tables, present only when the config asked for them.
    pub tables: Option<EpisodeTables>,
}

/// A complete neural run.
pub struct NoviRun {
    pub records: Vec<NoviEpisode>,
    pub optimal: ValueTables,
    pub seed: u64,
    /// Width-dependence certificate `T^{7/12} H^{1/6} m^{−1/12} (ln m)^{1/4}`
    /// with `m` the total width `2·half_width`. Reported for context only:
    /// small values indicate the lazy-training regime, nothing is asserted.
    pub iota: f64,
    /// `T·H²/λ`: the squared radius the trained weights are expected to
    /// stay inside across the run.
    pub param_ball_radius_sq: f64,
    /// Whether every fit stayed inside that ball.
    pub param_ball_ok: bool,
    /// Whether the run used frozen features (pure kernel behavior).
    pub frozen_features: bool,
    /// Per step `h`: the append statistics of the tangent design, one entry
    /// per frozen row, in order. Feeds the information-gain audits.
    pub append_ledgers: Vec<Vec<kernel_core::AppendStats>>,
}

impl NoviRun {
    pub fn final_cum_regret(&self) -> f64 {
        self.records.last().map_or(0.0, |r| r.cum_regret)
    }

    pub fn cum_regret_series(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.cum_regret).collect()
    }

    /// Growth exponent of the cumulative regret (see
    /// [`kovi::regret_exponent`]).
    pub fn regret_exponent(&self) -> Option<f64> {
        kovi::regret_exponent(&self.cum_regret_series())
    }

    pub fn max_linearization_gap(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.linearization_gap)
            .fold(0.0, f64::max)
    }
}

/// `T^{7/12} H^{1/6} m^{−1/12} (ln m)^{1/4}`: how far the finite width `m`
/// is from the kernel regime at scale `(T, H)`.
pub fn iota(episodes: usize, horizon: usize, width: usize) -> f64 {
    let t = episodes as f64;
    let h = horizon as f64;
    let m = width as f64;
    t.powf(7.0 / 12.0) * h.powf(1.0 / 6.0) * m.powf(-1.0 / 12.0) * m.ln().max(0.0).powf(0.25)
}

/// Run neural optimistic value iteration for `config.episodes` episodes.
///
/// Per episode `t` and step `h` (backward): the network is retrained from
/// `W₀` on the bootstrapped targets; the tangent row of the *previous*
/// episode's visit is then frozen into the step's design at these fresh
/// weights; finally `Q_h(x,a) = clip(f(z; Ŵ_h) + β·b_h(z), 0, H−h)`, where
/// `b_h` is the elliptic width of the current tangent against the frozen
/// design. In frozen-feature mode nothing is trained: every feature is taken
/// at `W₀` and the mean is the ridge prediction in that fixed space, which
/// reproduces the kernel learner under the empirical tangent kernel exactly.
///
/// One seed drives everything: it is split into a network-initialization
/// seed and a rollout seed, so runs are bit-reproducible.
pub fn run_novi(mdp: &EpisodicMdp, config: &NoviConfig, seed: u64) -> Result<NoviRun> {
    config.validate()?;
    let d = mdp.embedding_dim();
    if d > MAX_EMBED_DIM {
        return Err(Error::InvalidParameter(format!(
            "embedding dimension {d} exceeds the supported maximum {MAX_EMBED_DIM}"
        )));
    }
    let horizon = mdp.horizon();
    let lambda = config.resolved_lambda();
    let optimal = exact_optimal_values(mdp);

    let mut seed_rng = ChaCha8Rng::seed_from_u64(seed);
    let net_seed = seed_rng.next_u64();
    let mut roll_rng = ChaCha8Rng::seed_from_u64(seed_rng.next_u64());

    // one initialization shared by every step, so all steps live in the same
    // tangent space (and frozen mode matches a single-kernel learner)
    let init = TwoLayerNet::new(config.activation, d, config.half_width, config.init, net_seed)?;
    let mut nets: Vec<TwoLayerNet> = (0..horizon).map(|_| init.clone()).collect();
    let mut blocks: Vec<DataBlock> = (0..horizon)
        .map(|_| DataBlock::new(Kernel::linear(), lambda))
        .collect::<std::result::Result<_, _>>()?;
    let mut visits: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); horizon];

    let fixed_beta = config
        .beta
        .is_constant_over_run()
        .then(|| config.beta.value_at(0, config.episodes, horizon))
        .transpose()?;

    let (n_states, n_actions) = (mdp.n_states(), mdp.n_actions());
    let mut records = Vec::with_capacity(config.episodes);
    let mut cum_regret = 0.0;
    let mut worst_param_distance = 0.0f64;

    for t in 0..config.episodes {
        let beta = match fixed_beta {
            Some(b) => b,
            None => config.beta.value_at(t, config.episodes, horizon)?,
        };
        let mut q = vec![vec![vec![0.0; n_actions]; n_states]; horizon];
        let mut v = vec![vec![0.0; n_states]; horizon + 1];
        let mut bonus = vec![vec![vec![0.0; n_actions]; n_states]; horizon];
        let mut greedy = vec![vec![0usize; n_states]; horizon];
        let mut grad_norm_max = 0.0f64;
        let mut linearization_gap = 0.0f64;
        let mut param_distance_sq_max = 0.0f64;

        for h in (0..horizon).rev() {
            let targets: Vec<f64> = visits[h]
                .iter()
                .map(|&(x, a, xn)| mdp.reward(h, x, a) + v[h + 1][xn])
                .collect();
            if !config.frozen_features {
                let inputs: Vec<&[f64]> =
                    visits[h].iter().map(|&(x, a, _)| mdp.embed(x, a)).collect();
                nets[h].reset();
                let report = fit_ridge_gd(&mut nets[h], &inputs, &targets, lambda, &config.gd)?;
                grad_norm_max = grad_norm_max.max(report.grad_norm);
                param_distance_sq_max = param_distance_sq_max.max(nets[h].param_distance_sq());
            }
            // the previous episode's visit enters the design now, frozen at
            // the weights just trained (the first fit that saw it)
            if visits[h].len() > blocks[h].len() {
                let &(x, a, _) = visits[h].last().expect("nonempty visit list");
                blocks[h].append(&nets[h].tangent_features(mdp.embed(x, a)))?;
            }
            // frozen mode predicts with the ridge solution in feature space
            let alpha = config
                .frozen_features
                .then(|| blocks[h].solve(&targets));
            let ceiling = (horizon - h) as f64;
            for x in 0..n_states {
                for a in 0..n_actions {
                    let z = mdp.embed(x, a);
                    let phi = nets[h].tangent_features(z);
                    let width = blocks[h].bonus(&phi);
                    let mean = match &alpha {
                        Some(alpha) => blocks[h].predict(alpha, &phi),
                        None => {
                            linearization_gap =
                                linearization_gap.max(nets[h].linearization_gap(z));
                            nets[h].forward(z)
                        }
                    };
                    bonus[h][x][a] = width;
                    q[h][x][a] = (mean + beta * width).clamp(0.0, ceiling);
                }
                let best = pick_action(&q[h][x], config.tie_break);
                greedy[h][x] = best;
                v[h][x] = q[h][x][best];
            }
        }
        worst_param_distance = worst_param_distance.max(param_distance_sq_max);

        let info_gain_per_step: Vec<f64> = blocks.iter().map(DataBlock::info_gain).collect();
        let tables = EpisodeTables { q, v, bonus, greedy };
        let policy = tables.greedy_policy();
        let trajectory = rollout(mdp, &policy, t, &mut roll_rng)?;
        let x1 = trajectory.steps[0].state;
        let instant_regret = optimal.v[0][x1] - policy_values(mdp, &policy)?.v[0][x1];
        cum_regret += instant_regret;
        for (h, step) in trajectory.steps.iter().enumerate() {
            visits[h].push((step.state, step.action, step.next_state));
        }
        records.push(NoviEpisode {
            episode: t,
            instant_regret,
            cum_regret,
            info_gain_per_step,
            beta,
            grad_norm_max,
            linearization_gap,
            param_distance_sq_max,
            trajectory,
            tables: config.record_tables.then_some(tables),
        });
    }

    let param_ball_radius_sq =
        config.episodes as f64 * (horizon as f64) * (horizon as f64) / lambda;
    Ok(NoviRun {
        records,
        optimal,
        seed,
        iota: iota(config.episodes, horizon, 2 * config.half_width),
        param_ball_radius_sq,
        param_ball_ok: worst_param_distance <= param_ball_radius_sq,
        frozen_features: config.frozen_features,
        append_ledgers: blocks
            .iter()
            .map(|block| block.ledger().to_vec())
            .collect(),
    })
}
