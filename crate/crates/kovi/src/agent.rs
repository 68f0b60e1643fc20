use kernel_core::{AppendStats, Kernel};
use mdp_sim::{EpisodicMdp, Trajectory};

use crate::config::{Engine, TieBreak};
use crate::error::{Error, Result};
use crate::regressor::Regressor;

/// The value tables one backward sweep produces, indexed `[h][x]` or
/// `[h][x][a]` with `h` running over the steps of an episode.
#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeTables {
    /// Clipped optimistic action values `Q_h(x,a) ∈ [0, H−h]`.
    pub q: Vec<Vec<Vec<f64>>>,
    /// State values `V_h(x) = max_a Q_h(x,a)`, with an extra all-zero row
    /// `v[H]` so `v[h+1]` is always valid.
    pub v: Vec<Vec<f64>>,
    /// Raw uncertainty widths `b_h(x,a)` (without the β multiplier).
    pub bonus: Vec<Vec<Vec<f64>>>,
    /// The greedy action at each `(h, x)`.
    pub greedy: Vec<Vec<usize>>,
}

impl EpisodeTables {
    /// The greedy table as a deterministic policy.
    pub fn greedy_policy(&self) -> mdp_sim::Policy {
        mdp_sim::Policy::Deterministic(self.greedy.clone())
    }
}

/// The learner's state: one ridge regressor per step of the episode, plus the
/// visited transitions that regression targets are rebuilt from each episode.
///
/// Targets cannot be stored at visit time because they depend on the *next*
/// step's value table, which changes every episode; only the inputs (and the
/// matrix factorization over them) are incremental.
pub struct KoviAgent {
    lambda: f64,
    regressors: Vec<Regressor>,
    /// Per step `h`: the `(x, a, x')` transitions observed there, in order.
    visits: Vec<Vec<(usize, usize, usize)>>,
    /// Per step `h`: the append statistics, one entry per stored point.
    ledgers: Vec<Vec<AppendStats>>,
}

impl KoviAgent {
    /// An empty learner for `mdp` under the given kernel, engine, and ridge
    /// weight.
    pub fn new(mdp: &EpisodicMdp, kernel: &Kernel, engine: Engine, lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "lambda must be a positive finite number, got {lambda}"
            )));
        }
        let probe = mdp.embed(0, 0);
        let regressors = (0..mdp.horizon())
            .map(|_| Regressor::build(kernel, engine, lambda, probe))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            lambda,
            regressors,
            visits: vec![Vec::new(); mdp.horizon()],
            ledgers: vec![Vec::new(); mdp.horizon()],
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn horizon(&self) -> usize {
        self.regressors.len()
    }

    /// Number of stored transitions at step `h` (equals the number of
    /// episodes recorded so far).
    pub fn step_count(&self, h: usize) -> usize {
        self.regressors[h].len()
    }

    /// Whether the resolved engine is the primal (feature-space) form.
    pub fn uses_primal_engine(&self) -> bool {
        self.regressors.first().is_some_and(Regressor::is_primal)
    }

    /// Cumulative information gain `Γ_h` of each step's stored design.
    pub fn info_gain_per_step(&self) -> Vec<f64> {
        self.regressors.iter().map(Regressor::info_gain).collect()
    }

    /// The append statistics at step `h`, one per stored point, in order.
    pub fn append_ledger(&self, h: usize) -> &[AppendStats] {
        &self.ledgers[h]
    }

    /// Regression targets at step `h` under next-step values `v_next`:
    /// `y_τ = r_h(x_τ, a_τ) + v_next[x'_τ]`.
    pub(crate) fn targets(&self, mdp: &EpisodicMdp, h: usize, v_next: &[f64]) -> Vec<f64> {
        self.visits[h]
            .iter()
            .map(|&(x, a, xn)| mdp.reward(h, x, a) + v_next[xn])
            .collect()
    }

    /// One full backward sweep: for `h = H−1 … 0`, refit the ridge solution
    /// on bootstrapped targets and form `Q_h(x,a) = clip(mean + β·b, 0, H−h)`
    /// over the whole state-action grid.
    pub fn sweep(&self, mdp: &EpisodicMdp, beta: f64, tie: TieBreak) -> Result<EpisodeTables> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "beta must be finite and nonnegative, got {beta}"
            )));
        }
        let horizon = mdp.horizon();
        let (n_states, n_actions) = (mdp.n_states(), mdp.n_actions());
        let mut q = vec![vec![vec![0.0; n_actions]; n_states]; horizon];
        let mut v = vec![vec![0.0; n_states]; horizon + 1];
        let mut bonus = vec![vec![vec![0.0; n_actions]; n_states]; horizon];
        let mut greedy = vec![vec![0usize; n_states]; horizon];
        for h in (0..horizon).rev() {
            let reg = &self.regressors[h];
            let y = self.targets(mdp, h, &v[h + 1]);
            let w = reg.fit(&y);
            let ceiling = (horizon - h) as f64;
            for x in 0..n_states {
                for a in 0..n_actions {
                    let z = mdp.embed(x, a);
                    let width = reg.bonus(z);
                    bonus[h][x][a] = width;
                    q[h][x][a] = (reg.value(&w, z) + beta * width).clamp(0.0, ceiling);
                }
                let best = pick_action(&q[h][x], tie);
                greedy[h][x] = best;
                v[h][x] = q[h][x][best];
            }
        }
        Ok(EpisodeTables { q, v, bonus, greedy })
    }

    /// Absorb one episode's transitions into the per-step designs. Returns
    /// the append statistics, one per step.
    pub fn record_episode(
        &mut self,
        mdp: &EpisodicMdp,
        trajectory: &Trajectory,
    ) -> Result<Vec<AppendStats>> {
        if trajectory.steps.len() != self.horizon() {
            return Err(Error::InvalidParameter(format!(
                "trajectory has {} steps, agent expects {}",
                trajectory.steps.len(),
                self.horizon()
            )));
        }
        let mut out = Vec::with_capacity(trajectory.steps.len());
        for (h, step) in trajectory.steps.iter().enumerate() {
            let stats = self.regressors[h].append(mdp.embed(step.state, step.action))?;
            self.visits[h].push((step.state, step.action, step.next_state));
            self.ledgers[h].push(stats);
            out.push(stats);
        }
        Ok(out)
    }
}

/// Index of the maximal entry, ties resolved by the given rule.
pub fn pick_action(row: &[f64], tie: TieBreak) -> usize {
    let mut best = 0usize;
    for (i, &value) in row.iter().enumerate().skip(1) {
        let wins = match tie {
            TieBreak::LowestIndex => value > row[best],
            TieBreak::HighestIndex => value >= row[best],
        };
        if wins {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use mdp_sim::{make_linear_mdp, rollout, Policy};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small_world() -> EpisodicMdp {
        make_linear_mdp(3, 4, 2, 3, 11).unwrap().0
    }

    #[test]
    fn tie_breaking_picks_first_or_last_maximum() {
        let row = [1.0, 3.0, 3.0, 0.5];
        assert_eq!(pick_action(&row, TieBreak::LowestIndex), 1);
        assert_eq!(pick_action(&row, TieBreak::HighestIndex), 2);
        let single = [2.0];
        assert_eq!(pick_action(&single, TieBreak::LowestIndex), 0);
    }

    #[test]
    fn tie_breaking_is_stable_under_strict_maxima() {
        let row = [0.1, 0.9, 0.3];
        assert_eq!(pick_action(&row, TieBreak::LowestIndex), 1);
        assert_eq!(pick_action(&row, TieBreak::HighestIndex), 1);
    }

    #[test]
    fn empty_agent_sweep_is_pure_bonus_and_saturates_for_large_beta() {
        let mdp = small_world();
        let agent = KoviAgent::new(&mdp, &Kernel::linear(), Engine::Auto, 1.0).unwrap();
        // β = 0 on no data: all values are exactly zero
        let t0 = agent.sweep(&mdp, 0.0, TieBreak::LowestIndex).unwrap();
        for h in 0..mdp.horizon() {
            for x in 0..mdp.n_states() {
                assert_abs_diff_eq!(t0.v[h][x], 0.0, epsilon = 0.0);
            }
        }
        // enormous β: every Q hits its ceiling H−h
        let t1 = agent.sweep(&mdp, 1e12, TieBreak::LowestIndex).unwrap();
        for h in 0..mdp.horizon() {
            let ceiling = (mdp.horizon() - h) as f64;
            for x in 0..mdp.n_states() {
                for a in 0..mdp.n_actions() {
                    assert_abs_diff_eq!(t1.q[h][x][a], ceiling, epsilon = 0.0);
                }
            }
        }
        // the padded top row v[H] is zero
        assert!(t1.v[mdp.horizon()].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn bonus_table_is_beta_independent_and_positive_on_fresh_data() {
        let mdp = small_world();
        let agent = KoviAgent::new(&mdp, &Kernel::linear(), Engine::Auto, 1.0).unwrap();
        let a = agent.sweep(&mdp, 0.3, TieBreak::LowestIndex).unwrap();
        let b = agent.sweep(&mdp, 7.0, TieBreak::LowestIndex).unwrap();
        assert_eq!(a.bonus, b.bonus);
        assert!(a.bonus[0][0][0] > 0.0);
    }

    #[test]
    fn targets_start_empty_and_equal_rewards_at_final_step() {
        let mdp = small_world();
        let mut agent = KoviAgent::new(&mdp, &Kernel::linear(), Engine::Auto, 1.0).unwrap();
        assert!(agent.targets(&mdp, 0, &vec![0.0; mdp.n_states()]).is_empty());

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let policy = Policy::Uniform;
        for t in 0..4 {
            let traj = rollout(&mdp, &policy, t, &mut rng).unwrap();
            agent.record_episode(&mdp, &traj).unwrap();
        }
        // at the last step the bootstrapped value is v[H] ≡ 0, so targets are rewards
        let h_last = mdp.horizon() - 1;
        let y = agent.targets(&mdp, h_last, &vec![0.0; mdp.n_states()]);
        assert_eq!(y.len(), 4);
        for (&(x, a, _), &target) in agent.visits[h_last].iter().zip(&y) {
            assert_abs_diff_eq!(target, mdp.reward(h_last, x, a), epsilon = 0.0);
        }
        // every target is bounded by reward + best possible next value
        let v_next = vec![1.5; mdp.n_states()];
        for target in agent.targets(&mdp, 0, &v_next) {
            assert!((0.0..=2.5).contains(&target));
        }
    }

    #[test]
    fn record_episode_grows_every_step_and_fills_the_ledger() {
        let mdp = small_world();
        let mut agent = KoviAgent::new(&mdp, &Kernel::linear(), Engine::Auto, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for t in 0..5 {
            for h in 0..mdp.horizon() {
                assert_eq!(agent.step_count(h), t);
            }
            let traj = rollout(&mdp, &Policy::Uniform, t, &mut rng).unwrap();
            let stats = agent.record_episode(&mdp, &traj).unwrap();
            assert_eq!(stats.len(), mdp.horizon());
        }
        for h in 0..mdp.horizon() {
            assert_eq!(agent.append_ledger(h).len(), 5);
            // ledger sum reproduces the regressor's cumulative information gain
            let sum: f64 = agent
                .append_ledger(h)
                .iter()
                .map(|s| s.info_gain_increment)
                .sum();
            assert_abs_diff_eq!(sum, agent.info_gain_per_step()[h], epsilon = 1e-10);
        }
    }

    #[test]
    fn mismatched_trajectory_length_is_rejected() {
        let mdp = small_world();
        let mut agent = KoviAgent::new(&mdp, &Kernel::linear(), Engine::Auto, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut traj = rollout(&mdp, &Policy::Uniform, 0, &mut rng).unwrap();
        traj.steps.pop();
        assert!(matches!(
            agent.record_episode(&mdp, &traj),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn invalid_lambda_and_beta_are_rejected() {
        let mdp = small_world();
        assert!(KoviAgent::new(&mdp, &Kernel::linear(), Engine::Auto, 0.0).is_err());
        assert!(KoviAgent::new(&mdp, &Kernel::linear(), Engine::Auto, f64::INFINITY).is_err());
        let agent = KoviAgent::new(&mdp, &Kernel::linear(), Engine::Auto, 1.0).unwrap();
        assert!(agent.sweep(&mdp, -0.1, TieBreak::LowestIndex).is_err());
        assert!(agent.sweep(&mdp, f64::NAN, TieBreak::LowestIndex).is_err());
    }
}
