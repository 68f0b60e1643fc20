use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Tolerance for transition rows summing to one.
pub const ROW_SUM_TOL: f64 = 1e-12;

/// How the environment picks the first state of each episode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialStateRule {
    /// Every episode starts in the same state.
    Fixed(usize),
    /// Episode `t` starts in `sequence[t % len]`.
    Cycle(Vec<usize>),
}

impl InitialStateRule {
    /// A reproducible uniformly-random start sequence of the given length.
    pub fn seeded(seed: u64, n_states: usize, len: usize) -> Result<Self> {
        if n_states == 0 || len == 0 {
            return Err(Error::InvalidParameter(
                "seeded start sequence needs n_states ≥ 1 and len ≥ 1".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(Self::Cycle((0..len).map(|_| rng.gen_range(0..n_states)).collect()))
    }

    /// Start state of episode `t` (0-indexed).
    pub fn state(&self, t: usize) -> usize {
        match self {
            Self::Fixed(x) => *x,
            Self::Cycle(seq) => seq[t % seq.len()],
        }
    }

    fn max_state(&self) -> usize {
        match self {
            Self::Fixed(x) => *x,
            Self::Cycle(seq) => seq.iter().copied().max().unwrap_or(0),
        }
    }
}

/// A finite episodic MDP with a fixed horizon.
///
/// States and actions are `0..n_states` and `0..n_actions`. Each state-action
/// pair carries an embedding vector — the input downstream function
/// approximators see — while rewards and transitions are explicit tables, so
/// exact dynamic programming is always available:
///
/// * `rewards[h][x][a]` ∈ [0, 1]
/// * `transitions[h][x][a][x']` is a probability row over next states
/// * `embeddings[x][a]` is a fixed-dimension real vector (step-independent)
///
/// Instances are immutable after construction; all invariants are checked by
/// [`EpisodicMdp::new`].
#[derive(Debug, Clone, PartialEq)]
pub struct EpisodicMdp {
    horizon: usize,
    embeddings: Vec<Vec<Vec<f64>>>,
    rewards: Vec<Vec<Vec<f64>>>,
    transitions: Vec<Vec<Vec<Vec<f64>>>>,
    initial_rule: InitialStateRule,
}

impl EpisodicMdp {
    /// Build and validate an environment.
    ///
    /// # Errors
    ///
    /// Rejects empty state/action sets, horizon 0, ragged tables, rewards
    /// outside [0, 1], transition rows that are negative or do not sum to 1
    /// within [`ROW_SUM_TOL`], and start rules referencing missing states.
    pub fn new(
        horizon: usize,
        embeddings: Vec<Vec<Vec<f64>>>,
        rewards: Vec<Vec<Vec<f64>>>,
        transitions: Vec<Vec<Vec<Vec<f64>>>>,
        initial_rule: InitialStateRule,
    ) -> Result<Self> {
        let mdp = Self { horizon, embeddings, rewards, transitions, initial_rule };
        mdp.validate()?;
        Ok(mdp)
    }

    /// Replace the start rule (validating it against the state set).
    pub fn with_initial_rule(mut self, rule: InitialStateRule) -> Result<Self> {
        if rule.max_state() >= self.n_states() {
            return Err(Error::InvalidParameter(format!(
                "start rule references state {} but there are only {}",
                rule.max_state(),
                self.n_states()
            )));
        }
        self.initial_rule = rule;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::InvalidParameter("horizon must be ≥ 1".into()));
        }
        let s = self.embeddings.len();
        if s == 0 {
            return Err(Error::InvalidParameter("need at least one state".into()));
        }
        let a = self.embeddings[0].len();
        if a == 0 {
            return Err(Error::InvalidParameter("need at least one action".into()));
        }
        let dim = self.embeddings[0][0].len();
        if dim == 0 {
            return Err(Error::InvalidParameter("embedding dimension must be ≥ 1".into()));
        }
        for (x, row) in self.embeddings.iter().enumerate() {
            if row.len() != a {
                return Err(Error::ShapeMismatch(format!("state {x} has {} action embeddings, expected {a}", row.len())));
            }
            for (act, e) in row.iter().enumerate() {
                if e.len() != dim {
                    return Err(Error::ShapeMismatch(format!(
                        "embedding ({x},{act}) has dim {}, expected {dim}",
                        e.len()
                    )));
                }
                if e.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidParameter(format!("embedding ({x},{act}) has non-finite entries")));
                }
            }
        }
        if self.rewards.len() != self.horizon || self.transitions.len() != self.horizon {
            return Err(Error::ShapeMismatch(format!(
                "reward/transition tables cover {} / {} steps, expected {}",
                self.rewards.len(),
                self.transitions.len(),
                self.horizon
            )));
        }
        for h in 0..self.horizon {
            if self.rewards[h].len() != s || self.transitions[h].len() != s {
                return Err(Error::ShapeMismatch(format!("step {h}: tables do not cover all {s} states")));
            }
            for x in 0..s {
                if self.rewards[h][x].len() != a || self.transitions[h][x].len() != a {
                    return Err(Error::ShapeMismatch(format!("step {h}, state {x}: tables do not cover all {a} actions")));
                }
                for act in 0..a {
                    let r = self.rewards[h][x][act];
                    if !(0.0..=1.0).contains(&r) {
                        return Err(Error::InvalidParameter(format!(
                            "reward at (h={h}, x={x}, a={act}) is {r}, must lie in [0, 1]"
                        )));
                    }
                    let row = &self.transitions[h][x][act];
                    if row.len() != s {
                        return Err(Error::ShapeMismatch(format!(
                            "transition row (h={h}, x={x}, a={act}) has {} entries, expected {s}",
                            row.len()
                        )));
                    }
                    let mut sum = 0.0;
                    for &p in row {
                        if p.is_nan() || p < 0.0 {
                            return Err(Error::InvalidParameter(format!(
                                "transition row (h={h}, x={x}, a={act}) has negative or NaN entry {p}"
                            )));
                        }
                        sum += p;
                    }
                    if (sum - 1.0).abs() > ROW_SUM_TOL {
                        return Err(Error::InvalidParameter(format!(
                            "transition row (h={h}, x={x}, a={act}) sums to {sum}, must be 1 within {ROW_SUM_TOL:e}"
                        )));
                    }
                }
            }
        }
        if self.initial_rule.max_state() >= s {
            return Err(Error::InvalidParameter(format!(
                "start rule references state {} but there are only {s}",
                self.initial_rule.max_state()
            )));
        }
        Ok(())
    }

    /// Number of steps per episode.
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Number of states.
    pub fn n_states(&self) -> usize {
        self.embeddings.len()
    }

    /// Number of actions.
    pub fn n_actions(&self) -> usize {
        self.embeddings[0].len()
    }

    /// Dimension of the state-action embeddings.
    pub fn embedding_dim(&self) -> usize {
        self.embeddings[0][0].len()
    }

    /// Embedding of the pair `(x, a)`.
    pub fn embed(&self, x: usize, a: usize) -> &[f64] {
        &self.embeddings[x][a]
    }

    /// Reward at step `h` (0-indexed) for the pair `(x, a)`.
    pub fn reward(&self, h: usize, x: usize, a: usize) -> f64 {
        self.rewards[h][x][a]
    }

    /// Probability row over next states at step `h` for the pair `(x, a)`.
    pub fn transition_row(&self, h: usize, x: usize, a: usize) -> &[f64] {
        &self.transitions[h][x][a]
    }

    /// Expected value of `v_next` under the next-state distribution:
    /// `Σ_{x'} P_h(x'|x,a) · v_next[x']`.
    ///
    /// # Panics
    ///
    /// Panics if `v_next.len() != self.n_states()`.
    pub fn expected_next_value(&self, h: usize, x: usize, a: usize, v_next: &[f64]) -> f64 {
        assert_eq!(v_next.len(), self.n_states(), "value vector must cover all states");
        self.transitions[h][x][a].iter().zip(v_next).map(|(p, v)| p * v).sum()
    }

    /// Start state of episode `t` (0-indexed).
    pub fn initial_state(&self, t: usize) -> usize {
        self.initial_rule.state(t)
    }

    /// The configured start rule.
    pub fn initial_rule(&self) -> &InitialStateRule {
        &self.initial_rule
    }
}

/// One-hot embeddings indexed by the flattened pair `(x, a)`, dimension
/// `n_states · n_actions`. With these embeddings any tabular MDP is exactly
/// linear in its features.
pub fn one_hot_embeddings(n_states: usize, n_actions: usize) -> Vec<Vec<Vec<f64>>> {
    let dim = n_states * n_actions;
    (0..n_states)
        .map(|x| {
            (0..n_actions)
                .map(|a| {
                    let mut e = vec![0.0; dim];
                    e[x * n_actions + a] = 1.0;
                    e
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Deterministic two-state testbed: action `a` moves to state `a` and
    /// pays `a`, at every step.
    pub(crate) fn chain(horizon: usize) -> EpisodicMdp {
        let emb = one_hot_embeddings(2, 2);
        let rewards = vec![vec![vec![0.0, 1.0]; 2]; horizon];
        let mut row = vec![vec![vec![vec![0.0; 2]; 2]; 2]; horizon];
        for h in 0..horizon {
            for x in 0..2 {
                for a in 0..2 {
                    row[h][x][a][a] = 1.0;
                }
            }
        }
        EpisodicMdp::new(horizon, emb, rewards, row, InitialStateRule::Fixed(0)).unwrap()
    }

    #[test]
    fn accessors_report_shapes() {
        let m = chain(3);
        assert_eq!(m.horizon(), 3);
        assert_eq!(m.n_states(), 2);
        assert_eq!(m.n_actions(), 2);
        assert_eq!(m.embedding_dim(), 4);
        assert_eq!(m.reward(1, 0, 1), 1.0);
        assert_eq!(m.transition_row(0, 1, 0), &[1.0, 0.0]);
        assert_eq!(m.expected_next_value(0, 0, 1, &[5.0, 7.0]), 7.0);
    }

    #[test]
    fn validation_rejects_bad_tables() {
        let emb = one_hot_embeddings(2, 1);
        let ok_r = vec![vec![vec![0.5]; 2]];
        let ok_p = vec![vec![vec![vec![0.5, 0.5]]; 2]];

        let bad_r = vec![vec![vec![1.5]; 2]];
        assert!(matches!(
            EpisodicMdp::new(1, emb.clone(), bad_r, ok_p.clone(), InitialStateRule::Fixed(0)),
            Err(Error::InvalidParameter(_))
        ));

        let bad_row = vec![vec![vec![vec![0.6, 0.6]]; 2]];
        assert!(matches!(
            EpisodicMdp::new(1, emb.clone(), ok_r.clone(), bad_row, InitialStateRule::Fixed(0)),
            Err(Error::InvalidParameter(_))
        ));

        let neg_row = vec![vec![vec![vec![1.2, -0.2]]; 2]];
        assert!(matches!(
            EpisodicMdp::new(1, emb.clone(), ok_r.clone(), neg_row, InitialStateRule::Fixed(0)),
            Err(Error::InvalidParameter(_))
        ));

        assert!(matches!(
            EpisodicMdp::new(0, emb.clone(), vec![], vec![], InitialStateRule::Fixed(0)),
            Err(Error::InvalidParameter(_))
        ));

        assert!(matches!(
            EpisodicMdp::new(1, emb, ok_r, ok_p, InitialStateRule::Fixed(7)),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn validation_rejects_ragged_embeddings() {
        let mut emb = one_hot_embeddings(2, 1);
        emb[1][0].pop();
        let r = vec![vec![vec![0.5]; 2]];
        let p = vec![vec![vec![vec![0.5, 0.5]]; 2]];
        assert!(matches!(
            EpisodicMdp::new(1, emb, r, p, InitialStateRule::Fixed(0)),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn start_rules_cycle_and_fix() {
        let m = chain(2);
        assert_eq!(m.initial_state(0), 0);
        assert_eq!(m.initial_state(17), 0);

        let m = m.with_initial_rule(InitialStateRule::Cycle(vec![1, 0, 0])).unwrap();
        assert_eq!(
            (0..6).map(|t| m.initial_state(t)).collect::<Vec<_>>(),
            vec![1, 0, 0, 1, 0, 0]
        );

        let seeded = InitialStateRule::seeded(9, 2, 5).unwrap();
        let again = InitialStateRule::seeded(9, 2, 5).unwrap();
        assert_eq!(seeded, again);

        assert!(chain(2).with_initial_rule(InitialStateRule::Fixed(2)).is_err());
    }

    #[test]
    fn one_hot_embeddings_are_orthonormal() {
        let e = one_hot_embeddings(3, 2);
        for x in 0..3 {
            for a in 0..2 {
                let v = &e[x][a];
                assert_eq!(v.iter().sum::<f64>(), 1.0);
                assert_eq!(v[x * 2 + a], 1.0);
            }
        }
    }
}
