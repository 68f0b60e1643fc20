use crate::error::{Error, Result};
use crate::mdp::EpisodicMdp;
use crate::policy::Policy;

/// State-action and state value tables over a whole episode.
///
/// `q[h][x][a]` covers steps `0..H`; `v[h][x]` covers `0..=H` with the
/// terminal row `v[H]` identically zero. For tables produced by
/// [`exact_optimal_values`], `v[h][x] = max_a q[h][x][a]`; for tables
/// produced by [`policy_values`], `v` is the policy-weighted average instead.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueTables {
    pub q: Vec<Vec<Vec<f64>>>,
    pub v: Vec<Vec<f64>>,
}

impl ValueTables {
    /// Greedy deterministic policy: `argmax_a q[h][x][a]`, first maximum on
    /// ties.
    pub fn greedy_policy(&self) -> Policy {
        Policy::Deterministic(
            self.q
                .iter()
                .map(|per_state| per_state.iter().map(|row| argmax_first(row)).collect())
                .collect(),
        )
    }
}

/// Index of the first maximal entry.
pub fn argmax_first(row: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in row.iter().enumerate().skip(1) {
        if v > row[best] {
            best = i;
        }
    }
    best
}

/// One backward step of the optimality recursion: given a state-action table
/// for step `h+1`, produce the step-`h` table
/// `r_h(x,a) + Σ_{x'} P_h(x'|x,a) · max_{a'} q_next[x'][a']`.
///
/// # Errors
///
/// [`Error::ShapeMismatch`] if `q_next` does not cover every state-action
/// pair, or `h` is out of range.
pub fn apply_bellman(mdp: &EpisodicMdp, h: usize, q_next: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if h >= mdp.horizon() {
        return Err(Error::ShapeMismatch(format!(
            "step {h} out of range for horizon {}",
            mdp.horizon()
        )));
    }
    if q_next.len() != mdp.n_states() || q_next.iter().any(|r| r.len() != mdp.n_actions()) {
        return Err(Error::ShapeMismatch(format!(
            "q_next must be {}×{}",
            mdp.n_states(),
            mdp.n_actions()
        )));
    }
    let v_next: Vec<f64> = q_next.iter().map(|row| row[argmax_first(row)]).collect();
    Ok((0..mdp.n_states())
        .map(|x| {
            (0..mdp.n_actions())
                .map(|a| mdp.reward(h, x, a) + mdp.expected_next_value(h, x, a, &v_next))
                .collect()
        })
        .collect())
}

/// Exact optimal value tables by backward induction from the zero terminal
/// value.
pub fn exact_optimal_values(mdp: &EpisodicMdp) -> ValueTables {
    let (horizon, s, a) = (mdp.horizon(), mdp.n_states(), mdp.n_actions());
    let mut q = vec![vec![vec![0.0; a]; s]; horizon];
    let mut v = vec![vec![0.0; s]; horizon + 1];
    for h in (0..horizon).rev() {
        for x in 0..s {
            for act in 0..a {
                q[h][x][act] = mdp.reward(h, x, act) + mdp.expected_next_value(h, x, act, &v[h + 1]);
            }
            v[h][x] = q[h][x][argmax_first(&q[h][x])];
        }
    }
    ValueTables { q, v }
}

/// Exact evaluation of a (possibly stochastic) policy:
/// `qπ[h][x][a] = r + P vπ[h+1]` and `vπ[h][x] = Σ_a π(a|h,x) · qπ[h][x][a]`.
///
/// # Errors
///
/// [`Error::PolicyUndefined`] if the policy does not cover some `(h, x)`.
pub fn policy_values(mdp: &EpisodicMdp, policy: &Policy) -> Result<ValueTables> {
    let (horizon, s, a) = (mdp.horizon(), mdp.n_states(), mdp.n_actions());
    let mut q = vec![vec![vec![0.0; a]; s]; horizon];
    let mut v = vec![vec![0.0; s]; horizon + 1];
    for h in (0..horizon).rev() {
        for x in 0..s {
            for act in 0..a {
                q[h][x][act] = mdp.reward(h, x, act) + mdp.expected_next_value(h, x, act, &v[h + 1]);
            }
            let probs = policy.probs(h, x, a)?;
            v[h][x] = probs.iter().zip(&q[h][x]).map(|(p, qv)| p * qv).sum();
        }
    }
    Ok(ValueTables { q, v })
}

/// State-visitation distribution under a policy, conditioned on starting in
/// `x1`: `occ[h][x] = P(x_h = x | x_0 = x1, policy)` for `h ∈ 0..H`.
///
/// # Errors
///
/// [`Error::PolicyUndefined`] or [`Error::InvalidParameter`] for a start
/// state out of range.
pub fn occupancy(mdp: &EpisodicMdp, policy: &Policy, x1: usize) -> Result<Vec<Vec<f64>>> {
    let (horizon, s, a) = (mdp.horizon(), mdp.n_states(), mdp.n_actions());
    if x1 >= s {
        return Err(Error::InvalidParameter(format!("start state {x1} out of range (n_states = {s})")));
    }
    let mut occ = vec![vec![0.0; s]; horizon];
    occ[0][x1] = 1.0;
    for h in 0..horizon - 1 {
        for x in 0..s {
            let mass = occ[h][x];
            if mass == 0.0 {
                continue;
            }
            let probs = policy.probs(h, x, a)?;
            for (act, &pa) in probs.iter().enumerate() {
                if pa == 0.0 {
                    continue;
                }
                for (x_next, &p) in mdp.transition_row(h, x, act).iter().enumerate() {
                    occ[h + 1][x_next] += mass * pa * p;
                }
            }
        }
    }
    Ok(occ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mdp::tests::chain;
    use crate::mdp::{one_hot_embeddings, InitialStateRule};
    use approx::assert_abs_diff_eq;

    #[test]
    fn horizon_one_reduces_to_rewards() {
        let m = chain(1);
        let t = exact_optimal_values(&m);
        for x in 0..2 {
            for a in 0..2 {
                assert_eq!(t.q[0][x][a], m.reward(0, x, a));
            }
        }
    }

    // Hand backward induction on the two-state chain (action a moves to
    // state a and pays a): V*_2 = 1 everywhere, Q*_1(x, a) = a + 1, V*_1 = 2.
    #[test]
    fn chain_hand_values() {
        let m = chain(2);
        let t = exact_optimal_values(&m);
        for x in 0..2 {
            assert_eq!(t.v[1][x], 1.0);
            assert_eq!(t.q[0][x][0], 1.0);
            assert_eq!(t.q[0][x][1], 2.0);
            assert_eq!(t.v[0][x], 2.0);
        }
        assert_eq!(t.v[2], vec![0.0, 0.0]);
        let greedy = t.greedy_policy();
        assert_eq!(greedy, Policy::Deterministic(vec![vec![1, 1]; 2]));
    }

    #[test]
    fn bellman_on_zero_table_returns_rewards() {
        let m = chain(3);
        let zero = vec![vec![0.0; 2]; 2];
        let out = apply_bellman(&m, 1, &zero).unwrap();
        for x in 0..2 {
            for a in 0..2 {
                assert_eq!(out[x][a], m.reward(1, x, a));
            }
        }
    }

    #[test]
    fn bellman_iterated_from_zero_matches_backward_induction() {
        let m = stochastic_fixture();
        let oracle = exact_optimal_values(&m);
        let mut q = vec![vec![0.0; m.n_actions()]; m.n_states()];
        for h in (0..m.horizon()).rev() {
            q = apply_bellman(&m, h, &q).unwrap();
            for x in 0..m.n_states() {
                for a in 0..m.n_actions() {
                    assert_abs_diff_eq!(q[x][a], oracle.q[h][x][a], epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn bellman_rejects_bad_shapes() {
        let m = chain(2);
        assert!(matches!(apply_bellman(&m, 0, &vec![vec![0.0; 2]; 1]), Err(Error::ShapeMismatch(_))));
        assert!(matches!(apply_bellman(&m, 5, &vec![vec![0.0; 2]; 2]), Err(Error::ShapeMismatch(_))));
    }

    // Uniform policy on the chain: V_2 = 1/2, Q_1(x,a) = a + 1/2, V_1 = 1.
    #[test]
    fn uniform_policy_hand_values() {
        let m = chain(2);
        let t = policy_values(&m, &Policy::Uniform).unwrap();
        for x in 0..2 {
            assert_eq!(t.v[1][x], 0.5);
            assert_eq!(t.q[0][x][1], 1.5);
            assert_eq!(t.v[0][x], 1.0);
        }
    }

    #[test]
    fn greedy_policy_recovers_optimal_value() {
        let m = stochastic_fixture();
        let opt = exact_optimal_values(&m);
        let eval = policy_values(&m, &opt.greedy_policy()).unwrap();
        for x in 0..m.n_states() {
            assert_abs_diff_eq!(eval.v[0][x], opt.v[0][x], epsilon = 1e-12);
        }
    }

    #[test]
    fn occupancy_follows_deterministic_path() {
        let m = chain(3);
        let go = Policy::Deterministic(vec![vec![1, 1]; 3]);
        let occ = occupancy(&m, &go, 0).unwrap();
        assert_eq!(occ[0], vec![1.0, 0.0]);
        assert_eq!(occ[1], vec![0.0, 1.0]);
        assert_eq!(occ[2], vec![0.0, 1.0]);

        let occ_u = occupancy(&m, &Policy::Uniform, 0).unwrap();
        assert_eq!(occ_u[1], vec![0.5, 0.5]);
        assert_eq!(occ_u[2], vec![0.5, 0.5]);
    }

    #[test]
    fn occupancy_rejects_bad_start() {
        let m = chain(2);
        assert!(occupancy(&m, &Policy::Uniform, 9).is_err());
    }

    /// Small stochastic 3-state, 2-action, H=3 fixture with hand-picked rows.
    fn stochastic_fixture() -> EpisodicMdp {
        let emb = one_hot_embeddings(3, 2);
        let rewards = vec![
            vec![vec![0.1, 0.9], vec![0.5, 0.2], vec![0.0, 1.0]],
            vec![vec![0.3, 0.3], vec![0.8, 0.1], vec![0.6, 0.4]],
            vec![vec![1.0, 0.0], vec![0.2, 0.7], vec![0.5, 0.5]],
        ];
        let rows = |a: [[f64; 3]; 2]| vec![a[0].to_vec(), a[1].to_vec()];
        let transitions = vec![
            vec![
                rows([[0.2, 0.3, 0.5], [1.0, 0.0, 0.0]]),
                rows([[0.0, 0.5, 0.5], [0.1, 0.8, 0.1]]),
                rows([[0.3, 0.3, 0.4], [0.0, 0.0, 1.0]]),
            ],
            vec![
                rows([[0.5, 0.5, 0.0], [0.25, 0.25, 0.5]]),
                rows([[0.9, 0.05, 0.05], [0.2, 0.2, 0.6]]),
                rows([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]),
            ],
            vec![
                rows([[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], [0.6, 0.2, 0.2]]),
                rows([[0.0, 0.0, 1.0], [0.5, 0.0, 0.5]]),
                rows([[0.7, 0.2, 0.1], [0.1, 0.1, 0.8]]),
            ],
        ];
        EpisodicMdp::new(3, emb, rewards, transitions, InitialStateRule::Fixed(0)).unwrap()
    }
}
