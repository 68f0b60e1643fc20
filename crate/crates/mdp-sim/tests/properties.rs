//! Property tests: dynamic-programming identities and generator contracts
//! hold on randomly generated environments.
#![allow(clippy::needless_range_loop)]

use mdp_sim::{
    apply_bellman, closure_certificate, exact_optimal_values, make_linear_mdp, occupancy,
    policy_values, rollout, EpisodicMdp, InitialStateRule, Policy,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Strategy: a small random tabular environment with one-hot-free random
/// embeddings, plus a random deterministic policy over it.
fn arb_mdp() -> impl Strategy<Value = (EpisodicMdp, Policy)> {
    (1usize..5, 1usize..4, 1usize..5, 1usize..4, any::<u64>()).prop_map(
        |(s, a, horizon, dim, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut gen = |n: usize| -> Vec<f64> {
                use rand::Rng;
                (0..n).map(|_| rng.gen::<f64>()).collect()
            };
            let embeddings = (0..s).map(|_| (0..a).map(|_| gen(dim)).collect()).collect();
            let rewards = (0..horizon).map(|_| (0..s).map(|_| gen(a)).collect()).collect();
            let transitions: Vec<Vec<Vec<Vec<f64>>>> = (0..horizon)
                .map(|_| {
                    (0..s)
                        .map(|_| {
                            (0..a)
                                .map(|_| {
                                    let mut row = gen(s);
                                    for v in &mut row {
                                        *v += 1e-3; // keep rows strictly positive
                                    }
                                    let total: f64 = row.iter().sum();
                                    row.iter_mut().for_each(|v| *v /= total);
                                    // Compensate rounding so the sum is exactly 1.
                                    let sum: f64 = row.iter().sum();
                                    row[0] += 1.0 - sum;
                                    row
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let mdp = EpisodicMdp::new(horizon, embeddings, rewards, transitions, InitialStateRule::Fixed(0))
                .expect("generated instance is valid");
            let table = (0..horizon)
                .map(|_| {
                    use rand::Rng;
                    (0..s).map(|_| rng.gen_range(0..a)).collect()
                })
                .collect();
            (mdp, Policy::Deterministic(table))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Optimal values respect the range implied by per-step rewards in [0, 1]
    // and satisfy both the max-consistency and the backward recursion.
    #[test]
    fn optimal_values_satisfy_bellman((mdp, _) in arb_mdp()) {
        let tables = exact_optimal_values(&mdp);
        let horizon = mdp.horizon();
        for h in 0..horizon {
            let remaining = (horizon - h) as f64;
            for x in 0..mdp.n_states() {
                let max = tables.q[h][x].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                prop_assert!((tables.v[h][x] - max).abs() < 1e-12);
                for a in 0..mdp.n_actions() {
                    let q = tables.q[h][x][a];
                    prop_assert!(q >= -1e-12 && q <= remaining + 1e-9, "q {q} range 0..{remaining}");
                }
            }
            let zero = vec![vec![0.0; mdp.n_actions()]; mdp.n_states()];
            let q_next = if h + 1 < horizon { &tables.q[h + 1] } else { &zero };
            let image = apply_bellman(&mdp, h, q_next).unwrap();
            for x in 0..mdp.n_states() {
                for a in 0..mdp.n_actions() {
                    prop_assert!((image[x][a] - tables.q[h][x][a]).abs() < 1e-10);
                }
            }
        }
    }

    // The greedy policy extracted from optimal tables achieves them, and no
    // policy beats them.
    #[test]
    fn greedy_is_optimal_and_others_are_not_better((mdp, policy) in arb_mdp()) {
        let optimal = exact_optimal_values(&mdp);
        let greedy_eval = policy_values(&mdp, &optimal.greedy_policy()).unwrap();
        let other_eval = policy_values(&mdp, &policy).unwrap();
        let uniform_eval = policy_values(&mdp, &Policy::Uniform).unwrap();
        for x in 0..mdp.n_states() {
            prop_assert!((greedy_eval.v[0][x] - optimal.v[0][x]).abs() < 1e-10);
            prop_assert!(other_eval.v[0][x] <= optimal.v[0][x] + 1e-10);
            prop_assert!(uniform_eval.v[0][x] <= optimal.v[0][x] + 1e-10);
        }
    }

    // Occupancy rows are probability distributions.
    #[test]
    fn occupancy_rows_are_distributions((mdp, policy) in arb_mdp()) {
        for policy in [&policy, &Policy::Uniform] {
            let occ = occupancy(&mdp, policy, 0).unwrap();
            prop_assert_eq!(occ.len(), mdp.horizon());
            for row in &occ {
                let sum: f64 = row.iter().sum();
                prop_assert!((sum - 1.0).abs() < 1e-9, "row sum {sum}");
                prop_assert!(row.iter().all(|&p| p >= -1e-15));
            }
        }
    }

    // Rollouts are reproducible and consistent with the tables they visit.
    #[test]
    fn rollouts_reproduce_and_account((mdp, policy) in arb_mdp()) {
        let t1 = rollout(&mdp, &policy, 3, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        let t2 = rollout(&mdp, &policy, 3, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        prop_assert_eq!(&t1, &t2);
        prop_assert_eq!(t1.steps.len(), mdp.horizon());
        let total: f64 = t1.steps.iter().map(|s| s.reward).sum();
        prop_assert!((total - t1.ret).abs() < 1e-12);
        for (h, step) in t1.steps.iter().enumerate() {
            prop_assert_eq!(step.reward, mdp.reward(h, step.state, step.action));
            prop_assert!(mdp.transition_row(h, step.state, step.action)[step.next_state] > 0.0);
        }
    }

    // Generated low-rank environments validate and certify closure.
    #[test]
    fn linear_generator_produces_closed_instances(
        d in 1usize..5,
        extra in 0usize..4,
        a in 1usize..4,
        horizon in 1usize..4,
        seed in any::<u64>(),
    ) {
        // Guarantee d ≤ s·a by construction.
        let s = d + extra;
        let (mdp, spec) = make_linear_mdp(d, s, a, horizon, seed).unwrap();
        prop_assert_eq!(spec.feature_dim, d);
        let cert = closure_certificate(&mdp, 5, seed ^ 0x9e3779b9).unwrap();
        prop_assert!(cert.max_residual < 1e-8, "residual {}", cert.max_residual);
    }
}
