//! The neural learner's relationship to its kernel limit: frozen features
//! must reproduce the kernel learner under the empirical tangent kernel, and
//! full training must stay close to it at large width.

use approx::assert_abs_diff_eq;
use kovi::{run_kovi, Engine, KoviConfig};
use mdp_sim::{make_linear_mdp, EpisodicMdp};
use novi::{empirical_kernel, run_novi, Activation, GdSettings, NoviConfig, TwoLayerNet};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture() -> EpisodicMdp {
    make_linear_mdp(3, 5, 2, 2, 77).unwrap().0
}

/// The (network-init, rollout) seeds `run_novi` derives from a run seed:
/// the first two draws of the seed-splitting stream.
fn split_seeds(run_seed: u64) -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(run_seed);
    (rng.next_u64(), rng.next_u64())
}

#[test]
fn frozen_features_reproduce_the_kernel_learner_exactly() {
    let mdp = fixture();
    let t_total = 12;
    let half_width = 128;
    let seed = 3;

    let frozen = run_novi(
        &mdp,
        &NoviConfig::new(t_total, Activation::Sine, half_width)
            .with_constant_beta(0.8)
            .with_frozen_features()
            .with_recorded_tables(),
        seed,
    )
    .unwrap();

    // the same network the run initialized, rebuilt from the split seed; the
    // kernel run must also draw its rollouts from the same derived stream
    let (net_seed, roll_seed) = split_seeds(seed);
    let net = TwoLayerNet::new(
        Activation::Sine,
        mdp.embedding_dim(),
        half_width,
        novi::InitScheme::Canonical,
        net_seed,
    )
    .unwrap();
    let kernel = empirical_kernel(&net);
    let kovi_run = run_kovi(
        &mdp,
        &kernel,
        &KoviConfig::new(t_total)
            .with_constant_beta(0.8)
            .with_engine(Engine::Dual)
            .with_recorded_tables(),
        roll_seed,
    )
    .unwrap();

    for (rn, rk) in frozen.records.iter().zip(&kovi_run.records) {
        let (tn, tk) = (rn.tables.as_ref().unwrap(), rk.tables.as_ref().unwrap());
        for h in 0..mdp.horizon() {
            for x in 0..mdp.n_states() {
                for a in 0..mdp.n_actions() {
                    assert_abs_diff_eq!(tn.q[h][x][a], tk.q[h][x][a], epsilon = 1e-6);
                    assert_abs_diff_eq!(tn.bonus[h][x][a], tk.bonus[h][x][a], epsilon = 1e-6);
                }
            }
        }
        assert_abs_diff_eq!(rn.instant_regret, rk.instant_regret, epsilon = 1e-6);
        assert_eq!(rn.trajectory.steps.len(), rk.trajectory.steps.len());
        // frozen mode never trains
        assert_abs_diff_eq!(rn.grad_norm_max, 0.0, epsilon = 0.0);
        assert_abs_diff_eq!(rn.param_distance_sq_max, 0.0, epsilon = 0.0);
    }
}

#[test]
fn full_training_matches_frozen_features_at_large_width() {
    let mdp = fixture();
    let t_total = 8;
    let seed = 10;
    let gd = GdSettings {
        step: None,
        max_iters: 1500,
        grad_tol: 1e-7,
    };
    let sup_gap = |half_width: usize| -> (f64, f64) {
        let full = run_novi(
            &mdp,
            &NoviConfig::new(t_total, Activation::Quadratic, half_width)
                .with_constant_beta(0.5)
                .with_gd(gd.clone())
                .with_recorded_tables(),
            seed,
        )
        .unwrap();
        let frozen = run_novi(
            &mdp,
            &NoviConfig::new(t_total, Activation::Quadratic, half_width)
                .with_constant_beta(0.5)
                .with_frozen_features()
                .with_recorded_tables(),
            seed,
        )
        .unwrap();
        let mut sup = 0.0f64;
        for (rf, rz) in full.records.iter().zip(&frozen.records) {
            let (tf, tz) = (rf.tables.as_ref().unwrap(), rz.tables.as_ref().unwrap());
            for h in 0..mdp.horizon() {
                for x in 0..mdp.n_states() {
                    for a in 0..mdp.n_actions() {
                        sup = sup.max((tf.q[h][x][a] - tz.q[h][x][a]).abs());
                    }
                }
            }
        }
        (sup, full.max_linearization_gap())
    };
    let (sup_small, gap_small) = sup_gap(64);
    let (sup_large, gap_large) = sup_gap(1024);
    // the kernel picture tightens with width, in both metrics
    assert!(
        sup_large < sup_small,
        "Q deviation should shrink with width: {sup_small} -> {sup_large}"
    );
    assert!(
        gap_large < gap_small,
        "linearization gap should shrink with width: {gap_small} -> {gap_large}"
    );
    assert!(sup_large < 0.1, "wide-net deviation too large: {sup_large}");
}

#[test]
fn full_runs_are_deterministic_and_stay_in_the_parameter_ball() {
    let mdp = fixture();
    let config = NoviConfig::new(6, Activation::Sine, 64).with_constant_beta(0.4);
    let a = run_novi(&mdp, &config, 21).unwrap();
    let b = run_novi(&mdp, &config, 21).unwrap();
    for (ra, rb) in a.records.iter().zip(&b.records) {
        assert_eq!(ra.trajectory, rb.trajectory);
        assert_eq!(ra.instant_regret.to_bits(), rb.instant_regret.to_bits());
        assert_eq!(ra.grad_norm_max.to_bits(), rb.grad_norm_max.to_bits());
    }
    assert!(a.param_ball_ok);
    assert!(a.final_cum_regret() <= (6 * mdp.horizon()) as f64 + 1e-9);
    // info gain as used by the bonuses is nondecreasing across episodes
    let mut prev = vec![0.0; mdp.horizon()];
    for r in &a.records {
        for (g, p) in r.info_gain_per_step.iter().zip(&prev) {
            assert!(*g >= *p - 1e-12);
        }
        prev.clone_from(&r.info_gain_per_step);
    }
}
