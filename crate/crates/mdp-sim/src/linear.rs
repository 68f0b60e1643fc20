use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dp::apply_bellman;
use crate::error::{Error, Result};
use crate::mdp::{EpisodicMdp, InitialStateRule};

/// Retry budget for the randomized environment constructor.
const CONSTRUCTION_RETRIES: usize = 100;

/// The function class an environment constructor certifies compatibility
/// with: a named kernel over the state-action embeddings, with its feature
/// dimension and (when the kernel has one) finite spectral rank.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct KernelSpec {
    pub name: String,
    pub feature_dim: usize,
    /// `Some(rank)` when the kernel has exactly `rank` nonzero eigenvalues.
    pub finite_spectrum_rank: Option<usize>,
}

/// Options for [`make_linear_mdp_with`].
#[derive(Debug, Clone)]
pub struct LinearMdpOptions {
    /// Replace each stored embedding by its unit-norm copy. Dynamics and
    /// rewards are unchanged (they are built from the raw simplex weights),
    /// but Bellman images are then only *approximately* linear in the stored
    /// embeddings — useful when downstream kernels are defined on the
    /// sphere. Off by default.
    pub sphere_normalize: bool,
    /// Start rule for the generated environment.
    pub initial_rule: InitialStateRule,
}

impl Default for LinearMdpOptions {
    fn default() -> Self {
        Self { sphere_normalize: false, initial_rule: InitialStateRule::Fixed(0) }
    }
}

/// Construct a `d`-dimensional low-rank environment in which rewards and
/// transition rows are exactly linear in the state-action embeddings:
///
/// * `φ(x, a)` is drawn uniformly from the probability simplex in `R^d`,
/// * `r_h(x, a) = φ(x, a)ᵀ θ_h` with `θ_h ∈ [0, 1]^d`, hence `r ∈ [0, 1]`,
/// * `P_h(·|x, a) = Σ_i φ_i(x, a) · M_h[i][·]` with each `M_h[i][·]` a
///   probability row over states — a convex combination of distributions,
///   hence itself a distribution.
///
/// Because every Bellman image `r_h + P_h v` is again linear in `φ`, value
/// iteration with the linear kernel over these embeddings incurs no
/// approximation error; [`closure_certificate`] measures this numerically.
///
/// Returns the environment together with the kernel it is built for (the
/// linear kernel, `d` nonzero eigenvalues).
///
/// # Errors
///
/// `d` must satisfy `1 ≤ d ≤ n_states · n_actions`; construction errors out
/// if no valid instance is produced within the retry budget (the simplex
/// construction succeeds on the first draw in practice).
pub fn make_linear_mdp(
    d: usize,
    n_states: usize,
    n_actions: usize,
    horizon: usize,
    seed: u64,
) -> Result<(EpisodicMdp, KernelSpec)> {
    make_linear_mdp_with(d, n_states, n_actions, horizon, seed, &LinearMdpOptions::default())
}

/// [`make_linear_mdp`] with explicit options.
pub fn make_linear_mdp_with(
    d: usize,
    n_states: usize,
    n_actions: usize,
    horizon: usize,
    seed: u64,
    options: &LinearMdpOptions,
) -> Result<(EpisodicMdp, KernelSpec)> {
    if d == 0 || n_states == 0 || n_actions == 0 || horizon == 0 {
        return Err(Error::InvalidParameter(
            "d, n_states, n_actions and horizon must all be ≥ 1".into(),
        ));
    }
    if d > n_states * n_actions {
        return Err(Error::InvalidParameter(format!(
            "embedding dimension {d} exceeds the number of state-action pairs {}",
            n_states * n_actions
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_err = None;
    for _ in 0..CONSTRUCTION_RETRIES {
        match draw_instance(d, n_states, n_actions, horizon, options, &mut rng) {
            Ok(mdp) => {
                let spec = KernelSpec {
                    name: "linear".to_string(),
                    feature_dim: d,
                    finite_spectrum_rank: Some(d),
                };
                return Ok((mdp, spec));
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(Error::Construction(format!(
        "no valid instance within {CONSTRUCTION_RETRIES} attempts; last error: {}",
        last_err.expect("at least one attempt was made")
    )))
}

fn draw_instance(
    d: usize,
    n_states: usize,
    n_actions: usize,
    horizon: usize,
    options: &LinearMdpOptions,
    rng: &mut ChaCha8Rng,
) -> Result<EpisodicMdp> {
    // Uniform simplex weights per state-action pair.
    let phi: Vec<Vec<Vec<f64>>> = (0..n_states)
        .map(|_| (0..n_actions).map(|_| simplex_point(d, rng)).collect())
        .collect();

    // Per-step mixing rows (each a distribution over states) and reward
    // coefficients in [0, 1].
    let mut rewards = vec![vec![vec![0.0; n_actions]; n_states]; horizon];
    let mut transitions = vec![vec![vec![vec![0.0; n_states]; n_actions]; n_states]; horizon];
    for h in 0..horizon {
        let theta: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
        let mixing: Vec<Vec<f64>> = (0..d).map(|_| simplex_point(n_states, rng)).collect();
        for x in 0..n_states {
            for a in 0..n_actions {
                let w = &phi[x][a];
                rewards[h][x][a] = w.iter().zip(&theta).map(|(wi, ti)| wi * ti).sum();
                for x_next in 0..n_states {
                    transitions[h][x][a][x_next] =
                        (0..d).map(|i| w[i] * mixing[i][x_next]).sum();
                }
            }
        }
    }

    let embeddings = if options.sphere_normalize {
        phi.into_iter()
            .map(|per_state| {
                per_state
                    .into_iter()
                    .map(|e| {
                        let norm = e.iter().map(|v| v * v).sum::<f64>().sqrt();
                        e.into_iter().map(|v| v / norm).collect()
                    })
                    .collect()
            })
            .collect()
    } else {
        phi
    };

    EpisodicMdp::new(horizon, embeddings, rewards, transitions, options.initial_rule.clone())
}

/// Uniform draw from the probability simplex (normalized unit-rate
/// exponentials).
fn simplex_point(dim: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut e: Vec<f64> = (0..dim).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let sum: f64 = e.iter().sum();
    for v in &mut e {
        *v /= sum;
    }
    e
}

/// Numerical certificate that Bellman images stay in the span of the
/// embeddings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosureCertificate {
    /// Largest entrywise least-squares residual over all probe tables and
    /// steps.
    pub max_residual: f64,
    /// Largest Euclidean norm of the recovered coefficient vector.
    pub max_coeff_norm: f64,
}

/// For `n_tables` random state-action tables with entries in
/// `[0, horizon]`, apply one backward step at every `h` and least-squares
/// project the image onto the span of the embeddings. Exactly-linear
/// environments yield residuals at rounding level; coefficient norms stay
/// below `(H + 1)·√d` by construction.
pub fn closure_certificate(mdp: &EpisodicMdp, n_tables: usize, seed: u64) -> Result<ClosureCertificate> {
    let (s, a, d) = (mdp.n_states(), mdp.n_actions(), mdp.embedding_dim());
    let mut design = DMatrix::zeros(s * a, d);
    for x in 0..s {
        for act in 0..a {
            for (i, &v) in mdp.embed(x, act).iter().enumerate() {
                design[(x * a + act, i)] = v;
            }
        }
    }
    let svd = design.clone().svd(true, true);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cert = ClosureCertificate { max_residual: 0.0, max_coeff_norm: 0.0 };
    let ceiling = mdp.horizon() as f64;
    for _ in 0..n_tables {
        let probe: Vec<Vec<f64>> =
            (0..s).map(|_| (0..a).map(|_| ceiling * rng.gen::<f64>()).collect()).collect();
        for h in 0..mdp.horizon() {
            let image = apply_bellman(mdp, h, &probe)?;
            let y = DVector::from_iterator(s * a, image.iter().flatten().copied());
            let coeff = svd
                .solve(&y, 1e-12)
                .map_err(|e| Error::Construction(format!("least-squares solve failed: {e}")))?;
            let residual = (&design * &coeff - &y).amax();
            cert.max_residual = cert.max_residual.max(residual);
            cert.max_coeff_norm = cert.max_coeff_norm.max(coeff.norm());
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mdp::one_hot_embeddings;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rows_are_stochastic_and_rewards_bounded() {
        let (mdp, spec) = make_linear_mdp(5, 7, 3, 4, 11).unwrap();
        assert_eq!(spec, KernelSpec {
            name: "linear".into(),
            feature_dim: 5,
            finite_spectrum_rank: Some(5)
        });
        assert_eq!(mdp.embedding_dim(), 5);
        for h in 0..4 {
            for x in 0..7 {
                for a in 0..3 {
                    let row = mdp.transition_row(h, x, a);
                    let sum: f64 = row.iter().sum();
                    assert!((sum - 1.0).abs() < 1e-12, "row sum {sum}");
                    assert!(row.iter().all(|&p| p >= 0.0));
                    let r = mdp.reward(h, x, a);
                    assert!((0.0..=1.0).contains(&r));
                }
            }
        }
        // Simplex embeddings: nonnegative, unit mass.
        for x in 0..7 {
            for a in 0..3 {
                let e = mdp.embed(x, a);
                assert!((e.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                assert!(e.iter().all(|&v| v >= 0.0));
            }
        }
    }

    #[test]
    fn bellman_images_stay_in_span() {
        let (mdp, _) = make_linear_mdp(6, 8, 3, 3, 5).unwrap();
        let cert = closure_certificate(&mdp, 20, 99).unwrap();
        assert!(cert.max_residual < 1e-8, "residual {}", cert.max_residual);
        let bound = (mdp.horizon() as f64 + 1.0) * (mdp.embedding_dim() as f64).sqrt();
        assert!(cert.max_coeff_norm <= bound + 1e-9, "norm {} vs bound {bound}", cert.max_coeff_norm);
    }

    #[test]
    fn one_hot_tabular_environment_is_exactly_closed() {
        // Arbitrary tabular MDP wrapped with one-hot embeddings: every table
        // over (x, a) is trivially linear in the features.
        let (s, a, horizon) = (4, 2, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rewards: Vec<Vec<Vec<f64>>> = (0..horizon)
            .map(|_| (0..s).map(|_| (0..a).map(|_| rng.gen()).collect()).collect())
            .collect();
        let transitions: Vec<Vec<Vec<Vec<f64>>>> = (0..horizon)
            .map(|_| {
                (0..s)
                    .map(|_| (0..a).map(|_| simplex_point(s, &mut rng)).collect())
                    .collect()
            })
            .collect();
        let mdp = EpisodicMdp::new(
            horizon,
            one_hot_embeddings(s, a),
            rewards,
            transitions,
            InitialStateRule::Fixed(0),
        )
        .unwrap();
        let cert = closure_certificate(&mdp, 10, 1).unwrap();
        assert!(cert.max_residual < 1e-10, "residual {}", cert.max_residual);
    }

    #[test]
    fn sphere_normalization_keeps_dynamics() {
        let opts = LinearMdpOptions { sphere_normalize: true, ..Default::default() };
        let (plain, _) = make_linear_mdp(4, 5, 2, 2, 21).unwrap();
        let (sphere, _) = make_linear_mdp_with(4, 5, 2, 2, 21, &opts).unwrap();
        for h in 0..2 {
            for x in 0..5 {
                for a in 0..2 {
                    assert_eq!(plain.transition_row(h, x, a), sphere.transition_row(h, x, a));
                    assert_eq!(plain.reward(h, x, a), sphere.reward(h, x, a));
                }
            }
        }
        for x in 0..5 {
            for a in 0..2 {
                let n: f64 = sphere.embed(x, a).iter().map(|v| v * v).sum();
                assert!((n - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn construction_is_deterministic_in_the_seed() {
        let (a, _) = make_linear_mdp(3, 4, 2, 2, 77).unwrap();
        let (b, _) = make_linear_mdp(3, 4, 2, 2, 77).unwrap();
        assert_eq!(a, b);
        let (c, _) = make_linear_mdp(3, 4, 2, 2, 78).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn dimension_precondition_enforced() {
        assert!(matches!(make_linear_mdp(9, 2, 2, 1, 0), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_linear_mdp(0, 2, 2, 1, 0), Err(Error::InvalidParameter(_))));
    }
}
