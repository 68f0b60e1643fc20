//! The four subcommand implementations, as plain functions over parsed
//! specs. Printing and file placement live in `main`; everything here is
//! testable in-process.

use rayon::prelude::*;
use serde_json::json;

use crate::error::{CliError, Result};
use crate::output::{kovi_csv, novi_csv, SweepRow};
use crate::spec::{split_seed, EnvSpec, GridCell, LearnerSpec, RunSpec};

/// Failure probability used by the validation audits (martingale band
/// width).
pub const AUDIT_FAILURE_PROB: f64 = 0.01;

/// Environment variable selecting the worker count for multi-seed runs and
/// sweeps.
pub const WORKERS_ENV: &str = "OVI_LAB_WORKERS";

/// Episode cap applied by `validate --fast`.
pub const FAST_EPISODE_CAP: usize = 20;

/// Everything one seed of a `run` produces: a one-line JSON summary and the
/// per-episode CSV trace.
pub struct RunOutput {
    pub seed: u64,
    pub summary: serde_json::Value,
    pub csv: Vec<u8>,
}

fn run_one(spec: &RunSpec, seed: u64) -> Result<RunOutput> {
    let (env_seed, run_seed) = split_seed(seed);
    let episodes = spec.learner.episodes();
    let mdp = spec.env.build(env_seed, episodes)?;
    let horizon = mdp.horizon();
    let uniform_final = kovi::uniform_baseline(&mdp, episodes)?
        .last()
        .copied()
        .unwrap_or(0.0);
    let common = |kind: &str, final_regret: f64, exponent: Option<f64>| {
        json!({
            "learner": kind,
            "episodes": episodes,
            "horizon": horizon,
            "final_cum_regret": final_regret,
            "regret_exponent": exponent,
            "uniform_final_cum_regret": uniform_final,
            "seed": seed,
        })
    };
    match &spec.learner {
        LearnerSpec::Kovi { kernel, config } => {
            let named = kovi::kernel_by_name(kernel, spec.env.d)?;
            let run = kovi::run_kovi(&mdp, &named.kernel, config, run_seed)?;
            let mut summary = common("kovi", run.final_cum_regret(), run.regret_exponent());
            summary["kernel"] = json!(kernel);
            summary["info_gain_final"] = json!(run.agent.info_gain_per_step());
            Ok(RunOutput {
                seed,
                summary,
                csv: kovi_csv(&run, horizon)?,
            })
        }
        LearnerSpec::Novi { config } => {
            let run = novi::run_novi(&mdp, config, run_seed)?;
            let mut summary = common("novi", run.final_cum_regret(), run.regret_exponent());
            summary["activation"] = json!(config.activation);
            summary["half_width"] = json!(config.half_width);
            summary["frozen_features"] = json!(run.frozen_features);
            summary["iota"] = json!(run.iota);
            summary["param_ball_ok"] = json!(run.param_ball_ok);
            summary["max_linearization_gap"] = json!(run.max_linearization_gap());
            Ok(RunOutput {
                seed,
                summary,
                csv: novi_csv(&run, horizon)?,
            })
        }
    }
}

/// Execute one run per seed in the spec (concurrently; worker count from
/// `OVI_LAB_WORKERS`, default all cores). Output order follows the seed
/// list. Each seed splits into its own environment and rollout streams.
pub fn run_command(spec: &RunSpec) -> Result<Vec<RunOutput>> {
    let pool = worker_pool()?;
    pool.install(|| {
        spec.seeds
            .par_iter()
            .map(|&seed| run_one(spec, seed))
            .collect()
    })
}

fn worker_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(text) = std::env::var(WORKERS_ENV) {
        let workers: usize = text.trim().parse().map_err(|_| {
            CliError::Config(format!(
                "{WORKERS_ENV} must be a positive integer, got '{text}'"
            ))
        })?;
        if workers == 0 {
            return Err(CliError::Config(format!(
                "{WORKERS_ENV} must be a positive integer, got '{text}'"
            )));
        }
        builder = builder.num_threads(workers);
    }
    builder
        .build()
        .map_err(|e| CliError::Config(format!("building the worker pool: {e}")))
}

fn run_variant(
    mdp: &mdp_sim::EpisodicMdp,
    env: &EnvSpec,
    label: &str,
    learner: &LearnerSpec,
    run_seed: u64,
) -> Result<SweepRow> {
    match learner {
        LearnerSpec::Kovi { kernel, config } => {
            let named = kovi::kernel_by_name(kernel, env.d)?;
            let run = kovi::run_kovi(mdp, &named.kernel, config, run_seed)?;
            Ok(SweepRow {
                label: label.to_string(),
                final_cum_regret: run.final_cum_regret(),
                regret_exponent: run.regret_exponent(),
                max_linearization_gap: None,
                seed: run_seed,
            })
        }
        LearnerSpec::Novi { config } => {
            let run = novi::run_novi(mdp, config, run_seed)?;
            Ok(SweepRow {
                label: label.to_string(),
                final_cum_regret: run.final_cum_regret(),
                regret_exponent: run.regret_exponent(),
                max_linearization_gap: Some(run.max_linearization_gap()),
                seed: run_seed,
            })
        }
    }
}

/// Execute a sweep: each grid cell overrides fields of the base learner
/// (`episodes`, `lambda`, `beta`, `half_width`, …). Every cell sees the
/// *same* environment and the *same* rollout seed — both derived from the
/// base spec's first seed — so rows differ only through the overridden
/// settings: a paired comparison. Cells run concurrently; row order matches
/// the grid.
pub fn sweep_command(base: &RunSpec, cells: &[GridCell]) -> Result<Vec<SweepRow>> {
    let variants: Vec<(String, LearnerSpec)> = cells
        .iter()
        .map(|cell| {
            let learner = base.learner.with_overrides(&cell.overrides)?;
            Ok((cell.label.clone(), learner))
        })
        .collect::<Result<_>>()?;
    let (env_seed, run_seed) = split_seed(base.seeds[0]);
    let max_episodes = variants
        .iter()
        .map(|(_, l)| l.episodes())
        .max()
        .unwrap_or(1);
    let mdp = base.env.build(env_seed, max_episodes)?;
    let pool = worker_pool()?;
    pool.install(|| {
        variants
            .par_iter()
            .map(|(label, learner)| run_variant(&mdp, &base.env, label, learner, run_seed))
            .collect()
    })
}

/// Compute the sphere-harmonic spectrum of a wide-network tangent kernel.
/// `activation` is `quadratic`, `sine`, or `relu_power:<s>`.
pub fn spectrum_command(
    activation: &str,
    d: usize,
    jmax: usize,
) -> Result<spectrum::SpectrumTable> {
    let kernel = match activation.split_once(':') {
        None if activation == "quadratic" => spectrum::ClosedFormKernel::Quadratic { d },
        None if activation == "sine" => spectrum::ClosedFormKernel::Sine,
        Some(("relu_power", arg)) => {
            let s: u32 = arg.parse().map_err(|_| {
                CliError::Config(format!(
                    "'{arg}' is not a valid smoothness in '{activation}'"
                ))
            })?;
            if s == 0 {
                return Err(CliError::Config(
                    "relu_power smoothness must be at least 1".into(),
                ));
            }
            spectrum::ClosedFormKernel::ReluPower { s, d }
        }
        _ => {
            return Err(CliError::Config(format!(
                "unknown activation '{activation}'; expected quadratic, sine, or relu_power:<s>"
            )))
        }
    };
    let table = spectrum::SpectrumTable::compute_closed_form_in(
        &kernel,
        d,
        jmax,
        &spectrum::QuadratureSettings::default(),
    )?;
    Ok(table)
}

/// Run one seed of a spec with table recording forced on and audit the run:
/// optimism of the value tables, the exact three-term regret decomposition,
/// the martingale-noise band, the information-gain telescope, and the
/// rank-one update ledger.
fn audit_one(spec: &RunSpec, seed: u64) -> Result<diagnostics::FullDiagnostics> {
    let (env_seed, run_seed) = split_seed(seed);
    let mdp = spec.env.build(env_seed, spec.learner.episodes())?;
    let full = match &spec.learner {
        LearnerSpec::Kovi { kernel, config } => {
            let named = kovi::kernel_by_name(kernel, spec.env.d)?;
            let run = kovi::run_kovi(&mdp, &named.kernel, config, run_seed)?;
            diagnostics::diagnose_kovi(&mdp, &run, AUDIT_FAILURE_PROB)?
        }
        LearnerSpec::Novi { config } => {
            let run = novi::run_novi(&mdp, config, run_seed)?;
            diagnostics::diagnose_novi(&mdp, &run, AUDIT_FAILURE_PROB)?
        }
    };
    Ok(full)
}

/// Audit every seed of a spec (`validate --config`). `fast` caps each run at
/// [`FAST_EPISODE_CAP`] episodes. Returns `(name, audit)` pairs; the caller
/// decides how to report them and whether `invariants_ok` failures are
/// fatal.
pub fn validate_command(
    spec: &RunSpec,
    fast: bool,
) -> Result<Vec<(String, diagnostics::FullDiagnostics)>> {
    let mut spec = spec.clone();
    if fast {
        spec.learner.truncate_episodes(FAST_EPISODE_CAP);
    }
    spec.learner.force_recorded_tables();
    spec.seeds
        .clone()
        .into_iter()
        .map(|seed| Ok((format!("seed-{seed}"), audit_one(&spec, seed)?)))
        .collect()
}

/// The built-in fixtures behind bare `validate`: small runs covering both
/// learners, both regression engines, frozen and trained network modes, and
/// constant plus scheduled bonus sources.
pub fn bundled_fixtures(fast: bool) -> Vec<(String, RunSpec)> {
    let kovi_episodes = if fast { FAST_EPISODE_CAP } else { 60 };
    let novi_episodes = if fast { 8 } else { 15 };
    let env_small = |sphere| EnvSpec {
        d: 3,
        n_states: 6,
        n_actions: 2,
        horizon: 2,
        sphere_normalize: sphere,
        starts: None,
    };
    let kovi_learner = |kernel: &str, episodes, beta, engine| LearnerSpec::Kovi {
        kernel: kernel.to_string(),
        config: kovi::KoviConfig::new(episodes)
            .with_beta(beta)
            .with_engine(engine),
    };
    let fixtures = vec![
        (
            "kovi-linear-dual",
            RunSpec {
                seeds: vec![101],
                env: env_small(false),
                learner: kovi_learner(
                    "linear",
                    kovi_episodes,
                    kovi::BetaSource::Constant { value: 0.5 },
                    kovi::Engine::Dual,
                ),
            },
        ),
        (
            "kovi-quadratic-primal",
            RunSpec {
                seeds: vec![102],
                env: EnvSpec {
                    d: 3,
                    n_states: 8,
                    n_actions: 3,
                    horizon: 3,
                    sphere_normalize: true,
                    starts: None,
                },
                learner: kovi_learner(
                    "quadratic",
                    kovi_episodes,
                    kovi::BetaSource::Schedule {
                        decay: spectrum::DecayClass::finite(6).expect("6 modes"),
                        c_b: 1.0,
                    },
                    kovi::Engine::Primal,
                ),
            },
        ),
        (
            "kovi-se-growing-beta",
            RunSpec {
                seeds: vec![103],
                env: env_small(false),
                learner: kovi_learner(
                    "se:0.75",
                    kovi_episodes,
                    kovi::BetaSource::GrowingSchedule {
                        decay: spectrum::DecayClass::exponential(0.5).expect("gamma > 0"),
                        c_b: 0.5,
                    },
                    kovi::Engine::Dual,
                ),
            },
        ),
        (
            "novi-frozen-sine",
            RunSpec {
                seeds: vec![104],
                env: env_small(true),
                learner: LearnerSpec::Novi {
                    config: novi::NoviConfig::new(novi_episodes, novi::Activation::Sine, 64)
                        .with_constant_beta(0.5)
                        .with_frozen_features(),
                },
            },
        ),
        (
            "novi-trained-quadratic",
            RunSpec {
                seeds: vec![105],
                env: env_small(true),
                learner: LearnerSpec::Novi {
                    config: novi::NoviConfig::new(
                        novi_episodes.min(8),
                        novi::Activation::Quadratic,
                        64,
                    )
                    .with_constant_beta(0.5)
                    .with_gd(novi::GdSettings {
                        step: None,
                        max_iters: 1500,
                        grad_tol: 1e-6,
                    }),
                },
            },
        ),
    ];
    fixtures
        .into_iter()
        .map(|(name, spec)| (name.to_string(), spec))
        .collect()
}

/// Audit the bundled fixture suite (bare `validate`).
pub fn validate_suite(fast: bool) -> Result<Vec<(String, diagnostics::FullDiagnostics)>> {
    bundled_fixtures(fast)
        .into_iter()
        .map(|(name, spec)| {
            let mut audited = validate_command(&spec, fast)?;
            debug_assert_eq!(audited.len(), 1, "bundled fixtures carry one seed");
            let (_, full) = audited.pop().expect("one seed per fixture");
            Ok((name, full))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_kovi_spec(seed: u64) -> RunSpec {
        RunSpec::parse(&format!(
            r#"{{
                "seeds": [{seed}],
                "env": {{ "d": 3, "n_states": 6, "n_actions": 2, "horizon": 2 }},
                "learner": {{
                    "kind": "kovi",
                    "kernel": "linear",
                    "episodes": 12,
                    "beta": {{ "kind": "constant", "value": 0.5 }}
                }}
            }}"#
        ))
        .unwrap()
    }

    #[test]
    fn run_command_is_deterministic_in_the_seed() {
        let a = run_command(&small_kovi_spec(9)).unwrap();
        let b = run_command(&small_kovi_spec(9)).unwrap();
        assert_eq!(a[0].csv, b[0].csv, "same seed must give identical traces");
        assert_eq!(a[0].summary, b[0].summary);
        let c = run_command(&small_kovi_spec(10)).unwrap();
        assert_ne!(a[0].csv, c[0].csv, "different seeds must differ");
    }

    #[test]
    fn run_command_emits_one_output_per_seed_in_order() {
        let mut spec = small_kovi_spec(1);
        spec.seeds = vec![5, 6, 7];
        let outputs = run_command(&spec).unwrap();
        assert_eq!(
            outputs.iter().map(|o| o.seed).collect::<Vec<_>>(),
            vec![5, 6, 7]
        );
        assert_ne!(outputs[0].csv, outputs[1].csv);
    }

    #[test]
    fn run_summary_reports_the_core_fields() {
        let outputs = run_command(&small_kovi_spec(4)).unwrap();
        let out = &outputs[0];
        assert_eq!(out.summary["learner"], "kovi");
        assert_eq!(out.summary["episodes"], 12);
        assert!(out.summary["final_cum_regret"].as_f64().unwrap() >= 0.0);
        assert!(out.summary["uniform_final_cum_regret"].as_f64().unwrap() > 0.0);
        let header = String::from_utf8(out.csv.clone()).unwrap();
        assert!(header.starts_with(
            "episode,instant_regret,cum_regret,info_gain_h1,info_gain_h2,beta,seed"
        ));
    }

    #[test]
    fn sweep_applies_overrides_and_pairs_the_randomness() {
        let base = small_kovi_spec(11);
        let cells = crate::spec::parse_grid(
            r#"[
                { "label": "short", "episodes": 6 },
                { "label": "long", "episodes": 12 },
                { "label": "same-as-long" }
            ]"#,
        )
        .unwrap();
        let rows = sweep_command(&base, &cells).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].label, "short");
        // kernel learner: no linearization column value
        assert!(rows.iter().all(|r| r.max_linearization_gap.is_none()));
        // identical settings ⇒ identical row values (paired runs)
        assert_eq!(rows[1].final_cum_regret, rows[2].final_cum_regret);
        assert_eq!(rows[1].seed, rows[2].seed);
    }

    #[test]
    fn validate_command_passes_on_a_clean_run_and_caps_fast_runs() {
        let mut spec = small_kovi_spec(7);
        match &mut spec.learner {
            LearnerSpec::Kovi { config, .. } => config.episodes = 50,
            LearnerSpec::Novi { .. } => unreachable!(),
        }
        let results = validate_command(&spec, true).unwrap();
        assert_eq!(results.len(), 1);
        let (name, full) = &results[0];
        assert_eq!(name, "seed-7");
        assert!(full.summary.invariants_ok());
        assert_eq!(full.decomposition.episodes.len(), FAST_EPISODE_CAP);
    }

    #[test]
    fn spectrum_command_rejects_unknown_activations() {
        assert!(matches!(
            spectrum_command("tanh", 3, 5),
            Err(CliError::Config(_))
        ));
        assert!(matches!(
            spectrum_command("relu_power:x", 3, 5),
            Err(CliError::Config(_))
        ));
        let table = spectrum_command("quadratic", 3, 5).unwrap();
        assert_eq!(table.nonzero_count(1e-6), 6);
    }
}
