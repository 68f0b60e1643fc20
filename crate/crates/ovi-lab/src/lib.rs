//! # ovi-lab — the experiment driver
//!
//! One binary ties the workspace together: it builds synthetic episodic
//! environments, runs the kernel ([`kovi`]) and neural ([`novi`]) optimistic
//! value-iteration learners from JSON specs, audits finished runs with the
//! [`diagnostics`] identities, and prints tangent-kernel spectra from
//! [`spectrum`].
//!
//! ## Subcommands
//!
//! | command | input | output |
//! |---|---|---|
//! | `run` | JSON spec (seed list) | one CSV trace per seed + a JSON summary line per run |
//! | `sweep` | base spec + JSON grid of overrides | one CSV row per cell, paired seeds |
//! | `spectrum` | activation + dimension | spectrum table as JSON |
//! | `validate` | bundled fixtures, or a spec via `--config` | audit lines as JSON; exit 4 on violation |
//!
//! ## Determinism
//!
//! Each top-level seed is split (via a counter-mode generator, see
//! [`spec::split_seed`]) into an environment stream and a rollout stream, so
//! the same spec always produces byte-identical CSV output. Sweep cells
//! share both streams: every cell sees the same environment *and* the same
//! episode randomness, isolating the effect of the overridden settings.
//! Seeds and cells run concurrently (`OVI_LAB_WORKERS` caps the worker
//! count); outputs keep spec order.
//!
//! ## Exit codes
//!
//! | code | meaning |
//! |---|---|
//! | 0 | success |
//! | 2 | unusable configuration (bad JSON, unknown fields, bad parameters) |
//! | 3 | numerical failure (ill-conditioned solve, divergent fit) |
//! | 4 | a structural run invariant failed under `validate` |
//!
//! ## Spec shape
//!
//! ```
//! let text = r#"{
//!     "seeds": [17],
//!     "env": { "d": 3, "n_states": 6, "n_actions": 2, "horizon": 2 },
//!     "learner": {
//!         "kind": "kovi",
//!         "kernel": "quadratic",
//!         "episodes": 8,
//!         "beta": { "kind": "constant", "value": 0.5 }
//!     }
//! }"#;
//! let spec = ovi_lab::RunSpec::parse(text).unwrap();
//! let outputs = ovi_lab::run_command(&spec).unwrap();
//! assert_eq!(outputs.len(), 1);
//! assert_eq!(outputs[0].summary["episodes"], 8);
//! assert!(String::from_utf8(outputs[0].csv.clone()).unwrap().starts_with("episode,"));
//! ```

pub mod commands;
pub mod error;
pub mod output;
pub mod spec;

pub use commands::{
    bundled_fixtures, run_command, spectrum_command, sweep_command, validate_command,
    validate_suite, RunOutput, AUDIT_FAILURE_PROB, FAST_EPISODE_CAP, WORKERS_ENV,
};
pub use error::{CliError, Result, EXIT_CONFIG, EXIT_INVARIANT, EXIT_NUMERICAL};
pub use output::{atomic_write, kovi_csv, novi_csv, sweep_csv, SweepRow};
pub use spec::{parse_grid, split_seed, EnvSpec, GridCell, LearnerSpec, RunSpec};
