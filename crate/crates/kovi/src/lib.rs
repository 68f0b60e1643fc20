//! Optimistic least-squares value iteration on episodic MDPs.
//!
//! # Why
//!
//! An agent that always exploits its current value estimates can lock onto a
//! bad policy forever. This crate implements the optimistic fix: fit the
//! Bellman backup by kernel ridge regression, then *add* a multiple of the
//! regression's own uncertainty width before taking the max. Actions the
//! data cannot yet rule out look good, get tried, and either pay off or
//! shrink their width — so exploration is driven entirely by the geometry of
//! the data, with one scalar β controlling how aggressive it is.
//!
//! # Key pieces
//!
//! | Item | Role |
//! |------|------|
//! | [`KoviAgent`] | per-step ridge regressors + the backward sweep |
//! | [`run_kovi`] | the full episode loop with exact regret accounting |
//! | [`KoviConfig`], [`BetaSource`] | run parameters, β schedules |
//! | [`kernel_by_name`] | kernel registry with canonical decay classes |
//! | [`uniform_baseline`], [`regret_exponent`] | the two standard yardsticks |
//!
//! Both regression engines — dual (kernel matrix) and primal (explicit
//! features) — produce identical values, bonuses, and information gain;
//! [`Engine::Auto`] picks by feature dimension.
//!
//! # Quick start
//!
//! ```
//! use kovi::{kernel_by_name, run_kovi, KoviConfig};
//! use mdp_sim::make_linear_mdp;
//!
//! let (mdp, spec) = make_linear_mdp(3, 5, 2, 2, 7).unwrap();
//! let named = kernel_by_name("linear", spec.feature_dim).unwrap();
//! let config = KoviConfig::new(20).with_constant_beta(0.5);
//! let run = run_kovi(&mdp, &named.kernel, &config, 42).unwrap();
//!
//! assert_eq!(run.records.len(), 20);
//! // cumulative regret never decreases and is bounded by T·H
//! let series = run.cum_regret_series();
//! assert!(series.windows(2).all(|w| w[1] >= w[0] - 1e-12));
//! assert!(run.final_cum_regret() <= 20.0 * 2.0);
//! ```
//!
//! # What can go wrong
//!
//! Configuration problems (zero episodes, nonpositive λ, negative β, unknown
//! kernel ids) surface as [`Error::InvalidParameter`]; failures inside the
//! regression, the simulator, or a bonus schedule are wrapped transparently.

mod agent;
mod config;
mod error;
mod kernels;
mod regressor;
mod run;

pub use agent::{pick_action, EpisodeTables, KoviAgent};
pub use config::{BetaSource, Engine, KoviConfig, TieBreak};
pub use error::{Error, Result};
pub use kernels::{kernel_by_name, NamedKernel};
pub use regressor::PRIMAL_DIM_LIMIT;
pub use run::{regret_exponent, run_kovi, uniform_baseline, EpisodeRecord, KoviRun};
