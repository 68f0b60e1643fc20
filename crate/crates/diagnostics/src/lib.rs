//! Runtime audits for optimistic value-iteration runs.
//!
//! # Why
//!
//! The learners in this workspace are built so that several exact identities
//! hold *by construction*: each episode's regret splits algebraically into a
//! Bellman part, a sampling part, and a policy part; capped squared widths
//! telescope into the information gain; every design append moves the gain by
//! `½·ln(1 + b²_pre)`. None of this is approximate, so any drift beyond
//! rounding noise is a bug, not a tuning problem. This crate re-derives each
//! identity from recorded runs using independent computations (exact dynamic
//! programming, occupancy measures, the append ledger) and reports how well
//! they held, together with two probabilistic health numbers: the optimism
//! violation fraction and the martingale concentration pass rate.
//!
//! # Key pieces
//!
//! | Item | What it does |
//! |------|--------------|
//! | [`EpisodeView`] / [`kovi_views`] / [`novi_views`] | Uniform borrowed view of recorded episodes |
//! | [`td_error_table`] | Exact Bellman residuals `δ_h(x,a)` of one episode's tables |
//! | [`optimism_audit`] | Two-sided window check `−2β·b ≤ δ ≤ 0` over all tuples |
//! | [`decomposition_check`] | Per-episode three-term regret identity, exact to rounding |
//! | [`azuma_check`] | Martingale sum vs. the `√(16TH³ln(2/p))` bound |
//! | [`telescope_check`] / [`ledger_check`] | Information-gain bookkeeping cross-checks |
//! | [`diagnose_kovi`] / [`diagnose_novi`] | All of the above on one run, plus the flat [`DiagnosticsReport`] |
//!
//! # Quick start
//!
//! ```
//! use diagnostics::diagnose_kovi;
//! use kovi::{run_kovi, Engine, KoviConfig};
//!
//! let (mdp, _) = mdp_sim::make_linear_mdp(3, 6, 2, 2, 11)?;
//! let config = KoviConfig::new(8)
//!     .with_constant_beta(0.5)
//!     .with_engine(Engine::Dual)
//!     .with_recorded_tables();
//! let run = run_kovi(&mdp, &kernel_core::Kernel::linear(), &config, 7)?;
//!
//! let full = diagnose_kovi(&mdp, &run, 0.01)?;
//! assert!(full.summary.invariants_ok());
//! assert!(full.decomposition.max_residual < 1e-8);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! # What can go wrong
//!
//! * Runs must be produced with table recording enabled, otherwise the view
//!   constructors return [`Error::MissingTables`].
//! * The decomposition identity assumes the rollout policy is greedy for its
//!   own recorded tables (both learners guarantee this); the comparator can
//!   be any policy.
//! * `policy_term ≤ 0` and `action_consistency = 0` are greedy-rollout
//!   consequences, not general facts — keep that in mind when feeding views
//!   from custom sources.

mod conc;
mod decomp;
mod error;
mod report;
mod td;
mod telescope;
mod view;

pub use conc::{azuma_bound, azuma_check, AzumaReport};
pub use decomp::{
    decomposition_check, noise_steps, DecompositionReport, EpisodeDecomposition, NoiseStep,
};
pub use error::{Error, Result};
pub use report::{DiagnosticsReport, DECOMP_TOL};
pub use td::{optimism_audit, td_error_table, OptimismReport, AUDIT_TOL};
pub use telescope::{
    ledger_check, telescope_check, LedgerReport, TelescopeReport, LEDGER_TOL, TELESCOPE_TOL,
};
pub use view::{kovi_views, novi_views, EpisodeView};

use kernel_core::AppendStats;
use kovi::KoviRun;
use mdp_sim::EpisodicMdp;
use novi::NoviRun;

/// Every audit of one run, plus the flat summary.
#[derive(Debug, Clone)]
pub struct FullDiagnostics {
    pub optimism: OptimismReport,
    pub decomposition: DecompositionReport,
    pub azuma: AzumaReport,
    pub telescope: TelescopeReport,
    pub ledger: LedgerReport,
    pub summary: DiagnosticsReport,
}

fn assemble(
    mdp: &EpisodicMdp,
    views: &[EpisodeView],
    comparator: &mdp_sim::Policy,
    ledgers: &[&[AppendStats]],
    info_gains: &[f64],
    failure_prob: f64,
) -> Result<FullDiagnostics> {
    let optimism = optimism_audit(mdp, views);
    let decomposition = decomposition_check(mdp, comparator, views)?;
    let azuma = azuma_check(mdp, views, failure_prob)?;
    let telescope = telescope_check(ledgers, info_gains)?;
    let ledger = ledger_check(ledgers);
    let summary =
        DiagnosticsReport::from_parts(&optimism, &decomposition, &azuma, &telescope, &ledger);
    Ok(FullDiagnostics { optimism, decomposition, azuma, telescope, ledger, summary })
}

/// Run every audit on a kernel-learner run (recorded with tables).
///
/// `failure_prob` is the concentration check's failure probability.
///
/// # Errors
///
/// [`Error::MissingTables`] if the run lacks recorded tables; environment
/// errors from the exact-DP computations.
pub fn diagnose_kovi(
    mdp: &EpisodicMdp,
    run: &KoviRun,
    failure_prob: f64,
) -> Result<FullDiagnostics> {
    let views = kovi_views(run)?;
    let comparator = run.optimal.greedy_policy();
    let ledgers: Vec<&[AppendStats]> =
        (0..mdp.horizon()).map(|h| run.agent.append_ledger(h)).collect();
    let gains = run.agent.info_gain_per_step();
    assemble(mdp, &views, &comparator, &ledgers, &gains, failure_prob)
}

/// Run every audit on a network-learner run (recorded with tables).
///
/// The information-gain audits read the tangent designs' ledgers; the gain
/// column of the final episode matches the designs' final state because rows
/// are frozen one episode behind the rollouts.
///
/// # Errors
///
/// [`Error::MissingTables`] if the run lacks recorded tables; environment
/// errors from the exact-DP computations.
pub fn diagnose_novi(
    mdp: &EpisodicMdp,
    run: &NoviRun,
    failure_prob: f64,
) -> Result<FullDiagnostics> {
    let views = novi_views(run)?;
    let comparator = run.optimal.greedy_policy();
    let ledgers: Vec<&[AppendStats]> =
        run.append_ledgers.iter().map(Vec::as_slice).collect();
    let gains = run
        .records
        .last()
        .map(|r| r.info_gain_per_step.clone())
        .unwrap_or_else(|| vec![0.0; mdp.horizon()]);
    assemble(mdp, &views, &comparator, &ledgers, &gains, failure_prob)
}
