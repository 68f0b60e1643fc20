//! The five-number summary emitted by the validation pipeline.

use serde::{Deserialize, Serialize};

use crate::conc::AzumaReport;
use crate::decomp::DecompositionReport;
use crate::td::OptimismReport;
use crate::telescope::{LedgerReport, TelescopeReport, LEDGER_TOL, TELESCOPE_TOL};

/// Worst tolerated per-episode decomposition residual — the identity is
/// algebraic, so anything above rounding noise signals a bookkeeping bug.
pub const DECOMP_TOL: f64 = 1e-8;

/// Flat summary of one (or several merged) diagnosed runs. Field names are
/// the stable JSON contract consumed downstream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    /// Fraction of `(episode, h, x, a)` tuples outside the optimism window.
    pub optimism_violation_frac: f64,
    /// Worst per-episode regret-identity residual.
    pub max_decomp_residual: f64,
    /// Fraction of runs whose martingale sum landed inside its bound.
    pub azuma_pass_frac: f64,
    /// Smallest telescoping slack across runs and steps.
    pub telescope_min_slack: f64,
    /// Worst jitter-free append-identity error.
    pub ledger_max_err: f64,
}

impl DiagnosticsReport {
    /// Assemble the summary of a single run from its component audits.
    pub fn from_parts(
        optimism: &OptimismReport,
        decomposition: &DecompositionReport,
        azuma: &AzumaReport,
        telescope: &TelescopeReport,
        ledger: &LedgerReport,
    ) -> Self {
        Self {
            optimism_violation_frac: optimism.violation_frac,
            max_decomp_residual: decomposition.max_residual,
            azuma_pass_frac: if azuma.pass { 1.0 } else { 0.0 },
            telescope_min_slack: telescope.min_slack,
            ledger_max_err: ledger.max_err,
        }
    }

    /// Merge per-seed summaries into one: fractions average, residuals and
    /// errors take the worst case, slack takes the minimum. Returns `None`
    /// for an empty slice.
    pub fn merge(reports: &[Self]) -> Option<Self> {
        if reports.is_empty() {
            return None;
        }
        let n = reports.len() as f64;
        Some(Self {
            optimism_violation_frac: reports
                .iter()
                .map(|r| r.optimism_violation_frac)
                .sum::<f64>()
                / n,
            max_decomp_residual: reports
                .iter()
                .map(|r| r.max_decomp_residual)
                .fold(0.0, f64::max),
            azuma_pass_frac: reports.iter().map(|r| r.azuma_pass_frac).sum::<f64>() / n,
            telescope_min_slack: reports
                .iter()
                .map(|r| r.telescope_min_slack)
                .fold(f64::INFINITY, f64::min),
            ledger_max_err: reports.iter().map(|r| r.ledger_max_err).fold(0.0, f64::max),
        })
    }

    /// Whether the *structural* identities hold: decomposition residual,
    /// telescoping slack, and ledger identity are exact mathematics and must
    /// pass regardless of tuning. The probabilistic numbers (optimism
    /// fraction, concentration pass rate) are reported but judged by the
    /// caller, since their expected levels depend on the exploration setup.
    pub fn invariants_ok(&self) -> bool {
        self.max_decomp_residual <= DECOMP_TOL
            && self.telescope_min_slack >= -TELESCOPE_TOL
            && self.ledger_max_err <= LEDGER_TOL
    }
}
