//! Information-gain bookkeeping audits.
//!
//! Two independent routes measure the same quantity. The *log-determinant
//! route* reads the design's information gain `Γ = ½·logdet(I + K/λ)` off its
//! factorization; the *bonus route* reads the per-append squared widths off
//! the append ledger. The audits cross-check them:
//!
//! * **Telescoping bound** — for each step `h`, the capped sum of post-append
//!   squared widths is dominated by the gain:
//!   `Σ_j min(1, b²_j) ≤ 4·Γ_h`. The reported slack (right side minus left)
//!   must never be meaningfully negative.
//! * **Ledger identity** — every append must satisfy
//!   `ΔΓ = ½·ln(1 + b²_pre)` and `b²_post = b²_pre / (1 + b²_pre)` exactly
//!   (up to rounding); appends that needed a jitter nudge are counted
//!   separately instead of polluting the error statistic.

use kernel_core::AppendStats;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How far below zero the telescoping slack may dip before it counts as a
/// bookkeeping violation. Pure rounding headroom.
pub const TELESCOPE_TOL: f64 = 1e-8;

/// Largest tolerated per-append identity error for jitter-free appends.
pub const LEDGER_TOL: f64 = 1e-8;

/// Telescoping-bound audit outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TelescopeReport {
    /// Slack `4·Γ_h − Σ_j min(1, b²_j)` per step `h`.
    pub per_step_slack: Vec<f64>,
    /// Smallest slack across steps (0 when there are no steps).
    pub min_slack: f64,
    /// The capped bonus sums (left-hand sides), per step.
    pub capped_sums: Vec<f64>,
    /// The information gains used (log-determinant route), per step.
    pub gains: Vec<f64>,
}

/// Ledger-identity audit outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LedgerReport {
    /// Appends examined across all steps.
    pub entries: usize,
    /// Appends that carried a jitter nudge (excluded from `max_err`).
    pub jittered: usize,
    /// Worst identity error over jitter-free appends.
    pub max_err: f64,
}

/// Check the telescoping bound per step.
///
/// `ledgers[h]` is the append ledger of step `h`'s design; `info_gains[h]` is
/// the design's final information gain measured via the log-determinant, so
/// the two sides of the inequality come from independent computations.
///
/// # Errors
///
/// [`Error::InvalidParameter`] if the two slices disagree in length.
pub fn telescope_check(
    ledgers: &[&[AppendStats]],
    info_gains: &[f64],
) -> Result<TelescopeReport> {
    if ledgers.len() != info_gains.len() {
        return Err(Error::InvalidParameter(format!(
            "{} ledgers but {} gain entries",
            ledgers.len(),
            info_gains.len()
        )));
    }
    let capped_sums: Vec<f64> = ledgers
        .iter()
        .map(|ledger| ledger.iter().map(|s| s.post_bonus_sq.min(1.0)).sum())
        .collect();
    let per_step_slack: Vec<f64> = capped_sums
        .iter()
        .zip(info_gains)
        .map(|(capped, gain)| 4.0 * gain - capped)
        .collect();
    let min_slack = per_step_slack.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(TelescopeReport {
        min_slack: if min_slack.is_finite() { min_slack } else { 0.0 },
        per_step_slack,
        capped_sums,
        gains: info_gains.to_vec(),
    })
}

/// Re-verify the per-append identities across all ledgers.
pub fn ledger_check(ledgers: &[&[AppendStats]]) -> LedgerReport {
    let mut entries = 0usize;
    let mut jittered = 0usize;
    let mut max_err = 0.0f64;
    for ledger in ledgers {
        for stats in *ledger {
            entries += 1;
            if stats.jitter > 0.0 {
                jittered += 1;
                continue;
            }
            let gain_err =
                (stats.info_gain_increment - 0.5 * stats.pre_bonus_sq.ln_1p()).abs();
            let shrink_err =
                (stats.post_bonus_sq - stats.pre_bonus_sq / (1.0 + stats.pre_bonus_sq)).abs();
            max_err = max_err.max(gain_err).max(shrink_err);
        }
    }
    LedgerReport { entries, jittered, max_err }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use kernel_core::{DataBlock, Kernel};

    #[test]
    fn single_unit_diagonal_point_gives_the_known_slack() {
        // k(z,z) = 1, λ = 1: post-append b² = 1/2, gain = ½·ln 2, so the
        // slack is 2·ln 2 − 1/2.
        let mut block = DataBlock::new(Kernel::squared_exponential(0.8), 1.0).unwrap();
        block.append(&[0.2, -0.4]).unwrap();
        let report =
            telescope_check(&[block.ledger()], &[block.info_gain()]).unwrap();
        assert_eq!(report.per_step_slack.len(), 1);
        assert_abs_diff_eq!(
            report.min_slack,
            2.0 * std::f64::consts::LN_2 - 0.5,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(report.capped_sums[0], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn slack_stays_nonnegative_as_points_accumulate() {
        let mut block = DataBlock::new(Kernel::squared_exponential(0.5), 0.7).unwrap();
        for i in 0..40 {
            let x = (i as f64 * 0.37).sin();
            let y = (i as f64 * 0.61).cos();
            block.append(&[x, y]).unwrap();
        }
        let report =
            telescope_check(&[block.ledger()], &[block.info_gain()]).unwrap();
        assert!(report.min_slack >= -TELESCOPE_TOL, "slack {}", report.min_slack);
    }

    #[test]
    fn empty_ledgers_have_zero_slack_and_mismatch_errors() {
        let report = telescope_check(&[&[], &[]], &[0.0, 0.0]).unwrap();
        assert_eq!(report.min_slack, 0.0);
        assert_eq!(report.per_step_slack, vec![0.0, 0.0]);
        assert!(telescope_check(&[&[]], &[0.0, 0.0]).is_err());
    }

    #[test]
    fn ledger_identities_hold_on_a_live_design() {
        let mut block = DataBlock::new(Kernel::squared_exponential(0.6), 1.3).unwrap();
        for i in 0..60 {
            block.append(&[(i as f64 * 0.29).sin(), (i as f64 * 0.53).cos()]).unwrap();
        }
        let report = ledger_check(&[block.ledger()]);
        assert_eq!(report.entries, 60);
        assert_eq!(report.jittered, 0);
        assert!(report.max_err <= 1e-12, "max_err {}", report.max_err);
    }

    #[test]
    fn broken_entries_are_caught_and_jittered_ones_excluded() {
        let broken = kernel_core::AppendStats {
            index: 0,
            pre_bonus_sq: 1.0,
            post_bonus_sq: 0.9, // should be 0.5
            info_gain_increment: 1.0, // should be ½·ln 2
            jitter: 0.0,
        };
        let report = ledger_check(&[&[broken]]);
        assert_abs_diff_eq!(
            report.max_err,
            1.0 - 0.5 * std::f64::consts::LN_2,
            epsilon = 1e-12
        );

        let jittered = kernel_core::AppendStats { jitter: 1e-10, ..broken };
        let report = ledger_check(&[&[jittered]]);
        assert_eq!(report.jittered, 1);
        assert_eq!(report.max_err, 0.0);
    }
}
