//! Concentration check on the sampling terms.
//!
//! The per-step sampling terms from the decomposition form a martingale
//! difference sequence with increments bounded by `2H`, so Azuma–Hoeffding
//! gives, with probability at least `1 − p`,
//!
//! ```text
//! |Σ_{t,h} ζ_{t,h}| ≤ sqrt(16 · T · H³ · ln(2/p))
//! ```
//!
//! over `T` episodes of horizon `H`. One run yields one draw of the sum; the
//! check records whether the draw landed inside the bound. Across many seeds
//! the pass fraction should be at least `1 − p`.

use crate::decomp::{noise_steps, NoiseStep};
use crate::error::{Error, Result};
use crate::view::EpisodeView;
use mdp_sim::EpisodicMdp;
use serde::{Deserialize, Serialize};

/// The deviation bound `sqrt(16 · T · H³ · ln(2/p))`.
///
/// # Errors
///
/// [`Error::InvalidParameter`] unless `0 < failure_prob < 1`.
pub fn azuma_bound(episodes: usize, horizon: usize, failure_prob: f64) -> Result<f64> {
    if !(failure_prob > 0.0 && failure_prob < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "failure probability must lie in (0, 1), got {failure_prob}"
        )));
    }
    let t = episodes as f64;
    let h = horizon as f64;
    Ok((16.0 * t * h.powi(3) * (2.0 / failure_prob).ln()).sqrt())
}

/// Outcome of the concentration check on one run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AzumaReport {
    /// `|Σ ζ|` over all episodes and steps.
    pub statistic: f64,
    /// The high-probability bound for this run length.
    pub bound: f64,
    /// Whether the statistic landed inside the bound.
    pub pass: bool,
    /// Largest single `|ζ_{t,h}|` observed.
    pub max_step_abs: f64,
    /// The almost-sure per-step bound `2H`.
    pub step_bound: f64,
    /// Number of increments summed (`episodes · horizon`).
    pub steps: usize,
}

/// Sum the sampling increments of a run and compare against the bound at
/// failure probability `failure_prob`.
///
/// # Errors
///
/// [`Error::InvalidParameter`] for an out-of-range probability; environment
/// errors from exact policy evaluation.
pub fn azuma_check(
    mdp: &EpisodicMdp,
    views: &[EpisodeView],
    failure_prob: f64,
) -> Result<AzumaReport> {
    let bound = azuma_bound(views.len(), mdp.horizon(), failure_prob)?;
    let mut total = 0.0f64;
    let mut max_step_abs = 0.0f64;
    let mut steps = 0usize;
    for view in views {
        for noise in noise_steps(mdp, view)? {
            let z = NoiseStep::total(&noise);
            total += z;
            max_step_abs = max_step_abs.max(z.abs());
            steps += 1;
        }
    }
    let statistic = total.abs();
    Ok(AzumaReport {
        statistic,
        bound,
        pass: statistic <= bound,
        max_step_abs,
        step_bound: 2.0 * mdp.horizon() as f64,
        steps,
    })
}
