//! Temporal-difference residuals and the optimism audit.
//!
//! For recorded tables `Q_h`, `V_h` the residual at `(h, x, a)` is
//!
//! ```text
//! δ_h(x, a) = r_h(x, a) + Σ_x' P_h(x'|x, a) V_{h+1}(x') − Q_h(x, a)
//! ```
//!
//! computed with the *exact* transition kernel, no sampling. A well-behaved
//! optimistic learner keeps `δ ≤ 0` (the tables over-estimate the Bellman
//! backup) while never over-shooting by more than twice the exploration
//! width: `δ ≥ −2β·b_h(x, a)`. The audit counts how often either side fails
//! beyond a fixed tolerance.

use crate::view::EpisodeView;
use kovi::EpisodeTables;
use mdp_sim::EpisodicMdp;
use serde::{Deserialize, Serialize};

/// Slack allowed on both sides of the optimism window before a `(t, h, x, a)`
/// tuple counts as a violation. Absorbs nothing but floating-point noise.
pub const AUDIT_TOL: f64 = 1e-6;

/// Exact Bellman residuals `δ_h(x, a)` of one episode's tables, indexed
/// `[h][x][a]`.
///
/// # Panics
///
/// If the tables do not match the environment's shape.
pub fn td_error_table(mdp: &EpisodicMdp, tables: &EpisodeTables) -> Vec<Vec<Vec<f64>>> {
    let (horizon, s, a_n) = (mdp.horizon(), mdp.n_states(), mdp.n_actions());
    assert_eq!(tables.q.len(), horizon, "tables cover a different horizon than the environment");
    assert_eq!(tables.v.len(), horizon + 1, "value table must have horizon+1 rows");
    (0..horizon)
        .map(|h| {
            (0..s)
                .map(|x| {
                    (0..a_n)
                        .map(|a| {
                            mdp.reward(h, x, a)
                                + mdp.expected_next_value(h, x, a, &tables.v[h + 1])
                                - tables.q[h][x][a]
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Outcome of the optimism audit over a whole run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimismReport {
    /// Number of `(episode, h, x, a)` tuples checked.
    pub checks: usize,
    /// Tuples where `δ > tol` or `δ < −2β·b − tol`.
    pub violations: usize,
    /// `violations / checks` (0 when nothing was checked).
    pub violation_frac: f64,
    /// Largest residual seen; positive values mean the tables somewhere
    /// under-estimate the Bellman backup.
    pub max_delta: f64,
    /// Largest excess below the `−2β·b` floor; positive values mean the
    /// tables somewhere over-shoot by more than twice the width.
    pub max_floor_excess: f64,
}

/// Check every `(episode, h, x, a)` tuple of a run against the two-sided
/// optimism window `−2β·b_h(x,a) − tol ≤ δ_h(x,a) ≤ tol`.
pub fn optimism_audit(mdp: &EpisodicMdp, views: &[EpisodeView]) -> OptimismReport {
    let mut checks = 0usize;
    let mut violations = 0usize;
    let mut max_delta = f64::NEG_INFINITY;
    let mut max_floor_excess = f64::NEG_INFINITY;

    for view in views {
        let delta = td_error_table(mdp, view.tables);
        for (h, plane) in delta.iter().enumerate() {
            for (x, row) in plane.iter().enumerate() {
                for (a, &d) in row.iter().enumerate() {
                    let floor = -2.0 * view.beta * view.tables.bonus[h][x][a];
                    max_delta = max_delta.max(d);
                    max_floor_excess = max_floor_excess.max(floor - d);
                    if d > AUDIT_TOL || d < floor - AUDIT_TOL {
                        violations += 1;
                    }
                    checks += 1;
                }
            }
        }
    }

    if checks == 0 {
        max_delta = 0.0;
        max_floor_excess = 0.0;
    }
    OptimismReport {
        checks,
        violations,
        violation_frac: violations as f64 / checks.max(1) as f64,
        max_delta,
        max_floor_excess,
    }
}
