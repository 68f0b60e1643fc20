//! A uniform, borrowed view of one recorded episode.
//!
//! The audits only need four things per episode — the value tables the agent
//! acted on, the exploration multiplier, the realized trajectory, and the
//! exact instantaneous regret — so both learner front-ends are adapted to the
//! same lightweight view instead of each audit knowing about run types.

use crate::error::{Error, Result};
use kovi::{EpisodeTables, KoviRun};
use mdp_sim::Trajectory;
use novi::NoviRun;

/// Borrowed per-episode data consumed by every audit.
#[derive(Debug, Clone, Copy)]
pub struct EpisodeView<'a> {
    /// Episode index (0-based).
    pub episode: usize,
    /// The optimistic tables the agent computed before acting.
    pub tables: &'a EpisodeTables,
    /// Exploration multiplier used when those tables were formed.
    pub beta: f64,
    /// The realized rollout.
    pub trajectory: &'a Trajectory,
    /// Exact `V*₁(x₁) − V₁^π(x₁)` for this episode's greedy policy.
    pub instant_regret: f64,
}

/// Views over a kernel-learner run.
///
/// # Errors
///
/// [`Error::MissingTables`] if any episode was recorded without tables.
pub fn kovi_views(run: &KoviRun) -> Result<Vec<EpisodeView<'_>>> {
    run.records
        .iter()
        .map(|r| {
            let tables = r.tables.as_ref().ok_or(Error::MissingTables(r.episode))?;
            Ok(EpisodeView {
                episode: r.episode,
                tables,
                beta: r.beta,
                trajectory: &r.trajectory,
                instant_regret: r.instant_regret,
            })
        })
        .collect()
}

/// Views over a network-learner run.
///
/// # Errors
///
/// [`Error::MissingTables`] if any episode was recorded without tables.
pub fn novi_views(run: &NoviRun) -> Result<Vec<EpisodeView<'_>>> {
    run.records
        .iter()
        .map(|r| {
            let tables = r.tables.as_ref().ok_or(Error::MissingTables(r.episode))?;
            Ok(EpisodeView {
                episode: r.episode,
                tables,
                beta: r.beta,
                trajectory: &r.trajectory,
                instant_regret: r.instant_regret,
            })
        })
        .collect()
}
