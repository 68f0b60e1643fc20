//! Output rendering: per-episode CSV traces, sweep tables, atomic writes.
//!
//! Floats are written with Rust's shortest-round-trip formatting, so a file
//! parsed back yields bit-identical values and identical runs yield
//! byte-identical files.

use std::fs;
use std::path::Path;
use std::process;

use crate::error::{CliError, Result};

/// Write `bytes` to `path` atomically: the content lands in a temporary file
/// in the same directory and is renamed into place, so readers never observe
/// a half-written file and a crash leaves any existing file untouched.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => std::path::PathBuf::from("."),
    };
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::Output(format!("'{}' has no file name", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        file_name.to_string_lossy(),
        process::id()
    ));
    let finish = |r: std::io::Result<()>, what: &str| {
        r.map_err(|e| CliError::Output(format!("{what} '{}': {e}", tmp.display())))
    };
    finish(fs::write(&tmp, bytes), "writing")?;
    if let Err(e) = fs::rename(&tmp, path) {
        let _ = fs::remove_file(&tmp);
        return Err(CliError::Output(format!(
            "renaming into '{}': {e}",
            path.display()
        )));
    }
    Ok(())
}

fn fmt(x: f64) -> String {
    format!("{x}")
}

fn trace_header(horizon: usize, extra: &[&str]) -> Vec<String> {
    let mut cols = vec![
        "episode".to_string(),
        "instant_regret".to_string(),
        "cum_regret".to_string(),
    ];
    cols.extend((1..=horizon).map(|h| format!("info_gain_h{h}")));
    cols.push("beta".to_string());
    cols.push("seed".to_string());
    cols.extend(extra.iter().map(|s| s.to_string()));
    cols
}

/// Render a kernel-learner run as CSV with columns
/// `episode,instant_regret,cum_regret,info_gain_h1..hH,beta,seed`.
pub fn kovi_csv(run: &kovi::KoviRun, horizon: usize) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(trace_header(horizon, &[]))?;
    for rec in &run.records {
        let mut row = vec![
            rec.episode.to_string(),
            fmt(rec.instant_regret),
            fmt(rec.cum_regret),
        ];
        row.extend(rec.info_gain_per_step.iter().copied().map(fmt));
        row.push(fmt(rec.beta));
        row.push(run.seed.to_string());
        w.write_record(&row)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Output(format!("assembling csv: {e}")))
}

/// Render a neural-learner run as CSV: the kernel-learner columns plus
/// `grad_norm_max,linearization_gap`.
pub fn novi_csv(run: &novi::NoviRun, horizon: usize) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(trace_header(horizon, &["grad_norm_max", "linearization_gap"]))?;
    for rec in &run.records {
        let mut row = vec![
            rec.episode.to_string(),
            fmt(rec.instant_regret),
            fmt(rec.cum_regret),
        ];
        row.extend(rec.info_gain_per_step.iter().copied().map(fmt));
        row.push(fmt(rec.beta));
        row.push(run.seed.to_string());
        row.push(fmt(rec.grad_norm_max));
        row.push(fmt(rec.linearization_gap));
        w.write_record(&row)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Output(format!("assembling csv: {e}")))
}

/// One row of a sweep result table.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub label: String,
    pub final_cum_regret: f64,
    /// `None` when fewer than two episodes had positive cumulative regret.
    pub regret_exponent: Option<f64>,
    /// `None` for kernel-learner variants (no network to linearize).
    pub max_linearization_gap: Option<f64>,
    pub seed: u64,
}

/// Render sweep rows as CSV with columns
/// `label,final_cum_regret,regret_exponent,max_linearization_gap,seed`;
/// missing values become empty fields. An empty sweep yields just the header.
pub fn sweep_csv(rows: &[SweepRow]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "label",
        "final_cum_regret",
        "regret_exponent",
        "max_linearization_gap",
        "seed",
    ])?;
    for row in rows {
        w.write_record([
            row.label.clone(),
            fmt(row.final_cum_regret),
            row.regret_exponent.map(fmt).unwrap_or_default(),
            row.max_linearization_gap.map(fmt).unwrap_or_default(),
            row.seed.to_string(),
        ])?;
    }
    w.into_inner()
        .map_err(|e| CliError::Output(format!("assembling csv: {e}")))
}
