use std::fs;
use std::path::{Path, PathBuf};
use std::process;

use clap::{Parser, Subcommand};

use ovi_lab::{
    atomic_write, parse_grid, run_command, spectrum_command, sweep_command, sweep_csv,
    validate_command, validate_suite, CliError, Result, RunSpec, EXIT_INVARIANT,
};

/// Numerical laboratory for optimistic least-squares value iteration with
/// kernel and wide-network function approximation.
#[derive(Parser)]
#[command(name = "ovi-lab", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Run one experiment per configured seed; writes one per-episode CSV
    /// trace per seed and prints a one-line JSON summary per run.
    Run {
        /// Path to the JSON run spec.
        #[arg(long)]
        config: PathBuf,
        /// Run only this seed, overriding the spec's seed list.
        #[arg(long)]
        seed: Option<u64>,
        /// Directory for the CSV traces (created if missing).
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run a labelled grid of learner overrides on one shared environment
    /// with paired seeds; writes one CSV row per cell.
    Sweep {
        /// Path to the JSON base run spec.
        #[arg(long)]
        config: PathBuf,
        /// Path to the JSON grid: an array of cells, each a `label` plus
        /// learner fields to override.
        #[arg(long)]
        grid: PathBuf,
        /// Where the result table goes (written atomically).
        #[arg(long, default_value = "sweep.csv")]
        out: PathBuf,
    },
    /// Print the sphere-harmonic spectrum of a wide-network tangent kernel.
    Spectrum {
        /// Activation: quadratic, sine, or relu_power:<s>.
        #[arg(long)]
        activation: String,
        /// Ambient dimension (inputs live on the sphere S^{d-1}).
        #[arg(long)]
        d: usize,
        /// Largest harmonic degree to tabulate.
        #[arg(long, default_value_t = 8)]
        jmax: usize,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit runs against the structural identities (optimism window, exact
    /// regret decomposition, martingale band, information-gain telescope,
    /// update ledger). Without --config, audits the bundled fixture suite.
    /// Exits 4 if any identity is violated.
    Validate {
        /// Audit this run spec instead of the bundled fixtures.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Cap each audited run at 20 episodes.
        #[arg(long)]
        fast: bool,
        /// Also write the merged report JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_config(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("reading '{}': {e}", path.display())))
}

fn real_main() -> Result<i32> {
    match Cli::parse().command {
        Commands::Run { config, seed, out } => {
            let mut spec = RunSpec::parse(&read_config(&config)?)?;
            if let Some(s) = seed {
                spec.seeds = vec![s];
            }
            let outputs = run_command(&spec)?;
            fs::create_dir_all(&out).map_err(|e| {
                CliError::Output(format!("creating '{}': {e}", out.display()))
            })?;
            for mut o in outputs {
                let path = out.join(format!("trace_{}.csv", o.seed));
                atomic_write(&path, &o.csv)?;
                o.summary["trace"] = serde_json::json!(path.display().to_string());
                println!("{}", serde_json::to_string(&o.summary)?);
            }
            Ok(0)
        }
        Commands::Sweep { config, grid, out } => {
            let base = RunSpec::parse(&read_config(&config)?)?;
            let cells = parse_grid(&read_config(&grid)?)?;
            let rows = sweep_command(&base, &cells)?;
            atomic_write(&out, &sweep_csv(&rows)?)?;
            println!("wrote {} sweep row(s) to {}", rows.len(), out.display());
            Ok(0)
        }
        Commands::Spectrum {
            activation,
            d,
            jmax,
            out,
        } => {
            let table = spectrum_command(&activation, d, jmax)?;
            let text = serde_json::to_string_pretty(&table)?;
            match out {
                Some(path) => atomic_write(&path, format!("{text}\n").as_bytes())?,
                None => println!("{text}"),
            }
            Ok(0)
        }
        Commands::Validate { config, fast, out } => {
            let results = match config {
                Some(path) => validate_command(&RunSpec::parse(&read_config(&path)?)?, fast)?,
                None => validate_suite(fast)?,
            };
            let mut all_ok = true;
            for (name, full) in &results {
                let ok = full.summary.invariants_ok();
                all_ok &= ok;
                println!(
                    "{}",
                    serde_json::json!({
                        "fixture": name,
                        "invariants_ok": ok,
                        "report": full.summary,
                    })
                );
            }
            if let Some(path) = &out {
                let reports: Vec<_> = results.iter().map(|(_, f)| f.summary.clone()).collect();
                let merged = diagnostics::DiagnosticsReport::merge(&reports)
                    .ok_or_else(|| CliError::Config("nothing was audited".into()))?;
                let text = serde_json::to_string_pretty(&merged)?;
                atomic_write(path, format!("{text}\n").as_bytes())?;
            }
            if all_ok {
                Ok(0)
            } else {
                eprintln!("error: a structural run invariant is violated");
                Ok(EXIT_INVARIANT)
            }
        }
    }
}

fn main() {
    match real_main() {
        Ok(code) => process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            process::exit(e.exit_code());
        }
    }
}
