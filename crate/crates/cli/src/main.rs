//! `cqec`: run simulations, analytic curves, optimizer sweeps, validation
//! and table dumps from a TOML experiment file.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use cqec_core::harness::{run, ExperimentConfig, HarnessError, Mode};

#[derive(Parser)]
#[command(name = "cqec", version, about = "Continuous error correction of the nine-qubit Bacon-Shor code")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo of the full protocol; logical rates per sweep point.
    Simulate(Common),
    /// Closed-form rates and SNR over the sweep axis.
    Analytic(Common),
    /// Optimal thresholds and T_c over a Γ_d sweep.
    Optimize(Common),
    /// Golden tables, dual implementations and the full-space oracle.
    Validate(Common),
    /// Dump the error-action, Q-product and harmful-pair tables.
    Tables(Common),
}

#[derive(Args)]
struct Common {
    /// Experiment file (TOML); defaults are used when omitted.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Master seed; overrides `run.master_seed`.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Worker threads; overrides `run.workers`. Never changes results.
    #[arg(long, value_name = "N", env = "CQEC_WORKERS")]
    workers: Option<usize>,
    /// Output directory; overrides `run.out_dir` (default `out/<mode>`).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

fn load(mode: Mode, c: &Common) -> Result<ExperimentConfig> {
    let mut cfg = match &c.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let cfg = ExperimentConfig::from_toml(&text).with_context(|| format!("parsing {}", path.display()))?;
            if cfg.mode != mode {
                eprintln!("note: {} declares mode `{}`; running `{}`", path.display(), cfg.mode.name(), mode.name());
            }
            cfg
        }
        None => ExperimentConfig::new(mode),
    };
    cfg.mode = mode;
    if let Some(s) = c.seed {
        cfg.run.master_seed = s;
    }
    if let Some(w) = c.workers {
        cfg.run.workers = Some(w);
    }
    if let Some(o) = &c.out {
        cfg.run.out_dir = Some(o.clone());
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, common) = match &cli.command {
        Command::Simulate(c) => (Mode::Simulate, c),
        Command::Analytic(c) => (Mode::Analytic, c),
        Command::Optimize(c) => (Mode::Optimize, c),
        Command::Validate(c) => (Mode::Validate, c),
        Command::Tables(c) => (Mode::Tables, c),
    };
    let cfg = match load(mode, common) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let out = cfg.run.out_dir.clone().unwrap_or_else(|| PathBuf::from("out").join(mode.name()));
    match run(&cfg, &out) {
        Ok(rep) if rep.failures.is_empty() => {
            eprintln!("{} rows written to {}", rep.rows, out.display());
            ExitCode::SUCCESS
        }
        Ok(rep) => {
            eprintln!("{} of {} validation items failed", rep.failures.len(), rep.rows);
            ExitCode::FAILURE
        }
        Err(e @ HarnessError::Config(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
