//! Experiment orchestration: TOML configuration, seeded parallel Monte Carlo
//! sweeps, analytic curves, optimizer sweeps, validation and table dumps.
//!
//! Results are a pure function of the configuration and the master seed.
//! Each trajectory draws from its own counter-based stream, work is split
//! into fixed-size chunks, and chunk aggregates are folded in trajectory
//! order, so the worker count never changes any output byte.

mod config;
mod modes;
mod output;
mod seed;
mod simulate;
mod validate;

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

pub use config::{
    ExperimentConfig, Mode, OptimizeSettings, Physics, Point, Protocol, RunSettings, Sweep,
    SweepParameter, ValidateSettings,
};
pub use modes::{AnalyticRow, ErrorTableRow, HarmfulPairRow, OptimizeRow, QProductRow};
pub use output::{OutputDir, META_FILE, RESULTS_FILE, TRAJECTORIES_FILE};
pub use seed::{derive_seed, trajectory_index, JUMP_STREAM, NOISE_STREAM};
pub use simulate::{protocol_config, simulate_point, PointSummary, SimRow, TrajectoryLine, CHUNK};
pub use validate::{run_checks, CheckRow};

/// Version stamp written into every artifact.
pub const VERSION: &str = concat!("cqec ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration:\n  - {}", .0.join("\n  - "))]
    Config(Vec<String>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Decoder(#[from] crate::decoder::DecoderError),
    #[error(transparent)]
    Analytics(#[from] crate::analytics::AnalyticsError),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub mode: Mode,
    pub rows: usize,
    /// Failed validation items (empty for other modes).
    pub failures: Vec<String>,
}

#[derive(Serialize)]
struct Meta<'a, E: Serialize> {
    version: &'static str,
    mode: &'static str,
    points: usize,
    config: &'a ExperimentConfig,
    extra: E,
}

/// Thread pool honoring `run.workers` (`None`: rayon's default).
pub fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool, HarnessError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        b = b.num_threads(w);
    }
    b.build().map_err(|e| HarnessError::Pool(e.to_string()))
}

/// Validate the configuration, run the selected mode and write
/// `results.csv`, `meta.json` and optionally `trajectories.jsonl` into `out`.
pub fn run(cfg: &ExperimentConfig, out: &Path) -> Result<RunReport, HarnessError> {
    let points = cfg.resolve()?;
    let pool = pool(cfg.run.workers)?;
    let mut dir = OutputDir::create(
        out,
        cfg.mode == Mode::Simulate && cfg.run.write_trajectories,
    )?;
    // the worker count never influences results, so keep it out of the metadata
    let mut recorded = cfg.clone();
    recorded.run.workers = None;
    recorded.run.out_dir = None;
    let meta = |extra| Meta {
        version: VERSION,
        mode: cfg.mode.name(),
        points: points.len(),
        config: &recorded,
        extra,
    };

    let report = match cfg.mode {
        Mode::Simulate => {
            let n = simulate::run(cfg, &points, &pool, &mut dir)?;
            dir.finish(&meta(serde_json::Value::Null))?;
            RunReport {
                mode: cfg.mode,
                rows: n,
                failures: Vec::new(),
            }
        }
        Mode::Analytic => {
            let n = modes::analytic(cfg, &points, &mut dir)?;
            dir.finish(&meta(serde_json::Value::Null))?;
            RunReport {
                mode: cfg.mode,
                rows: n,
                failures: Vec::new(),
            }
        }
        Mode::Optimize => {
            let (n, extra) = modes::optimize(cfg, &points, &pool, &mut dir)?;
            dir.finish(&meta(extra))?;
            RunReport {
                mode: cfg.mode,
                rows: n,
                failures: Vec::new(),
            }
        }
        Mode::Validate => {
            let rows = validate::run_checks(&cfg.validate, cfg.run.master_seed);
            for r in &rows {
                dir.row(r)?;
            }
            let failures: Vec<String> = rows
                .iter()
                .filter(|r| !r.passed)
                .map(|r| format!("{}: {}", r.item, r.detail))
                .collect();
            dir.finish(&meta(serde_json::json!({ "failed": failures.len() })))?;
            RunReport {
                mode: cfg.mode,
                rows: rows.len(),
                failures,
            }
        }
        Mode::Tables => {
            let n = modes::tables(&mut dir)?;
            dir.finish(&meta(serde_json::Value::Null))?;
            RunReport {
                mode: cfg.mode,
                rows: n,
                failures: Vec::new(),
            }
        }
    };
    Ok(report)
}
