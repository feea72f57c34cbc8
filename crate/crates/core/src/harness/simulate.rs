//! Monte Carlo sweep over protocol realizations.

use rayon::prelude::*;
use serde::Serialize;

use super::config::{ExperimentConfig, Point};
use super::output::OutputDir;
use super::seed::{derive_seed, trajectory_index, JUMP_STREAM, NOISE_STREAM};
use super::{HarnessError, VERSION};
use crate::analytics::{offsets, total_rate, SnrInputs};
use crate::correlators::FilterParams;
use crate::decoder::{
    estimate_rates, run_protocol, DecoderError, OutcomeCounts, ProtocolConfig, ProtocolOutcome,
    RateEstimate, Thresholds,
};
use crate::trajectory_engine::MeasurementParams;

/// Trajectories per work item. Fixed so chunk boundaries never depend on
/// the worker count.
pub const CHUNK: u64 = 64;

/// Frozen column order of `results.csv` in simulate mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimRow {
    pub sweep_parameter: String,
    pub sweep_value: Option<f64>,
    pub eta: f64,
    pub gamma_d_per_tcoll: Option<f64>,
    pub dt_tcoll: f64,
    pub t_op_tcoll: f64,
    pub tau_c_tcoll: f64,
    pub t_c_tcoll: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub final_readout: bool,
    pub n_trajectories: u64,
    pub n_none: u64,
    pub n_x: u64,
    pub n_y: u64,
    pub n_z: u64,
    pub p_x: f64,
    pub p_x_se: f64,
    pub p_y: f64,
    pub p_y_se: f64,
    pub p_z: f64,
    pub p_z_se: f64,
    pub gamma_x_per_tcoll: f64,
    pub gamma_x_se: f64,
    pub gamma_y_per_tcoll: f64,
    pub gamma_y_se: f64,
    pub gamma_z_per_tcoll: f64,
    pub gamma_z_se: f64,
    pub gamma_total_per_tcoll: f64,
    pub gamma_total_se: f64,
    pub insufficient_events: bool,
    pub predicted_gamma_total_per_tcoll: f64,
    pub predicted_offset_x: f64,
    pub predicted_offset_y: f64,
    pub predicted_offset_z: f64,
    pub mean_true_jumps: f64,
    pub mean_monitored_jumps: f64,
    pub multi_error_events: u64,
    pub clipped_steps: u64,
    pub version: &'static str,
}

/// One line of `trajectories.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryLine {
    pub point: usize,
    pub trajectory: u64,
    #[serde(flatten)]
    pub outcome: ProtocolOutcome,
}

/// Aggregate over all realizations at one sweep point.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointSummary {
    pub counts: OutcomeCounts,
    pub true_jumps: u64,
    pub monitored_jumps: u64,
    pub multi_error_events: u64,
    pub clipped_steps: u64,
}

impl PointSummary {
    fn add(&mut self, o: &ProtocolOutcome) {
        self.counts.add(o.outcome);
        self.true_jumps += o.true_jumps;
        self.monitored_jumps += o.monitored_jumps;
        self.multi_error_events += o.multi_error_events;
        self.clipped_steps += o.clip_count;
    }

    fn merge(&mut self, other: &PointSummary) {
        self.counts.merge(&other.counts);
        self.true_jumps += other.true_jumps;
        self.monitored_jumps += other.monitored_jumps;
        self.multi_error_events += other.multi_error_events;
        self.clipped_steps += other.clipped_steps;
    }
}

/// Protocol configuration for a resolved point (`Γ_m = 1`).
pub fn protocol_config(cfg: &ExperimentConfig, p: &Point) -> Result<ProtocolConfig, HarnessError> {
    let params = MeasurementParams::new(1.0, p.eta, p.dt).map_err(DecoderError::from)?;
    let filter =
        FilterParams::new(p.tau_c, p.t_c).map_err(|e| HarnessError::Config(vec![e.to_string()]))?;
    let th = Thresholds::new(p.theta1, p.theta2)?;
    let t_op = p
        .t_op
        .ok_or_else(|| HarnessError::Config(vec!["missing operation time".into()]))?;
    let mut pc = ProtocolConfig::new(params, p.model, filter, th, t_op);
    pc.final_readout = cfg.protocol.final_readout;
    pc.bank_init = cfg.protocol.bank_init;
    pc.initial = cfg.protocol.initial_gauge;
    pc.rate_bound = cfg.run.rate_bound;
    Ok(pc)
}

/// Run all trajectories of one point on `pool`. Per-trajectory records
/// are returned in index order when `keep` is set.
pub fn simulate_point(
    cfg: &ExperimentConfig,
    p: &Point,
    pool: &rayon::ThreadPool,
    keep: bool,
) -> Result<(PointSummary, Vec<TrajectoryLine>), HarnessError> {
    let pc = protocol_config(cfg, p)?;
    let n = cfg.run.n_trajectories;
    let seed = cfg.run.master_seed;
    let chunks: Vec<Result<(PointSummary, Vec<TrajectoryLine>), DecoderError>> =
        pool.install(|| {
            (0..n.div_ceil(CHUNK))
                .into_par_iter()
                .map(|c| {
                    let mut sum = PointSummary::default();
                    let mut lines = Vec::new();
                    for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                        let idx = trajectory_index(p.index, i);
                        let o = run_protocol(
                            &pc,
                            derive_seed(seed, idx, NOISE_STREAM),
                            derive_seed(seed, idx, JUMP_STREAM),
                        )?;
                        sum.add(&o);
                        if keep {
                            lines.push(TrajectoryLine {
                                point: p.index,
                                trajectory: i,
                                outcome: o,
                            });
                        }
                    }
                    Ok((sum, lines))
                })
                .collect()
        });
    let mut total = PointSummary::default();
    let mut all = Vec::new();
    for c in chunks {
        let (s, l) = c?;
        total.merge(&s);
        all.extend(l);
    }
    Ok((total, all))
}

fn row(
    cfg: &ExperimentConfig,
    p: &Point,
    s: &PointSummary,
    est: &RateEstimate,
) -> Result<SimRow, HarnessError> {
    let t_op = p.t_op.expect("validated");
    let n = s.counts.n as f64;
    let frac = s.counts.fractions();
    let bse = |q: f64| (q * (1.0 - q) / n).sqrt();
    let th = Thresholds::new(p.theta1, p.theta2)?;
    let pred = total_rate(&p.model, &th, &SnrInputs::new(p.tau_c, p.t_c, p.eta, 1.0)?)?;
    let off = offsets(&p.model, p.t_c, t_op);
    Ok(SimRow {
        sweep_parameter: cfg
            .sweep
            .as_ref()
            .map(|s| s.parameter.key().to_string())
            .unwrap_or_default(),
        sweep_value: p.sweep_value,
        eta: p.eta,
        gamma_d_per_tcoll: p.gamma_d,
        dt_tcoll: p.dt,
        t_op_tcoll: t_op,
        tau_c_tcoll: p.tau_c,
        t_c_tcoll: p.t_c,
        theta1: p.theta1,
        theta2: p.theta2,
        final_readout: cfg.protocol.final_readout,
        n_trajectories: s.counts.n,
        n_none: s.counts.n - s.counts.x - s.counts.y - s.counts.z,
        n_x: s.counts.x,
        n_y: s.counts.y,
        n_z: s.counts.z,
        p_x: frac[0],
        p_x_se: bse(frac[0]),
        p_y: frac[1],
        p_y_se: bse(frac[1]),
        p_z: frac[2],
        p_z_se: bse(frac[2]),
        gamma_x_per_tcoll: est.gamma[0],
        gamma_x_se: est.se[0],
        gamma_y_per_tcoll: est.gamma[1],
        gamma_y_se: est.se[1],
        gamma_z_per_tcoll: est.gamma[2],
        gamma_z_se: est.se[2],
        gamma_total_per_tcoll: est.total,
        gamma_total_se: est.se_total,
        insufficient_events: est.insufficient,
        predicted_gamma_total_per_tcoll: pred.total,
        predicted_offset_x: off[0],
        predicted_offset_y: off[1],
        predicted_offset_z: off[2],
        mean_true_jumps: s.true_jumps as f64 / n,
        mean_monitored_jumps: s.monitored_jumps as f64 / n,
        multi_error_events: s.multi_error_events,
        clipped_steps: s.clipped_steps,
        version: VERSION,
    })
}

pub(super) fn run(
    cfg: &ExperimentConfig,
    points: &[Point],
    pool: &rayon::ThreadPool,
    dir: &mut OutputDir,
) -> Result<usize, HarnessError> {
    for (k, p) in points.iter().enumerate() {
        let started = std::time::Instant::now();
        let (s, lines) = simulate_point(cfg, p, pool, dir.wants_trajectories())?;
        let est = estimate_rates(
            &s.counts,
            p.t_op.expect("validated"),
            cfg.protocol.rate_method,
        )?;
        let r = row(cfg, p, &s, &est)?;
        dir.row(&r)?;
        for l in &lines {
            dir.trajectory(l)?;
        }
        let label = match p.sweep_value {
            Some(v) => format!("{} = {v}", r.sweep_parameter),
            None => "base point".to_string(),
        };
        eprintln!(
            "[{}/{}] {label}: γ_total = {:.3e} ± {:.1e} (predicted {:.3e}), {} trajectories in {:.1?}",
            k + 1,
            points.len(),
            r.gamma_total_per_tcoll,
            r.gamma_total_se,
            r.predicted_gamma_total_per_tcoll,
            r.n_trajectories,
            started.elapsed()
        );
    }
    Ok(points.len())
}
