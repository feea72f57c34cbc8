//! Deterministic modes: analytic curves, optimizer sweeps and table dumps.

use rayon::prelude::*;
use serde::Serialize;

use super::config::{ExperimentConfig, Point};
use super::output::OutputDir;
use super::{HarnessError, VERSION};
use crate::analytics::{
    crossover, offsets, optimize_with, pair_window, snr_exact, snr_per_tcoll, total_rate,
    OptimizerSettings, SnrInputs,
};
use crate::code_algebra::{
    enumerate_harmful_pairs, q_mul, single_error_actions, single_qubit_errors, SubspaceIndex,
};
use crate::decoder::Thresholds;

/// Frozen column order of `results.csv` in analytic mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticRow {
    pub sweep_parameter: String,
    pub sweep_value: Option<f64>,
    pub eta: f64,
    pub gamma_d_per_tcoll: Option<f64>,
    pub tau_c_tcoll: f64,
    pub t_c_tcoll: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub snr: f64,
    pub snr_exact: f64,
    pub snr_per_tcoll: f64,
    pub gamma_x_large_tc: f64,
    pub gamma_y_large_tc: f64,
    pub gamma_z_large_tc: f64,
    pub gamma_x_small_tc: f64,
    pub gamma_y_small_tc: f64,
    pub gamma_z_small_tc: f64,
    pub gamma_x_per_tcoll: f64,
    pub gamma_y_per_tcoll: f64,
    pub gamma_z_per_tcoll: f64,
    pub gamma_total_per_tcoll: f64,
    pub offset_x: f64,
    pub offset_y: f64,
    pub offset_z: f64,
    pub version: &'static str,
}

/// Frozen column order of `results.csv` in optimize mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizeRow {
    pub gamma_d_per_tcoll: f64,
    pub eta: f64,
    pub tau_c_tcoll: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub t_c_tcoll: f64,
    pub gamma_per_tcoll: f64,
    pub snr: f64,
    pub converged: bool,
    pub version: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorTableRow {
    pub error: String,
    pub subspace: usize,
    pub pattern: String,
    pub logical: &'static str,
    pub gauge_op: String,
    pub phase_exp: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QProductRow {
    pub left: usize,
    pub right: usize,
    pub product: usize,
    /// Product phase `i^phase_exp`.
    pub phase_exp: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmfulPairRow {
    pub e1: String,
    pub e2: String,
    pub logical: &'static str,
    pub subspace: usize,
    /// 1: disjoint stabilizer flips (single-flip window), 2: overlapping.
    pub window: u8,
}

fn sweep_key(cfg: &ExperimentConfig) -> String {
    cfg.sweep
        .as_ref()
        .map(|s| s.parameter.key().to_string())
        .unwrap_or_default()
}

pub(super) fn analytic(
    cfg: &ExperimentConfig,
    points: &[Point],
    dir: &mut OutputDir,
) -> Result<usize, HarnessError> {
    for p in points {
        let th = Thresholds::new(p.theta1, p.theta2)?;
        let inp = SnrInputs::new(p.tau_c, p.t_c, p.eta, 1.0)?;
        let r = total_rate(&p.model, &th, &inp)?;
        let off = offsets(&p.model, p.t_c, p.t_op.unwrap_or(p.t_c));
        dir.row(&AnalyticRow {
            sweep_parameter: sweep_key(cfg),
            sweep_value: p.sweep_value,
            eta: p.eta,
            gamma_d_per_tcoll: p.gamma_d,
            tau_c_tcoll: p.tau_c,
            t_c_tcoll: p.t_c,
            theta1: p.theta1,
            theta2: p.theta2,
            snr: r.snr,
            snr_exact: snr_exact(&inp),
            snr_per_tcoll: snr_per_tcoll(inp.s(), p.eta),
            gamma_x_large_tc: r.large_tc[0],
            gamma_y_large_tc: r.large_tc[1],
            gamma_z_large_tc: r.large_tc[2],
            gamma_x_small_tc: r.small_tc[0],
            gamma_y_small_tc: r.small_tc[1],
            gamma_z_small_tc: r.small_tc[2],
            gamma_x_per_tcoll: r.per_type[0],
            gamma_y_per_tcoll: r.per_type[1],
            gamma_z_per_tcoll: r.per_type[2],
            gamma_total_per_tcoll: r.total,
            offset_x: off[0],
            offset_y: off[1],
            offset_z: off[2],
            version: VERSION,
        })?;
    }
    Ok(points.len())
}

pub(super) fn optimize(
    cfg: &ExperimentConfig,
    points: &[Point],
    pool: &rayon::ThreadPool,
    dir: &mut OutputDir,
) -> Result<(usize, serde_json::Value), HarnessError> {
    let settings = OptimizerSettings {
        tau_c: cfg.optimize.tau_c_tcoll,
        theta1_factor: cfg.optimize.theta1_factor,
        ..OptimizerSettings::default()
    };
    let results: Vec<_> = pool.install(|| {
        points
            .par_iter()
            .map(|p| optimize_with(p.gamma_d.expect("validated"), p.eta, &settings))
            .collect()
    });
    for o in results {
        let o = o?;
        if !o.converged {
            eprintln!(
                "optimum for Γ_d = {:e} sits on the search boundary",
                o.gamma_d
            );
        }
        dir.row(&OptimizeRow {
            gamma_d_per_tcoll: o.gamma_d,
            eta: o.eta,
            tau_c_tcoll: o.tau_c,
            theta1: o.theta1,
            theta2: o.theta2,
            t_c_tcoll: o.t_c,
            gamma_per_tcoll: o.gamma,
            snr: o.snr,
            converged: o.converged,
            version: VERSION,
        })?;
    }
    let extra = if cfg.optimize.crossover {
        let c = crossover(cfg.physics.eta, &settings)?;
        eprintln!("crossover Γ_d τ_coll = {c:.4e} at η = {}", cfg.physics.eta);
        serde_json::json!({ "crossover_gamma_d_per_tcoll": c })
    } else {
        serde_json::Value::Null
    };
    Ok((points.len(), extra))
}

pub(super) fn tables(dir: &mut OutputDir) -> Result<usize, HarnessError> {
    let errors = single_qubit_errors();
    let actions = single_error_actions();
    for (e, a) in errors.iter().zip(actions.iter()) {
        dir.row(&ErrorTableRow {
            error: e.to_string(),
            subspace: a.q_index.get(),
            pattern: a.q_index.pattern(),
            logical: a.logical.label(),
            gauge_op: a.gauge_op.to_string(),
            phase_exp: a.phase_exp,
        })?;
    }
    let products: Vec<QProductRow> = SubspaceIndex::all()
        .flat_map(|a| {
            SubspaceIndex::all().map(move |b| {
                let (c, ph) = q_mul(a, b);
                QProductRow {
                    left: a.get(),
                    right: b.get(),
                    product: c.get(),
                    phase_exp: ph,
                }
            })
        })
        .collect();
    dir.side_table("q_products.csv", &products)?;
    let pairs: Vec<HarmfulPairRow> = enumerate_harmful_pairs()
        .iter()
        .map(|h| HarmfulPairRow {
            e1: h.e1.to_string(),
            e2: h.e2.to_string(),
            logical: h.logical_type.label(),
            subspace: h.subspace.get(),
            window: pair_window(h),
        })
        .collect();
    dir.side_table("harmful_pairs.csv", &pairs)?;
    Ok(errors.len())
}
