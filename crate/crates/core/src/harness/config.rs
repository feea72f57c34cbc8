//! TOML experiment configuration. Every physical quantity is expressed in
//! units of `τ_coll = 1/Γ_m` and the unit is part of the key name.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::correlators::BankInit;
use crate::decoder::RateMethod;
use crate::trajectory_engine::{ErrorModel, InitialGauge, DEFAULT_RATE_BOUND};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Simulate,
    Analytic,
    Optimize,
    Validate,
    Tables,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Simulate => "simulate",
            Mode::Analytic => "analytic",
            Mode::Optimize => "optimize",
            Mode::Validate => "validate",
            Mode::Tables => "tables",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Physics {
    pub eta: f64,
    /// Uniform depolarizing rate; split equally over X, Y, Z on each qubit.
    pub gamma_d_per_tcoll: f64,
    /// Per-qubit `[Γ_X, Γ_Y, Γ_Z]`, qubits 1..9; replaces `gamma_d_per_tcoll`.
    pub rates_per_tcoll: Option<Vec<[f64; 3]>>,
    pub dt_tcoll: f64,
    pub t_op_tcoll: Option<f64>,
    /// Alternative to `t_op_tcoll`: operation time as a multiple of `T_c`.
    pub t_op_per_t_c: Option<f64>,
}

impl Default for Physics {
    fn default() -> Self {
        Physics {
            eta: 1.0,
            gamma_d_per_tcoll: 0.0,
            rates_per_tcoll: None,
            dt_tcoll: 0.01,
            t_op_tcoll: None,
            t_op_per_t_c: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Protocol {
    pub tau_c_tcoll: f64,
    pub t_c_tcoll: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub final_readout: bool,
    pub bank_init: BankInit,
    pub initial_gauge: InitialGauge,
    pub rate_method: RateMethod,
}

impl Default for Protocol {
    fn default() -> Self {
        Protocol {
            tau_c_tcoll: 0.25,
            t_c_tcoll: 30.0,
            theta1: 0.44,
            theta2: 1.56,
            final_readout: true,
            bank_init: BankInit::FixedPoint,
            initial_gauge: InitialGauge::ZeroConfig,
            rate_method: RateMethod::PauliChannel,
        }
    }
}

/// Parameter that a sweep varies; names match the config keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    Eta,
    GammaDPerTcoll,
    DtTcoll,
    TOpTcoll,
    TauCTcoll,
    TCTcoll,
    Theta1,
    Theta2,
}

impl SweepParameter {
    pub fn key(self) -> &'static str {
        match self {
            SweepParameter::Eta => "eta",
            SweepParameter::GammaDPerTcoll => "gamma_d_per_tcoll",
            SweepParameter::DtTcoll => "dt_tcoll",
            SweepParameter::TOpTcoll => "t_op_tcoll",
            SweepParameter::TauCTcoll => "tau_c_tcoll",
            SweepParameter::TCTcoll => "t_c_tcoll",
            SweepParameter::Theta1 => "theta1",
            SweepParameter::Theta2 => "theta2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSettings {
    pub n_trajectories: u64,
    pub master_seed: u64,
    /// Thread count; `None` lets rayon decide. Never affects results.
    pub workers: Option<usize>,
    pub out_dir: Option<PathBuf>,
    pub write_trajectories: bool,
    /// Upper bound on `Γ_channel·dt` accepted by the jump sampler.
    pub rate_bound: f64,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            n_trajectories: 100,
            master_seed: 0,
            workers: None,
            out_dir: None,
            write_trajectories: false,
            rate_bound: DEFAULT_RATE_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptimizeSettings {
    pub theta1_factor: f64,
    /// Fixed `τ_c`; absent means the SNR-optimal value for `η`.
    pub tau_c_tcoll: Option<f64>,
    pub crossover: bool,
}

impl Default for OptimizeSettings {
    fn default() -> Self {
        OptimizeSettings {
            theta1_factor: 1.5,
            tau_c_tcoll: None,
            crossover: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ValidateSettings {
    /// Length of each reduced-vs-full-space comparison run.
    pub oracle_t_tcoll: f64,
    pub oracle_dt_tcoll: f64,
}

impl Default for ValidateSettings {
    fn default() -> Self {
        ValidateSettings {
            oracle_t_tcoll: 1.0,
            oracle_dt_tcoll: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub mode: Mode,
    #[serde(default)]
    pub physics: Physics,
    #[serde(default)]
    pub protocol: Protocol,
    #[serde(default)]
    pub sweep: Option<Sweep>,
    #[serde(default)]
    pub run: RunSettings,
    #[serde(default)]
    pub optimize: OptimizeSettings,
    #[serde(default)]
    pub validate: ValidateSettings,
}

/// One fully resolved sweep coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub index: usize,
    pub sweep_value: Option<f64>,
    pub eta: f64,
    pub gamma_d: Option<f64>,
    pub model: ErrorModel,
    pub dt: f64,
    pub t_op: Option<f64>,
    pub tau_c: f64,
    pub t_c: f64,
    pub theta1: f64,
    pub theta2: f64,
}

impl ExperimentConfig {
    pub fn new(mode: Mode) -> Self {
        ExperimentConfig {
            mode,
            physics: Physics::default(),
            protocol: Protocol::default(),
            sweep: None,
            run: RunSettings::default(),
            optimize: OptimizeSettings::default(),
            validate: ValidateSettings::default(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Config(vec![e.to_string()]))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config is always representable")
    }

    /// Resolve every sweep point, collecting all violated preconditions.
    pub fn resolve(&self) -> Result<Vec<Point>, HarnessError> {
        let mut bad = Vec::new();
        self.check_global(&mut bad);
        let values: Vec<Option<f64>> = match &self.sweep {
            Some(s) => s.values.iter().map(|&v| Some(v)).collect(),
            None => vec![None],
        };
        let mut points = Vec::with_capacity(values.len());
        for (index, v) in values.into_iter().enumerate() {
            let p = self.point(index, v);
            let tag = match v {
                Some(v) => format!(
                    "sweep point {index} ({} = {v})",
                    self.sweep.as_ref().unwrap().parameter.key()
                ),
                None => "base point".to_string(),
            };
            for msg in self.check_point(&p) {
                bad.push(format!("{tag}: {msg}"));
            }
            points.push(p);
        }
        if bad.is_empty() {
            Ok(points)
        } else {
            Err(HarnessError::Config(bad))
        }
    }

    fn check_global(&self, bad: &mut Vec<String>) {
        let ph = &self.physics;
        if let Some(r) = &ph.rates_per_tcoll {
            if r.len() != 9 {
                bad.push(format!(
                    "physics.rates_per_tcoll has {} rows, need 9",
                    r.len()
                ));
            }
            if ph.gamma_d_per_tcoll != 0.0 {
                bad.push(
                    "physics.rates_per_tcoll and physics.gamma_d_per_tcoll are mutually exclusive"
                        .into(),
                );
            }
        }
        if ph.t_op_tcoll.is_some() && ph.t_op_per_t_c.is_some() {
            bad.push("physics.t_op_tcoll and physics.t_op_per_t_c are mutually exclusive".into());
        }
        if self.run.n_trajectories == 0 && self.mode == Mode::Simulate {
            bad.push("run.n_trajectories must be ≥ 1".into());
        }
        if self.run.workers == Some(0) {
            bad.push("run.workers must be ≥ 1".into());
        }
        if !(self.run.rate_bound > 0.0 && self.run.rate_bound < 1.0) {
            bad.push(format!(
                "run.rate_bound = {} must lie in (0, 1)",
                self.run.rate_bound
            ));
        }
        if let Some(s) = &self.sweep {
            if s.values.is_empty() {
                bad.push("sweep.values is empty".into());
            }
            if s.values.iter().any(|v| !v.is_finite()) {
                bad.push("sweep.values contains a non-finite entry".into());
            }
            if s.parameter == SweepParameter::GammaDPerTcoll && ph.rates_per_tcoll.is_some() {
                bad.push(
                    "sweeping gamma_d_per_tcoll conflicts with physics.rates_per_tcoll".into(),
                );
            }
            if s.parameter == SweepParameter::TOpTcoll && ph.t_op_per_t_c.is_some() {
                bad.push("sweeping t_op_tcoll conflicts with physics.t_op_per_t_c".into());
            }
        }
        match self.mode {
            Mode::Optimize => {
                if self.sweep.as_ref().map(|s| s.parameter) != Some(SweepParameter::GammaDPerTcoll)
                {
                    bad.push("optimize mode needs a sweep over gamma_d_per_tcoll".into());
                }
                if !(self.optimize.theta1_factor > 0.0) {
                    bad.push(format!(
                        "optimize.theta1_factor = {} must be > 0",
                        self.optimize.theta1_factor
                    ));
                }
                if let Some(t) = self.optimize.tau_c_tcoll {
                    if !(t > 0.0) {
                        bad.push(format!("optimize.tau_c_tcoll = {t} must be > 0"));
                    }
                }
            }
            Mode::Validate => {
                let v = &self.validate;
                if !(v.oracle_dt_tcoll > 0.0 && v.oracle_dt_tcoll <= 0.01) {
                    bad.push(format!(
                        "validate.oracle_dt_tcoll = {} must lie in (0, 0.01]",
                        v.oracle_dt_tcoll
                    ));
                }
                if !(v.oracle_t_tcoll >= v.oracle_dt_tcoll) {
                    bad.push(format!(
                        "validate.oracle_t_tcoll = {} shorter than one step",
                        v.oracle_t_tcoll
                    ));
                }
            }
            _ => {}
        }
    }

    fn point(&self, index: usize, value: Option<f64>) -> Point {
        let ph = &self.physics;
        let pr = &self.protocol;
        let mut p = Point {
            index,
            sweep_value: value,
            eta: ph.eta,
            gamma_d: ph.rates_per_tcoll.is_none().then_some(ph.gamma_d_per_tcoll),
            model: ErrorModel::none(),
            dt: ph.dt_tcoll,
            t_op: ph.t_op_tcoll,
            tau_c: pr.tau_c_tcoll,
            t_c: pr.t_c_tcoll,
            theta1: pr.theta1,
            theta2: pr.theta2,
        };
        if let (Some(s), Some(v)) = (&self.sweep, value) {
            match s.parameter {
                SweepParameter::Eta => p.eta = v,
                SweepParameter::GammaDPerTcoll => p.gamma_d = Some(v),
                SweepParameter::DtTcoll => p.dt = v,
                SweepParameter::TOpTcoll => p.t_op = Some(v),
                SweepParameter::TauCTcoll => p.tau_c = v,
                SweepParameter::TCTcoll => p.t_c = v,
                SweepParameter::Theta1 => p.theta1 = v,
                SweepParameter::Theta2 => p.theta2 = v,
            }
        }
        if let Some(k) = ph.t_op_per_t_c {
            p.t_op = Some(k * p.t_c);
        }
        p.model = match (&ph.rates_per_tcoll, p.gamma_d) {
            (Some(r), _) if r.len() == 9 => ErrorModel {
                rates: std::array::from_fn(|q| r[q]),
            },
            (_, Some(g)) => ErrorModel::depolarizing(g),
            _ => ErrorModel::none(),
        };
        p
    }

    fn check_point(&self, p: &Point) -> Vec<String> {
        let mut bad = Vec::new();
        if !(p.eta > 0.0 && p.eta <= 1.0) {
            bad.push(format!("eta = {} must lie in (0, 1]", p.eta));
        }
        if p.model
            .rates
            .iter()
            .flatten()
            .any(|r| !(r.is_finite() && *r >= 0.0))
        {
            bad.push("error rates must be finite and ≥ 0".into());
        }
        match self.mode {
            Mode::Simulate | Mode::Analytic => {
                if !(p.tau_c > 0.0) {
                    bad.push(format!("tau_c_tcoll = {} must be > 0", p.tau_c));
                }
                if !(p.t_c > 0.0) {
                    bad.push(format!("t_c_tcoll = {} must be > 0", p.t_c));
                }
                if !(p.theta1 >= 0.0 && p.theta1 <= 1.0) {
                    bad.push(format!("theta1 = {} must lie in [0, 1]", p.theta1));
                }
                if !(p.theta2 >= 1.0 && p.theta2 < 2.0) {
                    bad.push(format!("theta2 = {} must lie in [1, 2)", p.theta2));
                }
            }
            _ => {}
        }
        if self.mode == Mode::Simulate {
            if !(p.dt > 0.0 && p.dt.is_finite()) {
                bad.push(format!("dt_tcoll = {} must be > 0", p.dt));
            } else {
                let worst = p
                    .model
                    .rates
                    .iter()
                    .flatten()
                    .fold(0.0f64, |a, &b| a.max(b));
                if worst * p.dt > self.run.rate_bound {
                    bad.push(format!(
                        "largest channel rate × dt = {:e} exceeds run.rate_bound = {}",
                        worst * p.dt,
                        self.run.rate_bound
                    ));
                }
                if p.tau_c > 0.0 && p.dt > 0.2 * p.tau_c {
                    bad.push(format!(
                        "dt_tcoll = {} too coarse for tau_c_tcoll = {} (need dt ≤ τ_c/5)",
                        p.dt, p.tau_c
                    ));
                }
            }
            match p.t_op {
                None => {
                    bad.push("simulate needs physics.t_op_tcoll or physics.t_op_per_t_c".into())
                }
                Some(t) if !(t >= p.dt) => {
                    bad.push(format!("t_op_tcoll = {t} shorter than one step"))
                }
                _ => {}
            }
        }
        if self.mode == Mode::Optimize {
            if let Some(g) = p.gamma_d {
                let (lo, hi) = crate::analytics::GAMMA_D_RANGE;
                if !(lo..=hi).contains(&g) {
                    bad.push(format!(
                        "gamma_d_per_tcoll = {g:e} outside [{lo:e}, {hi:e}]"
                    ));
                }
            }
        }
        bad
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_and_round_trips() {
        let cfg = ExperimentConfig::from_toml(
            r#"
            mode = "simulate"
            [physics]
            gamma_d_per_tcoll = 3e-4
            t_op_per_t_c = 20.0
            [sweep]
            parameter = "t_c_tcoll"
            values = [15.0, 30.0]
            "#,
        )
        .unwrap();
        let pts = cfg.resolve().unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1].t_op, Some(600.0));
        assert_eq!(pts[0].model, ErrorModel::depolarizing(3e-4));
        let back = ExperimentConfig::from_toml(&cfg.to_toml()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(
            ExperimentConfig::from_toml("mode = \"analytic\"\n[physics]\ngamma_d = 1e-4\n")
                .is_err()
        );
    }

    #[test]
    fn every_violation_is_listed() {
        let mut cfg = ExperimentConfig::new(Mode::Simulate);
        cfg.physics.eta = 1.5;
        cfg.protocol.theta2 = 2.5;
        cfg.run.n_trajectories = 0;
        let Err(HarnessError::Config(msgs)) = cfg.resolve() else {
            panic!("expected config error")
        };
        assert!(msgs.iter().any(|m| m.contains("eta")));
        assert!(msgs.iter().any(|m| m.contains("theta2")));
        assert!(msgs.iter().any(|m| m.contains("n_trajectories")));
        assert!(msgs.iter().any(|m| m.contains("t_op")));
        assert_eq!(msgs.len(), 4, "{msgs:?}");
    }
}
