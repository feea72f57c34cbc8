//! Gauge-qubit trajectory simulation.
//!
//! Inside an error subspace `𝒬_ℓ` the nine-qubit state factorizes into a
//! logical qubit and four gauge qubits, so continuous measurement of the
//! twelve gauge operators only needs a 16-dimensional state. Pauli errors
//! are instantaneous jumps that move `ℓ`, update a classical logical frame
//! and conjugate the gauge state by a gauge-qubit Pauli.

mod full_space;
mod gauge_state;
mod jumps;

use std::sync::OnceLock;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code_algebra::{
    channel_index, decompose_error, q_mul, single_error_actions, zeta_all, AlgebraError, Logical,
    SubspaceIndex, N_GAUGE_OPS,
};
use crate::pauli::{PauliKind, PauliOperator};

pub use full_space::{compare_with_reduced, FullSpaceSme, OracleComparison, OracleError};
pub use gauge_state::{
    emit_signals, gauge_perms, step_average, step_density, step_density_masked, step_pure,
    step_pure_masked, GaugeDensity, GaugeState, GaugeVector, InitialGauge, SignedPerm, StepInfo,
    ALL_CHANNELS, GAUGE_DIM,
};
pub use jumps::{sample_jumps, ErrorModel, JumpSampler, DEFAULT_RATE_BOUND, N_CHANNELS};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("state norm collapsed to {trace:.3e} before renormalization; reduce dt")]
    TraceCollapse { trace: f64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Symmetric measurement of all twelve gauge operators. Time is in units
/// where `Γ_m` is given explicitly; `τ_coll = 1/Γ_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementParams {
    pub gamma_m: f64,
    pub eta: f64,
    pub dt: f64,
}

impl MeasurementParams {
    pub fn new(gamma_m: f64, eta: f64, dt: f64) -> Result<Self, EngineError> {
        let p = MeasurementParams { gamma_m, eta, dt };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let mut bad = Vec::new();
        if !(self.gamma_m > 0.0 && self.gamma_m.is_finite()) {
            bad.push(format!("Γ_m = {} must be > 0", self.gamma_m));
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            bad.push(format!("η = {} must lie in (0, 1]", self.eta));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            bad.push(format!("dt = {} must be > 0", self.dt));
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(EngineError::InvalidParams(bad.join("; ")))
        }
    }

    /// `τ_m = 1/(2ηΓ_m)`.
    pub fn tau_m(&self) -> f64 {
        1.0 / (2.0 * self.eta * self.gamma_m)
    }

    /// `τ_coll = 1/Γ_m`.
    pub fn tau_coll(&self) -> f64 {
        1.0 / self.gamma_m
    }
}

/// Full simulated system: subspace, gauge state, logical frame and clock.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimState {
    pub ell: SubspaceIndex,
    pub gauge: GaugeState,
    pub frame: Logical,
    pub t: f64,
}

impl SimState {
    pub fn new(init: InitialGauge, params: &MeasurementParams) -> Self {
        SimState {
            ell: SubspaceIndex::CODE,
            gauge: GaugeState::initial(init, params),
            frame: Logical::I,
            t: 0.0,
        }
    }
}

fn channel_gauge_perms() -> &'static [SignedPerm; N_CHANNELS] {
    static T: OnceLock<[SignedPerm; N_CHANNELS]> = OnceLock::new();
    T.get_or_init(|| {
        std::array::from_fn(|c| SignedPerm::from_pauli(&single_error_actions()[c].gauge_op))
    })
}

/// Apply error channel `c` (see [`channel_index`]) to the state.
pub fn inject_channel(state: &mut SimState, c: usize) {
    let action = &single_error_actions()[c];
    state.ell = q_mul(action.q_index, state.ell).0;
    state.frame = action.logical.compose(state.frame);
    if !action.gauge_op.is_identity_up_to_phase() {
        state.gauge.conjugate(&channel_gauge_perms()[c]);
    }
}

/// Apply a single-qubit Pauli error to the state.
pub fn inject_error(state: &mut SimState, e: &PauliOperator) -> Result<(), EngineError> {
    decompose_error(e)?;
    let (q, k) = e.as_single().expect("checked single-qubit");
    inject_channel(state, channel_index(q, k));
    Ok(())
}

/// Error applied at a fixed time, before the step that starts at or after `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScriptedError {
    pub t: f64,
    pub qubit: usize,
    pub kind: PauliKind,
}

/// Step-by-step trajectory driver. Noise and jump draws come from separate
/// streams so that jump times do not depend on the integrator.
pub struct TrajectoryRunner<R: Rng> {
    params: MeasurementParams,
    state: SimState,
    sampler: JumpSampler,
    noise_rng: R,
    jump_rng: R,
    zeta: [f64; N_GAUGE_OPS],
    step_index: u64,
    next_jump_step: Option<u64>,
    script: Vec<ScriptedError>,
    script_pos: usize,
    true_path: Vec<(f64, SubspaceIndex)>,
    n_jumps: u64,
    clip_count: u64,
    clip: bool,
    fired: Vec<usize>,
}

impl<R: Rng> TrajectoryRunner<R> {
    pub fn new(
        params: MeasurementParams,
        model: &ErrorModel,
        init: InitialGauge,
        rate_bound: f64,
        noise_rng: R,
        mut jump_rng: R,
    ) -> Result<Self, EngineError> {
        params.validate()?;
        model.check_step(params.dt, rate_bound)?;
        let sampler = JumpSampler::new(model, params.dt)?;
        let next_jump_step = sampler.quiet_steps(&mut jump_rng);
        Ok(TrajectoryRunner {
            params,
            state: SimState::new(init, &params),
            sampler,
            noise_rng,
            jump_rng,
            zeta: zeta_all(SubspaceIndex::CODE),
            step_index: 0,
            next_jump_step,
            script: Vec::new(),
            script_pos: 0,
            true_path: vec![(0.0, SubspaceIndex::CODE)],
            n_jumps: 0,
            clip_count: 0,
            clip: true,
            fired: Vec::new(),
        })
    }

    /// Add deterministic errors (sorted by time internally).
    pub fn with_script(mut self, mut script: Vec<ScriptedError>) -> Self {
        script.sort_by(|a, b| a.t.total_cmp(&b.t));
        self.script = script;
        self
    }

    /// Enable or disable eigenvalue clipping on the mixed-state path.
    pub fn with_clipping(mut self, clip: bool) -> Self {
        self.clip = clip;
        self
    }

    /// Replace the gauge state (e.g. to force the mixed-state path).
    pub fn set_gauge(&mut self, gauge: GaugeState) {
        self.state.gauge = gauge;
    }

    pub fn state(&self) -> &SimState {
        &self.state
    }

    pub fn params(&self) -> &MeasurementParams {
        &self.params
    }

    pub fn true_path(&self) -> &[(f64, SubspaceIndex)] {
        &self.true_path
    }

    pub fn n_jumps(&self) -> u64 {
        self.n_jumps
    }

    pub fn clip_count(&self) -> u64 {
        self.clip_count
    }

    fn apply(&mut self, c: usize) {
        let before = self.state.ell;
        inject_channel(&mut self.state, c);
        self.n_jumps += 1;
        if self.state.ell != before {
            self.zeta = zeta_all(self.state.ell);
            self.true_path.push((self.state.t, self.state.ell));
        }
    }

    fn apply_boundary_errors(&mut self) {
        while let Some(e) = self.script.get(self.script_pos) {
            if e.t > self.state.t + 1e-12 * self.params.dt {
                break;
            }
            let c = channel_index(e.qubit, e.kind);
            self.script_pos += 1;
            self.apply(c);
        }
        if self.next_jump_step == Some(self.step_index) {
            let mut fired = std::mem::take(&mut self.fired);
            self.sampler.fired(&mut self.jump_rng, &mut fired);
            for &c in &fired {
                self.apply(c);
            }
            self.fired = fired;
            self.next_jump_step = self
                .sampler
                .quiet_steps(&mut self.jump_rng)
                .map(|q| self.step_index + 1 + q);
        }
    }

    /// Advance one step with freshly drawn noise; returns the signals.
    pub fn step(&mut self) -> Result<[f64; N_GAUGE_OPS], EngineError> {
        let sd = self.params.dt.sqrt();
        let dw: [f64; N_GAUGE_OPS] =
            std::array::from_fn(|_| sd * self.noise_rng.sample::<f64, _>(StandardNormal));
        self.step_with_noise(&dw)
    }

    /// Advance one step with the given Wiener increments.
    pub fn step_with_noise(
        &mut self,
        dw: &[f64; N_GAUGE_OPS],
    ) -> Result<[f64; N_GAUGE_OPS], EngineError> {
        self.apply_boundary_errors();
        let info = self.state.gauge.step_with(&self.params, dw, self.clip)?;
        self.clip_count += info.clipped as u64;
        self.step_index += 1;
        self.state.t = self.step_index as f64 * self.params.dt;
        let post = self.state.gauge.expectations();
        Ok(emit_signals(
            &step_average(&info.expectations, &post),
            &self.zeta,
            dw,
            &self.params,
        ))
    }
}

/// Options for [`run_trajectory`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub t_op: f64,
    pub initial: InitialGauge,
    /// Keep every n-th signal sample; `None` keeps none.
    pub record_every: Option<usize>,
    pub script: Vec<ScriptedError>,
    pub rate_bound: f64,
}

impl RunOptions {
    pub fn new(t_op: f64) -> Self {
        RunOptions {
            t_op,
            initial: InitialGauge::default(),
            record_every: None,
            script: Vec::new(),
            rate_bound: DEFAULT_RATE_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    /// `(t, ℓ)` at every subspace change, starting with `(0, 0)`.
    pub true_path: Vec<(f64, SubspaceIndex)>,
    /// `(t, I_1..I_12)` at the recorded steps.
    pub signals: Vec<(f64, [f64; N_GAUGE_OPS])>,
    pub final_frame: Logical,
    pub final_ell: SubspaceIndex,
    pub n_jumps: u64,
    pub clip_count: u64,
    pub steps: u64,
}

/// Number of steps covering `[0, t_op)`.
pub fn step_count(t_op: f64, dt: f64) -> u64 {
    (t_op / dt - 1e-9).ceil().max(0.0) as u64
}

pub fn run_trajectory<R: Rng>(
    params: MeasurementParams,
    model: &ErrorModel,
    opts: &RunOptions,
    noise_rng: R,
    jump_rng: R,
) -> Result<TrajectoryRecord, EngineError> {
    if !(opts.t_op > 0.0) {
        return Err(EngineError::InvalidParams(format!(
            "T_op = {} must be > 0",
            opts.t_op
        )));
    }
    let mut runner = TrajectoryRunner::new(
        params,
        model,
        opts.initial,
        opts.rate_bound,
        noise_rng,
        jump_rng,
    )?
    .with_script(opts.script.clone());
    let steps = step_count(opts.t_op, params.dt);
    let mut signals = Vec::new();
    for n in 0..steps {
        let t = runner.state().t;
        let s = runner.step()?;
        if let Some(every) = opts.record_every {
            if n as usize % every.max(1) == 0 {
                signals.push((t, s));
            }
        }
    }
    Ok(TrajectoryRecord {
        true_path: runner.true_path.clone(),
        signals,
        final_frame: runner.state.frame,
        final_ell: runner.state.ell,
        n_jumps: runner.n_jumps,
        clip_count: runner.clip_count,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rngs(seed: u64) -> (ChaCha8Rng, ChaCha8Rng) {
        (
            ChaCha8Rng::seed_from_u64(seed),
            ChaCha8Rng::seed_from_u64(seed ^ 0xdead_beef),
        )
    }

    #[test]
    fn x5_then_x1_bookkeeping() {
        let p = MeasurementParams::new(1.0, 1.0, 1e-3).unwrap();
        let mut s = SimState::new(InitialGauge::ZeroConfig, &p);
        s.gauge = GaugeState::Pure(GaugeVector::basis(0b0011));
        inject_error(&mut s, &"X5".parse().unwrap()).unwrap();
        assert_eq!((s.ell.get(), s.frame), (5, Logical::X));
        // X1g X4g flips gauge qubits 1 and 4
        assert_eq!(s.gauge, GaugeState::Pure(GaugeVector::basis(0b1010)));
        let before = s.gauge.clone();
        inject_error(&mut s, &"X1".parse().unwrap()).unwrap();
        assert_eq!((s.ell.get(), s.frame), (1, Logical::X));
        assert_eq!(s.gauge, before);
    }

    #[test]
    fn y9_only_moves_subspace() {
        let p = MeasurementParams::new(1.0, 1.0, 1e-3).unwrap();
        let mut s = SimState::new(InitialGauge::ZeroConfig, &p);
        inject_error(&mut s, &"Y9".parse().unwrap()).unwrap();
        assert_eq!((s.ell.get(), s.frame), (2, Logical::I));
        assert_eq!(s.gauge, GaugeState::Pure(GaugeVector::basis(0)));
    }

    #[test]
    fn scripted_path_and_determinism() {
        let p = MeasurementParams::new(1.0, 1.0, 1e-2).unwrap();
        let mut opts = RunOptions::new(3.0);
        opts.script = vec![
            ScriptedError {
                t: 1.0,
                qubit: 5,
                kind: PauliKind::X,
            },
            ScriptedError {
                t: 2.0,
                qubit: 1,
                kind: PauliKind::X,
            },
        ];
        opts.record_every = Some(10);
        let (a, b) = rngs(11);
        let r1 = run_trajectory(p, &ErrorModel::none(), &opts, a, b).unwrap();
        let path: Vec<usize> = r1.true_path.iter().map(|x| x.1.get()).collect();
        assert_eq!(path, vec![0, 5, 1]);
        assert_eq!(r1.final_frame, Logical::X);
        let (a, b) = rngs(11);
        let r2 = run_trajectory(p, &ErrorModel::none(), &opts, a, b).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn zero_rates_give_trivial_path() {
        let p = MeasurementParams::new(1.0, 0.7, 1e-2).unwrap();
        let (a, b) = rngs(5);
        let r = run_trajectory(p, &ErrorModel::none(), &RunOptions::new(5.0), a, b).unwrap();
        assert_eq!(r.true_path.len(), 1);
        assert_eq!(
            (r.final_frame, r.final_ell),
            (Logical::I, SubspaceIndex::CODE)
        );
    }

    #[test]
    fn rate_bound_is_enforced() {
        let p = MeasurementParams::new(1.0, 1.0, 0.1).unwrap();
        let (a, b) = rngs(1);
        let err = TrajectoryRunner::new(
            p,
            &ErrorModel::depolarizing(0.5),
            InitialGauge::ZeroConfig,
            0.01,
            a,
            b,
        );
        assert!(matches!(err, Err(EngineError::InvalidParams(_))));
    }
}
