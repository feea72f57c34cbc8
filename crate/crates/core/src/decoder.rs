//! Two-threshold decoding of the monitored syndrome path, end-of-run
//! classification and logical-rate estimation.
//!
//! Each correlator is compared with the current stabilizer estimate `S̃`:
//! the product `S̃·𝒞/|⟨𝒞⟩|` inside the open band `(1−Θ₂, 1−Θ₁)` means
//! "unsure" and freezes the path. Once all four products are outside the
//! band, a product below `1−Θ₂` flips that sign and anything else keeps it.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code_algebra::{inferred_logical, single_error_actions, Logical, SubspaceIndex};
use crate::correlators::{BankInit, CorrelatorBank, FilterParams};
use crate::trajectory_engine::{
    EngineError, ErrorModel, InitialGauge, JumpSampler, MeasurementParams, ScriptedError,
    TrajectoryRunner, DEFAULT_RATE_BOUND,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecoderError {
    #[error("thresholds must satisfy 0 ≤ Θ₁ ≤ 1 ≤ Θ₂ ≤ 2, got Θ₁ = {0}, Θ₂ = {1}")]
    Thresholds(f64, f64),
    #[error("T_op = {0} must be > 0")]
    Duration(f64),
    #[error("need at least one trajectory")]
    Empty,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub theta1: f64,
    pub theta2: f64,
}

impl Thresholds {
    pub fn new(theta1: f64, theta2: f64) -> Result<Self, DecoderError> {
        if !((0.0..=1.0).contains(&theta1) && (1.0..=2.0).contains(&theta2)) {
            return Err(DecoderError::Thresholds(theta1, theta2));
        }
        Ok(Thresholds { theta1, theta2 })
    }

    /// From the threshold levels `1−Θ₁` (upper) and `1−Θ₂` (lower).
    pub fn from_levels(upper: f64, lower: f64) -> Result<Self, DecoderError> {
        Self::new(1.0 - upper, 1.0 - lower)
    }

    pub fn upper(&self) -> f64 {
        1.0 - self.theta1
    }

    pub fn lower(&self) -> f64 {
        1.0 - self.theta2
    }
}

/// Logical error classification of one realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    None,
    X,
    Y,
    Z,
}

impl From<Logical> for Outcome {
    fn from(l: Logical) -> Self {
        match l {
            Logical::I => Outcome::None,
            Logical::X => Outcome::X,
            Logical::Y => Outcome::Y,
            Logical::Z => Outcome::Z,
        }
    }
}

/// Monitored syndrome path and the inferred logical operation `𝒪_m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecoderState {
    pub monitored: SubspaceIndex,
    pub signs: [i8; 4],
    pub inferred: Logical,
    pub n_jumps: u64,
    /// Syndrome changes not reachable by a single-qubit error.
    pub multi_error_events: u64,
    /// `(t, ℓ)` at each monitored jump, starting with `(0, 0)`.
    pub path: Vec<(f64, SubspaceIndex)>,
}

impl Default for DecoderState {
    fn default() -> Self {
        Self::new()
    }
}

impl DecoderState {
    pub fn new() -> Self {
        DecoderState {
            monitored: SubspaceIndex::CODE,
            signs: [1; 4],
            inferred: Logical::I,
            n_jumps: 0,
            multi_error_events: 0,
            path: vec![(0.0, SubspaceIndex::CODE)],
        }
    }

    fn jump_to(&mut self, ell: SubspaceIndex, t: f64) {
        let delta = SubspaceIndex::new(ell.get() ^ self.monitored.get()).expect("4-bit xor");
        let (logical, multi) = inferred_logical(delta);
        self.inferred = logical.compose(self.inferred);
        self.multi_error_events += multi as u64;
        self.n_jumps += 1;
        self.monitored = ell;
        self.signs = ell.signs();
        self.path.push((t, ell));
    }

    /// One decoder tick with normalized correlators in syndrome order.
    /// Returns `true` when the monitored path jumped.
    pub fn decode_step(&mut self, th: &Thresholds, normalized: &[f64; 4], t: f64) -> bool {
        let (hi, lo) = (th.upper(), th.lower());
        let mut next = self.signs;
        for n in 0..4 {
            let p = self.signs[n] as f64 * normalized[n];
            if p > lo && p < hi {
                return false;
            }
            if p < lo {
                next[n] = -self.signs[n];
            }
        }
        if next == self.signs {
            return false;
        }
        self.jump_to(SubspaceIndex::from_signs(next), t);
        true
    }

    /// Fold the end-of-run readout (if any) into `𝒪_m` and classify
    /// `𝒪_m · 𝒪_true`.
    pub fn finalize(&self, true_final: Option<SubspaceIndex>, frame_true: Logical) -> Outcome {
        let mut inferred = self.inferred;
        if let Some(ell) = true_final {
            let delta = SubspaceIndex::new(ell.get() ^ self.monitored.get()).expect("4-bit xor");
            inferred = inferred_logical(delta).0.compose(inferred);
        }
        inferred.compose(frame_true).into()
    }
}

/// Counts of logical outcomes over an ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OutcomeCounts {
    pub n: u64,
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl OutcomeCounts {
    pub fn add(&mut self, o: Outcome) {
        self.n += 1;
        match o {
            Outcome::None => {}
            Outcome::X => self.x += 1,
            Outcome::Y => self.y += 1,
            Outcome::Z => self.z += 1,
        }
    }

    pub fn merge(&mut self, other: &OutcomeCounts) {
        self.n += other.n;
        self.x += other.x;
        self.y += other.y;
        self.z += other.z;
    }

    pub fn fractions(&self) -> [f64; 3] {
        let n = self.n.max(1) as f64;
        [self.x as f64 / n, self.y as f64 / n, self.z as f64 / n]
    }
}

impl FromIterator<Outcome> for OutcomeCounts {
    fn from_iter<I: IntoIterator<Item = Outcome>>(iter: I) -> Self {
        let mut c = OutcomeCounts::default();
        iter.into_iter().for_each(|o| c.add(o));
        c
    }
}

/// How probabilities are turned into rates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateMethod {
    /// `γ_L = P_L / T_op`.
    Linear,
    /// Invert the Pauli-channel composition law
    /// `P(anticommutes with Z_L) = (1 − e^{−2(γ_X+γ_Y)T})/2` (and cyclic),
    /// which stays unbiased when `P_L` is not small.
    #[default]
    PauliChannel,
}

/// Logical rates `[X, Y, Z]` with binomial (delta-method) standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub gamma: [f64; 3],
    pub total: f64,
    pub se: [f64; 3],
    pub se_total: f64,
    pub counts: OutcomeCounts,
    /// Fewer than 10 events in some category.
    pub insufficient: bool,
}

const MIN_EVENTS: u64 = 10;

/// Rates from one ensemble at a single `T_op` (offsets assumed removed by
/// the end-of-run readout).
pub fn estimate_rates(
    counts: &OutcomeCounts,
    t_op: f64,
    method: RateMethod,
) -> Result<RateEstimate, DecoderError> {
    if !(t_op > 0.0) {
        return Err(DecoderError::Duration(t_op));
    }
    if counts.n == 0 {
        return Err(DecoderError::Empty);
    }
    let n = counts.n as f64;
    let p = counts.fractions();
    let cov = |i: usize, j: usize| (if i == j { p[i] } else { 0.0 } - p[i] * p[j]) / n;
    // gradients of (γ_X, γ_Y, γ_Z, total) with respect to (p_X, p_Y, p_Z)
    let (values, grads): ([f64; 4], [[f64; 3]; 4]) = match method {
        RateMethod::Linear => {
            let g = [
                p[0] / t_op,
                p[1] / t_op,
                p[2] / t_op,
                (p[0] + p[1] + p[2]) / t_op,
            ];
            let d = 1.0 / t_op;
            (g, [[d, 0.0, 0.0], [0.0, d, 0.0], [0.0, 0.0, d], [d, d, d]])
        }
        RateMethod::PauliChannel => {
            // f_P = probability that the final frame anticommutes with P_L
            let a_rows = [[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]];
            let f: [f64; 3] = std::array::from_fn(|r| (0..3).map(|c| a_rows[r][c] * p[c]).sum());
            let a: [f64; 3] = f.map(|fi| (0.0 - (1.0 - 2.0 * fi).ln()) / (2.0 * t_op));
            let da: [f64; 3] = f.map(|fi| 1.0 / (t_op * (1.0 - 2.0 * fi)));
            let b_rows = [
                [-0.5, 0.5, 0.5],
                [0.5, -0.5, 0.5],
                [0.5, 0.5, -0.5],
                [0.5, 0.5, 0.5],
            ];
            let values = std::array::from_fn(|i| (0..3).map(|r| b_rows[i][r] * a[r]).sum());
            let grads = std::array::from_fn(|i| {
                std::array::from_fn(|c| (0..3).map(|r| b_rows[i][r] * da[r] * a_rows[r][c]).sum())
            });
            (values, grads)
        }
    };
    let se: [f64; 4] = std::array::from_fn(|i| {
        let g = grads[i];
        let mut v = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                v += g[a] * g[b] * cov(a, b);
            }
        }
        v.max(0.0).sqrt()
    });
    Ok(RateEstimate {
        gamma: [values[0], values[1], values[2]],
        total: values[3],
        se: [se[0], se[1], se[2]],
        se_total: se[3],
        counts: *counts,
        insufficient: counts.x < MIN_EVENTS || counts.y < MIN_EVENTS || counts.z < MIN_EVENTS,
    })
}

/// Slope (rate) and intercept (offset) of `P_L(T_op)` for one category.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub rate: f64,
    pub offset: f64,
    pub rate_se: f64,
    pub offset_se: f64,
}

/// Weighted least-squares fit of `P_L = γ_L T_op + ΔP_L` over several
/// `T_op` values, per category `[X, Y, Z]`.
pub fn fit_rates(points: &[(f64, OutcomeCounts)]) -> Result<[LinearFit; 3], DecoderError> {
    let distinct = points
        .iter()
        .map(|p| p.0.to_bits())
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    if distinct < 2 {
        return Err(DecoderError::Empty);
    }
    Ok(std::array::from_fn(|cat| {
        let (mut sw, mut swx, mut swy, mut swxx, mut swxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for (t, c) in points {
            let n = c.n.max(1) as f64;
            let p = c.fractions()[cat];
            // binomial variance with a floor so that empty bins keep weight
            let var = (p * (1.0 - p)).max(1.0 / n) / n;
            let w = 1.0 / var;
            sw += w;
            swx += w * t;
            swy += w * p;
            swxx += w * t * t;
            swxy += w * t * p;
        }
        let det = sw * swxx - swx * swx;
        let rate = (sw * swxy - swx * swy) / det;
        let offset = (swxx * swy - swx * swxy) / det;
        LinearFit {
            rate,
            offset,
            rate_se: (sw / det).sqrt(),
            offset_se: (swxx / det).sqrt(),
        }
    }))
}

/// Per-cycle outcome counts of the discrete projective-cycle model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CycleCounts {
    pub cycles: u64,
    pub counts: OutcomeCounts,
}

/// Monte Carlo of ideal discrete error correction: in each cycle of length
/// `dt_cycle` every channel fires independently with probability `Γ·dt`,
/// the syndrome is read perfectly and the tabulated correction applied.
pub fn discrete_cycle_mc<R: Rng + ?Sized>(
    model: &ErrorModel,
    dt_cycle: f64,
    n_cycles: u64,
    rng: &mut R,
) -> Result<CycleCounts, DecoderError> {
    let sampler = JumpSampler::new(model, dt_cycle)?;
    let actions = single_error_actions();
    let mut counts = OutcomeCounts {
        n: n_cycles,
        ..Default::default()
    };
    let mut fired = Vec::new();
    let mut cycle = 0u64;
    while let Some(q) = sampler.quiet_steps(rng) {
        cycle += q + 1;
        if cycle > n_cycles {
            break;
        }
        sampler.fired(rng, &mut fired);
        let (mut ell, mut logical) = (0u8, Logical::I);
        for &c in &fired {
            ell ^= actions[c].q_index.get() as u8;
            logical = actions[c].logical.compose(logical);
        }
        let residue = inferred_logical(SubspaceIndex::new(ell as usize).expect("4-bit"))
            .0
            .compose(logical);
        match Outcome::from(residue) {
            Outcome::None => {}
            Outcome::X => counts.x += 1,
            Outcome::Y => counts.y += 1,
            Outcome::Z => counts.z += 1,
        }
    }
    Ok(CycleCounts {
        cycles: n_cycles,
        counts,
    })
}

/// Everything needed to run the protocol on one realization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub params: MeasurementParams,
    pub model: ErrorModel,
    pub filter: FilterParams,
    pub thresholds: Thresholds,
    pub t_op: f64,
    pub final_readout: bool,
    pub bank_init: BankInit,
    pub initial: InitialGauge,
    pub rate_bound: f64,
    pub script: Vec<ScriptedError>,
}

impl ProtocolConfig {
    pub fn new(
        params: MeasurementParams,
        model: ErrorModel,
        filter: FilterParams,
        thresholds: Thresholds,
        t_op: f64,
    ) -> Self {
        ProtocolConfig {
            params,
            model,
            filter,
            thresholds,
            t_op,
            final_readout: true,
            bank_init: BankInit::FixedPoint,
            initial: InitialGauge::ZeroConfig,
            rate_bound: DEFAULT_RATE_BOUND,
            script: Vec::new(),
        }
    }
}

/// Per-realization result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolOutcome {
    pub outcome: Outcome,
    pub true_jumps: u64,
    pub monitored_jumps: u64,
    pub final_true: SubspaceIndex,
    pub final_monitored: SubspaceIndex,
    pub multi_error_events: u64,
    pub clip_count: u64,
}

/// Simulate, filter and decode one realization.
pub fn run_protocol<R: Rng>(
    cfg: &ProtocolConfig,
    noise_rng: R,
    jump_rng: R,
) -> Result<ProtocolOutcome, DecoderError> {
    run_protocol_traced(cfg, noise_rng, jump_rng, |_, _, _| {}).map(|(o, _)| o)
}

/// As [`run_protocol`], calling `observe(t, normalized correlators, ℓ_true)`
/// after each step and also returning the decoder state.
pub fn run_protocol_traced<R: Rng, F: FnMut(f64, &[f64; 4], SubspaceIndex)>(
    cfg: &ProtocolConfig,
    noise_rng: R,
    jump_rng: R,
    mut observe: F,
) -> Result<(ProtocolOutcome, DecoderState), DecoderError> {
    if !(cfg.t_op > 0.0) {
        return Err(DecoderError::Duration(cfg.t_op));
    }
    let dt = cfg.params.dt;
    let mut runner = TrajectoryRunner::new(
        cfg.params,
        &cfg.model,
        cfg.initial,
        cfg.rate_bound,
        noise_rng,
        jump_rng,
    )?
    .with_script(cfg.script.clone());
    let init_signals = runner.state().gauge.expectations();
    let mut bank =
        CorrelatorBank::new(cfg.filter, cfg.params.gamma_m, cfg.bank_init, &init_signals);
    let mut dec = DecoderState::new();
    let steps = crate::trajectory_engine::step_count(cfg.t_op, dt);
    for _ in 0..steps {
        let signals = runner.step()?;
        bank.update(&signals, dt);
        let t = runner.state().t;
        let norm = bank.normalized();
        dec.decode_step(&cfg.thresholds, &norm, t);
        observe(t, &norm, runner.state().ell);
    }
    let st = runner.state();
    let outcome = dec.finalize(cfg.final_readout.then_some(st.ell), st.frame);
    Ok((
        ProtocolOutcome {
            outcome,
            true_jumps: runner.n_jumps(),
            monitored_jumps: dec.n_jumps,
            final_true: st.ell,
            final_monitored: dec.monitored,
            multi_error_events: dec.multi_error_events,
            clip_count: runner.clip_count(),
        },
        dec,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code_algebra::{correction_op, logical_class, single_qubit_errors, syndrome_of};
    use crate::pauli::PauliOperator;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn reference_thresholds() -> Thresholds {
        Thresholds::from_levels(0.56, -0.56).unwrap()
    }

    #[test]
    fn threshold_bounds() {
        assert!(Thresholds::new(0.44, 1.56).is_ok());
        assert!(Thresholds::new(1.2, 1.56).is_err());
        assert!(Thresholds::new(0.2, 0.9).is_err());
    }

    #[test]
    fn quiet_correlators_hold_code_space() {
        let mut d = DecoderState::new();
        assert!(!d.decode_step(&reference_thresholds(), &[1.0; 4], 0.1));
        assert_eq!(d.monitored.get(), 0);
    }

    #[test]
    fn noiseless_x9_event() {
        // X9 flips S_z2 only: noiseless C_z2 = -1 + 2 e^{-t/T_c}
        let th = Thresholds::new(0.44, 1.4).unwrap();
        let t_c = 10.0;
        let mut d = DecoderState::new();
        let mut jump_t = None;
        let dt = 1e-3;
        for n in 1..100_000 {
            let t = n as f64 * dt;
            let cz2 = -1.0 + 2.0 * (-t / t_c).exp();
            if d.decode_step(&th, &[1.0, 1.0, 1.0, cz2], t) && jump_t.is_none() {
                jump_t = Some(t);
            }
        }
        assert_eq!(d.monitored.get(), 1);
        let expect = t_c * (2.0f64 / (2.0 - 1.4)).ln();
        assert!((jump_t.unwrap() - expect).abs() < 2.0 * dt);
        assert_eq!(d.n_jumps, 1);
    }

    fn lagging_pair_jumps(th: &Thresholds) -> u64 {
        // two correlators fall after one error, the second one lagging
        let mut d = DecoderState::new();
        let dt = 1e-3;
        for n in 1..60_000 {
            let t = n as f64 * dt;
            let c1 = -1.0 + 2.0 * (-t / 10.0).exp();
            let c2 = -1.0 + 2.0 * (-(t - 3.0).max(0.0) / 10.0).exp();
            d.decode_step(th, &[c1, c2, 1.0, 1.0], t);
        }
        assert_eq!(d.signs, [-1, -1, 1, 1]);
        d.n_jumps
    }

    #[test]
    fn two_thresholds_avoid_false_jumps() {
        assert_eq!(lagging_pair_jumps(&reference_thresholds()), 1);
        let one = Thresholds::new(1.0, 1.0).unwrap();
        assert_eq!(lagging_pair_jumps(&one), 2);
    }

    #[test]
    fn misdiagnosed_double_error() {
        // X5 then X1 inside the window looks like a single 0 → 1 jump
        let mut d = DecoderState::new();
        d.decode_step(&reference_thresholds(), &[1.0, 1.0, 1.0, -1.0], 1.0);
        assert_eq!(d.monitored.get(), 1);
        let mut frame = Logical::I;
        for e in ["X5", "X1"] {
            let a = crate::code_algebra::decompose_error(&e.parse().unwrap()).unwrap();
            frame = a.logical.compose(frame);
        }
        assert_eq!(
            d.finalize(Some(SubspaceIndex::new(1).unwrap()), frame),
            Outcome::X
        );
    }

    #[test]
    fn final_readout_catches_late_error() {
        let d = DecoderState::new();
        let x5 = crate::code_algebra::decompose_error(&"X5".parse().unwrap()).unwrap();
        assert_eq!(d.finalize(None, x5.logical), Outcome::X);
        assert_eq!(d.finalize(Some(x5.q_index), x5.logical), Outcome::None);
    }

    #[test]
    fn cycle_bookkeeping_matches_pauli_products() {
        // composing tabulated actions agrees with multiplying Paulis
        let errs = single_qubit_errors();
        let actions = single_error_actions();
        for i in 0..27 {
            for j in 0..27 {
                let prod: PauliOperator = errs[i] * errs[j];
                let l = syndrome_of(&prod);
                let direct = logical_class(&(prod * correction_op(l)));
                let ell = actions[i].q_index.get() ^ actions[j].q_index.get();
                let fold = inferred_logical(SubspaceIndex::new(ell).unwrap())
                    .0
                    .compose(actions[i].logical.compose(actions[j].logical));
                assert_eq!(direct, fold, "{} {}", errs[i], errs[j]);
            }
        }
    }

    #[test]
    fn rate_estimators() {
        let c = OutcomeCounts {
            n: 10_000,
            x: 100,
            y: 20,
            z: 100,
        };
        let lin = estimate_rates(&c, 10.0, RateMethod::Linear).unwrap();
        assert!((lin.gamma[0] - 1e-3).abs() < 1e-15);
        let inv = estimate_rates(&c, 10.0, RateMethod::PauliChannel).unwrap();
        assert!(inv.gamma[0] > lin.gamma[0] && inv.gamma[0] < 1.05 * lin.gamma[0]);
        // exact inversion of a known channel
        let (gx, gy, gz, t) = (0.02, 0.005, 0.03, 7.0);
        let ex = |a: f64| (-2.0 * a * t).exp();
        let (ax, ay, az) = (ex(gy + gz), ex(gx + gz), ex(gx + gy));
        let p_i = (1.0 + ax + ay + az) / 4.0;
        let px = (1.0 + ax - ay - az) / 4.0;
        let py = (1.0 - ax + ay - az) / 4.0;
        let pz = (1.0 - ax - ay + az) / 4.0;
        assert!((p_i + px + py + pz - 1.0).abs() < 1e-12);
        let n = 1_000_000_000u64;
        let c = OutcomeCounts {
            n,
            x: (px * n as f64).round() as u64,
            y: (py * n as f64).round() as u64,
            z: (pz * n as f64).round() as u64,
        };
        let est = estimate_rates(&c, t, RateMethod::PauliChannel).unwrap();
        for (g, w) in est.gamma.iter().zip([gx, gy, gz]) {
            assert!((g - w).abs() < 1e-6, "{g} vs {w}");
        }
        assert!(!est.insufficient);
        let zero = estimate_rates(
            &OutcomeCounts {
                n: 100,
                ..Default::default()
            },
            1.0,
            RateMethod::Linear,
        )
        .unwrap();
        assert_eq!(zero.total, 0.0);
        assert!(zero.insufficient);
    }

    #[test]
    fn offsets_from_linear_fit() {
        let pts: Vec<(f64, OutcomeCounts)> = [10.0, 20.0, 40.0]
            .iter()
            .map(|&t| {
                let p = 0.001 * t + 0.01;
                let n = 1_000_000u64;
                let k = (p * n as f64).round() as u64;
                (
                    t,
                    OutcomeCounts {
                        n,
                        x: k,
                        y: k,
                        z: k,
                    },
                )
            })
            .collect();
        let fit = fit_rates(&pts).unwrap();
        assert!((fit[0].rate - 0.001).abs() < 1e-9);
        assert!((fit[0].offset - 0.01).abs() < 1e-7);
    }

    #[test]
    fn zero_rate_protocol_is_clean() {
        let params = MeasurementParams::new(1.0, 1.0, 0.01).unwrap();
        let cfg = ProtocolConfig::new(
            params,
            ErrorModel::none(),
            FilterParams::new(0.25, 5.0).unwrap(),
            reference_thresholds(),
            20.0,
        );
        for s in 0..3 {
            let o = run_protocol(
                &cfg,
                ChaCha8Rng::seed_from_u64(s),
                ChaCha8Rng::seed_from_u64(s + 100),
            )
            .unwrap();
            assert_eq!(o.outcome, Outcome::None);
        }
    }
}
