//! Gauge-qubit state (pure or mixed) and its Itô–Euler update under the
//! twelve simultaneous weak measurements.

use std::sync::OnceLock;

use nalgebra::{SMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::{EngineError, MeasurementParams};
use crate::code_algebra::{gauge_rep, N_GAUGE_OPS};
use crate::pauli::PauliOperator;

/// Dimension of the gauge-qubit Hilbert space.
pub const GAUGE_DIM: usize = 16;

type Mat16 = [[f64; GAUGE_DIM]; GAUGE_DIM];

/// Real signed permutation `X^x Z^z` on a 2^n register:
/// `(P v)[i] = sign[i] · v[i ^ x]`.
#[derive(Debug, Clone)]
pub struct SignedPerm {
    pub x: usize,
    pub sign: Vec<f64>,
}

impl SignedPerm {
    /// Real part of a Pauli with its `i^phase` dropped.
    pub fn from_pauli(p: &PauliOperator) -> Self {
        let real = PauliOperator::from_parts(p.num_qubits(), p.x_mask(), p.z_mask(), 0);
        let dim = 1usize << p.num_qubits();
        let x = p.x_mask() as usize;
        let sign = (0..dim)
            .map(|i| {
                let (_, ph) = real.apply_to_basis(i ^ x);
                if ph == 0 {
                    1.0
                } else {
                    -1.0
                }
            })
            .collect();
        SignedPerm { x, sign }
    }

    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.sign[i] * v[i ^ self.x];
        }
    }
}

/// Gauge-qubit images `𝒢_1..𝒢_12` as signed permutations (0-based).
pub fn gauge_perms() -> &'static [SignedPerm; N_GAUGE_OPS] {
    static T: OnceLock<[SignedPerm; N_GAUGE_OPS]> = OnceLock::new();
    T.get_or_init(|| std::array::from_fn(|k| SignedPerm::from_pauli(&gauge_rep(k + 1).unwrap())))
}

/// Pure gauge state: 16 real amplitudes, unit norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaugeVector(pub [f64; GAUGE_DIM]);

/// Mixed gauge state `ϱ_g`: real symmetric, unit trace, PSD.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaugeDensity(pub Mat16);

/// Initial gauge configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialGauge {
    /// `c_0000 = 1`: all Z-type gauge operators +1.
    #[default]
    ZeroConfig,
    /// `I/16`.
    MaximallyMixed,
}

impl GaugeVector {
    pub fn basis(c: usize) -> Self {
        let mut a = [0.0; GAUGE_DIM];
        a[c] = 1.0;
        GaugeVector(a)
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn expectation(&self, p: &SignedPerm) -> f64 {
        (0..GAUGE_DIM)
            .map(|i| self.0[i] * p.sign[i] * self.0[i ^ p.x])
            .sum()
    }

    pub fn to_density(&self) -> GaugeDensity {
        GaugeDensity(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[i] * self.0[j])
        }))
    }
}

impl GaugeDensity {
    pub fn maximally_mixed() -> Self {
        GaugeDensity(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { 1.0 / GAUGE_DIM as f64 } else { 0.0 })
        }))
    }

    pub fn trace(&self) -> f64 {
        (0..GAUGE_DIM).map(|i| self.0[i][i]).sum()
    }

    pub fn purity(&self) -> f64 {
        self.0.iter().flatten().map(|x| x * x).sum()
    }

    /// `Tr[P ϱ]`.
    pub fn expectation(&self, p: &SignedPerm) -> f64 {
        (0..GAUGE_DIM).map(|i| p.sign[i] * self.0[i ^ p.x][i]).sum()
    }

    /// `P ϱ Pᵀ`.
    pub fn conjugate(&self, p: &SignedPerm) -> Self {
        GaugeDensity(std::array::from_fn(|i| {
            std::array::from_fn(|j| p.sign[i] * p.sign[j] * self.0[i ^ p.x][j ^ p.x])
        }))
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..GAUGE_DIM {
            for j in 0..i {
                worst = worst.max((self.0[i][j] - self.0[j][i]).abs());
            }
        }
        worst
    }

    fn as_matrix(&self) -> SMatrix<f64, GAUGE_DIM, GAUGE_DIM> {
        SMatrix::from_fn(|i, j| self.0[i][j])
    }

    pub fn min_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.as_matrix()).eigenvalues.min()
    }

    /// Cheap PSD test: Cholesky of `ϱ + tol·I`.
    pub fn is_psd(&self, tol: f64) -> bool {
        let m = self.as_matrix() + SMatrix::<f64, GAUGE_DIM, GAUGE_DIM>::identity() * tol;
        m.cholesky().is_some()
    }

    /// Clip negative eigenvalues to zero and renormalize the trace.
    fn clip(&mut self) {
        let eig = SymmetricEigen::new(self.as_matrix());
        let vals = eig.eigenvalues.map(|v| v.max(0.0));
        let rebuilt =
            &eig.eigenvectors * SMatrix::from_diagonal(&vals) * eig.eigenvectors.transpose();
        let tr = rebuilt.trace();
        self.0 = std::array::from_fn(|i| std::array::from_fn(|j| rebuilt[(i, j)] / tr));
    }
}

/// Gauge-qubit state: the pure fast path is used when `η = 1` and the
/// initial state is pure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GaugeState {
    Pure(GaugeVector),
    Mixed(GaugeDensity),
}

/// Outcome of one integration step.
#[derive(Debug, Clone, Copy, Default)]
pub struct StepInfo {
    /// `Tr[𝒢_k ϱ]` at the start of the step.
    pub expectations: [f64; N_GAUGE_OPS],
    /// Whether eigenvalue clipping was applied.
    pub clipped: bool,
}

impl GaugeState {
    pub fn initial(init: InitialGauge, params: &MeasurementParams) -> Self {
        match init {
            InitialGauge::ZeroConfig if params.eta == 1.0 => {
                GaugeState::Pure(GaugeVector::basis(0))
            }
            InitialGauge::ZeroConfig => GaugeState::Mixed(GaugeVector::basis(0).to_density()),
            InitialGauge::MaximallyMixed => GaugeState::Mixed(GaugeDensity::maximally_mixed()),
        }
    }

    pub fn to_density(&self) -> GaugeDensity {
        match self {
            GaugeState::Pure(v) => v.to_density(),
            GaugeState::Mixed(d) => d.clone(),
        }
    }

    pub fn expectations(&self) -> [f64; N_GAUGE_OPS] {
        let ops = gauge_perms();
        match self {
            GaugeState::Pure(v) => std::array::from_fn(|k| v.expectation(&ops[k])),
            GaugeState::Mixed(d) => std::array::from_fn(|k| d.expectation(&ops[k])),
        }
    }

    pub fn purity(&self) -> f64 {
        match self {
            GaugeState::Pure(_) => 1.0,
            GaugeState::Mixed(d) => d.purity(),
        }
    }

    /// Apply a gauge-qubit Pauli (conjugation; global phase dropped).
    pub fn conjugate(&mut self, p: &SignedPerm) {
        match self {
            GaugeState::Pure(v) => {
                let mut out = [0.0; GAUGE_DIM];
                p.apply(&v.0, &mut out);
                v.0 = out;
            }
            GaugeState::Mixed(d) => *d = d.conjugate(p),
        }
    }

    /// One Euler–Maruyama step with Wiener increments `dw` (variance `dt`).
    pub fn step(
        &mut self,
        params: &MeasurementParams,
        dw: &[f64; N_GAUGE_OPS],
    ) -> Result<StepInfo, EngineError> {
        self.step_with(params, dw, true)
    }

    /// As [`GaugeState::step`]; `clip` toggles eigenvalue clipping of the
    /// mixed-state path.
    pub fn step_with(
        &mut self,
        params: &MeasurementParams,
        dw: &[f64; N_GAUGE_OPS],
        clip: bool,
    ) -> Result<StepInfo, EngineError> {
        match self {
            GaugeState::Pure(v) => step_pure(v, params, dw),
            GaugeState::Mixed(d) => step_density_masked(d, params, dw, ALL_CHANNELS, clip),
        }
    }
}

/// Mask with all twelve measurement channels active.
pub const ALL_CHANNELS: u16 = (1 << N_GAUGE_OPS) - 1;

/// Itô stochastic Schrödinger step for `η = 1`, followed by renormalization.
pub fn step_pure(
    psi: &mut GaugeVector,
    params: &MeasurementParams,
    dw: &[f64; N_GAUGE_OPS],
) -> Result<StepInfo, EngineError> {
    step_pure_masked(psi, params, dw, ALL_CHANNELS)
}

/// [`step_pure`] restricted to the channels set in `active` (bit `k-1` for `G_k`).
pub fn step_pure_masked(
    psi: &mut GaugeVector,
    params: &MeasurementParams,
    dw: &[f64; N_GAUGE_OPS],
    active: u16,
) -> Result<StepInfo, EngineError> {
    let ops = gauge_perms();
    let a = (params.gamma_m / 2.0).sqrt();
    let a2dt = a * a * params.dt;
    let mut g_psi = [[0.0; GAUGE_DIM]; N_GAUGE_OPS];
    let mut expect = [0.0; N_GAUGE_OPS];
    for k in 0..N_GAUGE_OPS {
        ops[k].apply(&psi.0, &mut g_psi[k]);
        expect[k] = psi.0.iter().zip(&g_psi[k]).map(|(x, y)| x * y).sum();
    }
    let on = |k: usize| active >> k & 1 == 1;
    let mut self_coef = 1.0;
    for k in (0..N_GAUGE_OPS).filter(|&k| on(k)) {
        let g = expect[k];
        self_coef -= a * g * dw[k] + 0.5 * a2dt * (1.0 + g * g);
    }
    let mut next = psi.0.map(|x| x * self_coef);
    for k in (0..N_GAUGE_OPS).filter(|&k| on(k)) {
        let c = a * dw[k] + a2dt * expect[k];
        for (n, gp) in next.iter_mut().zip(&g_psi[k]) {
            *n += c * gp;
        }
    }
    let norm2: f64 = next.iter().map(|x| x * x).sum();
    if norm2 < 1e-6 {
        return Err(EngineError::TraceCollapse { trace: norm2 });
    }
    let inv = norm2.sqrt().recip();
    psi.0 = next.map(|x| x * inv);
    Ok(StepInfo {
        expectations: expect,
        clipped: false,
    })
}

/// Itô stochastic master equation step on `ϱ_g`, followed by
/// symmetrization, trace renormalization and eigenvalue clipping when the
/// result is not PSD within `1e-9`.
pub fn step_density(
    rho: &mut GaugeDensity,
    params: &MeasurementParams,
    dw: &[f64; N_GAUGE_OPS],
) -> Result<StepInfo, EngineError> {
    step_density_masked(rho, params, dw, ALL_CHANNELS, true)
}

/// [`step_density`] restricted to the channels set in `active`, with
/// eigenvalue clipping optional.
pub fn step_density_masked(
    rho: &mut GaugeDensity,
    params: &MeasurementParams,
    dw: &[f64; N_GAUGE_OPS],
    active: u16,
    clip: bool,
) -> Result<StepInfo, EngineError> {
    let ops = gauge_perms();
    let on = |k: usize| active >> k & 1 == 1;
    let half_gdt = 0.5 * params.gamma_m * params.dt;
    let inv_sqrt_tau = params.tau_m().sqrt().recip();
    let r = &rho.0;
    let expect: [f64; N_GAUGE_OPS] = std::array::from_fn(|k| rho.expectation(&ops[k]));
    let mut self_coef = 1.0;
    for k in (0..N_GAUGE_OPS).filter(|&k| on(k)) {
        self_coef -= half_gdt + dw[k] * inv_sqrt_tau * expect[k];
    }
    let mut next: Mat16 = std::array::from_fn(|i| std::array::from_fn(|j| self_coef * r[i][j]));
    for (k, op) in ops.iter().enumerate().filter(|(k, _)| on(*k)) {
        let c = 0.5 * dw[k] * inv_sqrt_tau;
        let (x, s) = (op.x, &op.sign);
        for i in 0..GAUGE_DIM {
            for j in 0..GAUGE_DIM {
                let sandwich = s[i] * s[j] * r[i ^ x][j ^ x];
                let anti = s[i] * r[i ^ x][j] + r[i][j ^ x] * s[j];
                next[i][j] += half_gdt * sandwich + c * anti;
            }
        }
    }
    let mut tr = 0.0;
    for i in 0..GAUGE_DIM {
        tr += next[i][i];
        for j in 0..i {
            let m = 0.5 * (next[i][j] + next[j][i]);
            next[i][j] = m;
            next[j][i] = m;
        }
    }
    if tr < 1e-6 {
        return Err(EngineError::TraceCollapse { trace: tr });
    }
    for row in next.iter_mut() {
        for v in row.iter_mut() {
            *v /= tr;
        }
    }
    rho.0 = next;
    let clipped = clip && !rho.is_psd(1e-9);
    if clipped {
        rho.clip();
    }
    Ok(StepInfo {
        expectations: expect,
        clipped,
    })
}

/// Detector signals `I_k = ζ_k (Tr[𝒢_k ϱ] + √τ_m dW_k/dt)`.
/// Trapezoid average of `⟨G_k⟩` over one step. The detector record is the
/// current integrated over the step, and the state responds to that step's
/// noise within the step; using the start-of-step value alone biases
/// products of smoothed signals by `O(dt/τ_c)`.
pub fn step_average(before: &[f64; N_GAUGE_OPS], after: &[f64; N_GAUGE_OPS]) -> [f64; N_GAUGE_OPS] {
    std::array::from_fn(|k| 0.5 * (before[k] + after[k]))
}

pub fn emit_signals(
    expectations: &[f64; N_GAUGE_OPS],
    zeta: &[f64; N_GAUGE_OPS],
    dw: &[f64; N_GAUGE_OPS],
    params: &MeasurementParams,
) -> [f64; N_GAUGE_OPS] {
    let scale = params.tau_m().sqrt() / params.dt;
    std::array::from_fn(|k| zeta[k] * (expectations[k] + scale * dw[k]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(eta: f64) -> MeasurementParams {
        MeasurementParams::new(1.0, eta, 1e-3).unwrap()
    }

    #[test]
    fn maximally_mixed_is_a_fixed_point() {
        let mut d = GaugeDensity::maximally_mixed();
        let before = d.clone();
        step_density(&mut d, &params(1.0), &[0.0; 12]).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                assert!((d.0[i][j] - before.0[i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn z_eigenstate_is_unchanged_by_z_channels() {
        let mut dw = [0.0; 12];
        for (k, w) in dw.iter_mut().enumerate().take(6) {
            *w = 0.01 * (k as f64 - 2.5);
        }
        let z_only = 0b11_1111;
        let mut v = GaugeVector::basis(0);
        step_pure_masked(&mut v, &params(1.0), &dw, z_only).unwrap();
        assert!((v.0[0] - 1.0).abs() < 1e-14);
        let mut d = GaugeVector::basis(0).to_density();
        step_density_masked(&mut d, &params(1.0), &dw, z_only, true).unwrap();
        assert!((d.0[0][0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn signals_carry_zeta_sign() {
        let p = params(1.0);
        let g = GaugeState::Pure(GaugeVector::basis(0)).expectations();
        let mut zeta = [1.0; 12];
        assert_eq!(emit_signals(&g, &zeta, &[0.0; 12], &p)[0], 1.0);
        zeta[0] = -1.0;
        assert_eq!(emit_signals(&g, &zeta, &[0.0; 12], &p)[0], -1.0);
    }

    #[test]
    fn signed_perm_matches_pauli_action() {
        let p = PauliOperator::parse(4, "X1Z2Y4").unwrap();
        let sp = SignedPerm::from_pauli(&p);
        for b in 0..16 {
            let mut v = [0.0; 16];
            v[b] = 1.0;
            let mut out = [0.0; 16];
            sp.apply(&v, &mut out);
            let real = PauliOperator::from_parts(4, p.x_mask(), p.z_mask(), 0);
            let (b2, ph) = real.apply_to_basis(b);
            assert_eq!(out[b2], if ph == 0 { 1.0 } else { -1.0 });
        }
    }
}
