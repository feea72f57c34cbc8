//! Nine-qubit (512-dimensional) stochastic master equation used as an
//! independent check of the gauge-qubit reduction.
//!
//! The physical gauge operators `G_k` are measured directly. The reduced
//! engine's Wiener increments are mapped with `dW_full = ζ_k^(ℓ) dW`, which
//! makes both integrators see the same detector noise.

use nalgebra::DMatrix;
use thiserror::Error;

use super::{EngineError, GaugeDensity, MeasurementParams, SignedPerm, GAUGE_DIM};
use crate::code_algebra::{
    gauge_operator, q_rep, stabilizers, zeta_all, CodeBasis, SubspaceIndex, N_GAUGE_OPS, N_QUBITS,
};
use crate::pauli::PauliOperator;

const DIM: usize = 1 << N_QUBITS;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("state is not supported on a single error subspace (stabilizer expectations {0:?})")]
    NotSingleSubspace([f64; 4]),
    #[error("weight {0:.3e} outside the tracked code-space basis")]
    Leakage(f64),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Real symmetric 512×512 density matrix with measurement of `G_1..G_12`.
#[derive(Debug, Clone)]
pub struct FullSpaceSme {
    params: MeasurementParams,
    rho: Vec<f64>,
    // sign pattern of the six Z-type gauge operators on each basis state
    z_pattern: Vec<u8>,
    x_masks: [usize; 6],
    zeta: [f64; N_GAUGE_OPS],
}

fn subspace_vectors(ell: SubspaceIndex, basis: &CodeBasis) -> DMatrix<f64> {
    let q = SignedPerm::from_pauli(&q_rep(ell));
    let mut v = DMatrix::zeros(DIM, 2 * GAUGE_DIM);
    let mut col = vec![0.0; DIM];
    for (a, phi) in basis.vectors.iter().enumerate() {
        q.apply(phi, &mut col);
        v.column_mut(a).copy_from_slice(&col);
    }
    v
}

impl FullSpaceSme {
    /// Embed `ϱ_L ⊗ ϱ_g` into subspace `ℓ` using the basis `Q_ℓ φ_j`.
    pub fn embed(
        params: MeasurementParams,
        ell: SubspaceIndex,
        gauge: &GaugeDensity,
        logical: [[f64; 2]; 2],
        basis: &CodeBasis,
    ) -> Self {
        let n = 2 * GAUGE_DIM;
        let m = DMatrix::from_fn(n, n, |a, b| {
            logical[a / GAUGE_DIM][b / GAUGE_DIM] * gauge.0[a % GAUGE_DIM][b % GAUGE_DIM]
        });
        let v = subspace_vectors(ell, basis);
        let full = &v * m * v.transpose();
        let rho = (0..DIM * DIM)
            .map(|idx| full[(idx / DIM, idx % DIM)])
            .collect();
        let z_pattern = (0..DIM)
            .map(|i| {
                (0..6).fold(0u8, |acc, k| {
                    let z = gauge_operator(k + 1).unwrap().z_mask() as usize;
                    acc | ((((z & i).count_ones() & 1) as u8) << k)
                })
            })
            .collect();
        let x_masks = std::array::from_fn(|k| gauge_operator(k + 7).unwrap().x_mask() as usize);
        FullSpaceSme {
            params,
            rho,
            z_pattern,
            x_masks,
            zeta: zeta_all(ell),
        }
    }

    pub fn density(&self) -> &[f64] {
        &self.rho
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.rho[i * DIM + j]
    }

    pub fn trace(&self) -> f64 {
        (0..DIM).map(|i| self.at(i, i)).sum()
    }

    /// `Tr[P ρ]` for a real Hermitian Pauli.
    pub fn expectation(&self, p: &PauliOperator) -> f64 {
        // P = i^phase X^x Z^z; odd phases pair an antisymmetric matrix with
        // the symmetric ρ and give zero.
        let sign = match p.phase_exp() {
            0 => 1.0,
            2 => -1.0,
            _ => return 0.0,
        };
        let sp = SignedPerm::from_pauli(p);
        sign * (0..DIM)
            .map(|i| sp.sign[i] * self.at(i ^ sp.x, i))
            .sum::<f64>()
    }

    /// `Tr[G_k ρ]` for `k = 1..=12` (0-based array).
    pub fn gauge_expectations(&self) -> [f64; N_GAUGE_OPS] {
        let mut out = [0.0; N_GAUGE_OPS];
        for i in 0..DIM {
            let d = self.at(i, i);
            for (k, o) in out.iter_mut().enumerate().take(6) {
                *o += if self.z_pattern[i] >> k & 1 == 1 {
                    -d
                } else {
                    d
                };
            }
            for k in 0..6 {
                out[6 + k] += self.at(i ^ self.x_masks[k], i);
            }
        }
        out
    }

    /// Stabilizer expectations in syndrome order.
    pub fn stabilizer_expectations(&self) -> [f64; 4] {
        let s = stabilizers();
        std::array::from_fn(|n| self.expectation(&s[n]))
    }

    /// Conjugate by a Pauli error `ρ ← E ρ E†`.
    pub fn apply_error(&mut self, e: &PauliOperator) -> Result<(), OracleError> {
        let sp = SignedPerm::from_pauli(e);
        let old = self.rho.clone();
        for i in 0..DIM {
            for j in 0..DIM {
                self.rho[i * DIM + j] =
                    sp.sign[i] * sp.sign[j] * old[(i ^ sp.x) * DIM + (j ^ sp.x)];
            }
        }
        let ell = self.current_subspace()?;
        self.zeta = zeta_all(ell);
        Ok(())
    }

    /// Subspace from the stabilizer expectations, which must be `±1`.
    pub fn current_subspace(&self) -> Result<SubspaceIndex, OracleError> {
        let e = self.stabilizer_expectations();
        if e.iter().any(|v| (v.abs() - 1.0).abs() > 1e-9) {
            return Err(OracleError::NotSingleSubspace(e));
        }
        Ok(SubspaceIndex::from_signs(e.map(|v| {
            if v > 0.0 {
                1
            } else {
                -1
            }
        })))
    }

    /// One Euler–Maruyama step driven by the reduced engine's increments;
    /// returns the twelve detector signals.
    pub fn step(
        &mut self,
        dw_reduced: &[f64; N_GAUGE_OPS],
    ) -> Result<[f64; N_GAUGE_OPS], OracleError> {
        let p = &self.params;
        let dw: [f64; N_GAUGE_OPS] = std::array::from_fn(|k| self.zeta[k] * dw_reduced[k]);
        let g = self.gauge_expectations();
        let half_gdt = 0.5 * p.gamma_m * p.dt;
        let inv_sqrt_tau = p.tau_m().sqrt().recip();
        let c: [f64; N_GAUGE_OPS] = std::array::from_fn(|k| dw[k] * inv_sqrt_tau);
        let self_coef = 1.0
            - N_GAUGE_OPS as f64 * half_gdt
            - (0..N_GAUGE_OPS).map(|k| c[k] * g[k]).sum::<f64>();

        // Z-type channels act diagonally; tabulate the factor by sign pattern.
        let mut zfac = vec![0.0; 64 * 64];
        for a in 0..64usize {
            for b in 0..64usize {
                let mut f = self_coef;
                for k in 0..6 {
                    let sa = if a >> k & 1 == 1 { -1.0 } else { 1.0 };
                    let sb = if b >> k & 1 == 1 { -1.0 } else { 1.0 };
                    f += half_gdt * sa * sb + 0.5 * c[k] * (sa + sb);
                }
                zfac[a * 64 + b] = f;
            }
        }
        let r = &self.rho;
        let mut next = vec![0.0; DIM * DIM];
        for i in 0..DIM {
            let pi = self.z_pattern[i] as usize * 64;
            let row = &r[i * DIM..(i + 1) * DIM];
            let out = &mut next[i * DIM..(i + 1) * DIM];
            for j in 0..DIM {
                out[j] = zfac[pi + self.z_pattern[j] as usize] * row[j];
            }
            for k in 0..6 {
                let x = self.x_masks[k];
                let ck = 0.5 * c[6 + k];
                let prow = &r[(i ^ x) * DIM..((i ^ x) + 1) * DIM];
                for j in 0..DIM {
                    out[j] += half_gdt * prow[j ^ x] + ck * (prow[j] + row[j ^ x]);
                }
            }
        }
        let mut tr = 0.0;
        for i in 0..DIM {
            tr += next[i * DIM + i];
            for j in 0..i {
                let m = 0.5 * (next[i * DIM + j] + next[j * DIM + i]);
                next[i * DIM + j] = m;
                next[j * DIM + i] = m;
            }
        }
        if tr < 1e-6 {
            return Err(EngineError::TraceCollapse { trace: tr }.into());
        }
        next.iter_mut().for_each(|v| *v /= tr);
        self.rho = next;
        let mid = super::step_average(&g, &self.gauge_expectations());
        let scale = p.tau_m().sqrt() / p.dt;
        Ok(std::array::from_fn(|k| mid[k] + scale * dw[k]))
    }

    /// Split the state into `(ℓ, ϱ_g, ϱ_L)` using the basis `Q_ℓ φ_j`.
    pub fn decompose(
        &self,
        basis: &CodeBasis,
    ) -> Result<(SubspaceIndex, GaugeDensity, [[f64; 2]; 2]), OracleError> {
        let ell = self.current_subspace()?;
        let v = subspace_vectors(ell, basis);
        let rho = DMatrix::from_row_slice(DIM, DIM, &self.rho);
        let m = v.transpose() * rho * &v;
        let weight = m.trace();
        if (weight - 1.0).abs() > 1e-9 {
            return Err(OracleError::Leakage(1.0 - weight));
        }
        let gauge = GaugeDensity(std::array::from_fn(|i| {
            std::array::from_fn(|j| m[(i, j)] + m[(i + GAUGE_DIM, j + GAUGE_DIM)])
        }));
        let logical = std::array::from_fn(|a| {
            std::array::from_fn(|b| {
                (0..GAUGE_DIM)
                    .map(|g| m[(a * GAUGE_DIM + g, b * GAUGE_DIM + g)])
                    .sum()
            })
        });
        Ok((ell, gauge, logical))
    }
}

/// Outcome of running the reduced engine and the full-space equation side
/// by side on shared Wiener increments.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleComparison {
    pub steps: u64,
    /// `max |signal_reduced − signal_full|` over all twelve traces.
    pub max_signal_diff: f64,
    /// `max |ϱ_g,reduced − ϱ_g,full|` at the end of the run.
    pub max_gauge_diff: f64,
    pub final_reduced: SubspaceIndex,
    pub final_full: SubspaceIndex,
}

/// Integrate both engines for `steps` steps from the zero gauge
/// configuration with logical `|+⟩`, applying `error` (if any) before step
/// `error_step`. The reduced engine runs its mixed-state path without
/// eigenvalue clipping, which the full-space equation does not have either.
pub fn compare_with_reduced<R: rand::Rng + ?Sized>(
    params: MeasurementParams,
    basis: &CodeBasis,
    steps: u64,
    error: Option<(u64, &PauliOperator)>,
    rng: &mut R,
) -> Result<OracleComparison, OracleError> {
    use super::{emit_signals, inject_error, step_average, GaugeState, InitialGauge, SimState};
    use rand_distr::StandardNormal;

    params.validate()?;
    let mut reduced = SimState::new(InitialGauge::ZeroConfig, &params);
    reduced.gauge = GaugeState::Mixed(reduced.gauge.to_density());
    let plus = [[0.5, 0.5], [0.5, 0.5]];
    let mut full = FullSpaceSme::embed(
        params,
        reduced.ell,
        &reduced.gauge.to_density(),
        plus,
        basis,
    );
    let sd = params.dt.sqrt();
    let mut max_signal_diff = 0.0f64;
    for n in 0..steps {
        if let Some((at, e)) = error {
            if n == at {
                inject_error(&mut reduced, e)?;
                full.apply_error(e)?;
            }
        }
        let dw: [f64; N_GAUGE_OPS] =
            std::array::from_fn(|_| sd * rng.sample::<f64, _>(StandardNormal));
        let zeta = zeta_all(reduced.ell);
        let info = reduced.gauge.step_with(&params, &dw, false)?;
        let mid = step_average(&info.expectations, &reduced.gauge.expectations());
        let sr = emit_signals(&mid, &zeta, &dw, &params);
        let sf = full.step(&dw)?;
        for k in 0..N_GAUGE_OPS {
            max_signal_diff = max_signal_diff.max((sr[k] - sf[k]).abs());
        }
    }
    let (final_full, g, _) = full.decompose(basis)?;
    let rg = reduced.gauge.to_density();
    let mut max_gauge_diff = 0.0f64;
    for i in 0..GAUGE_DIM {
        for j in 0..GAUGE_DIM {
            max_gauge_diff = max_gauge_diff.max((g.0[i][j] - rg.0[i][j]).abs());
        }
    }
    Ok(OracleComparison {
        steps,
        max_signal_diff,
        max_gauge_diff,
        final_reduced: reduced.ell,
        final_full,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code_algebra::build_code_basis;
    use crate::trajectory_engine::{inject_error, GaugeState, InitialGauge, SimState};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn short_run_tracks_reduced_engine() {
        let params = MeasurementParams::new(1.0, 1.0, 1e-3).unwrap();
        let basis = build_code_basis().unwrap();
        let mut reduced = SimState::new(InitialGauge::ZeroConfig, &params);
        reduced.gauge = GaugeState::Mixed(reduced.gauge.to_density());
        let plus = [[0.5, 0.5], [0.5, 0.5]];
        let mut full = FullSpaceSme::embed(
            params,
            reduced.ell,
            &reduced.gauge.to_density(),
            plus,
            &basis,
        );
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x5: PauliOperator = "X5".parse().unwrap();
        let mut worst = 0.0f64;
        for n in 0..300 {
            if n == 150 {
                inject_error(&mut reduced, &x5).unwrap();
                full.apply_error(&x5).unwrap();
            }
            let dw: [f64; 12] = std::array::from_fn(|_| {
                params.dt.sqrt() * Distribution::<f64>::sample(&StandardNormal, &mut rng)
            });
            let zeta = zeta_all(reduced.ell);
            let info = reduced.gauge.step_with(&params, &dw, false).unwrap();
            let mid = crate::trajectory_engine::step_average(
                &info.expectations,
                &reduced.gauge.expectations(),
            );
            let sr = crate::trajectory_engine::emit_signals(&mid, &zeta, &dw, &params);
            let sf = full.step(&dw).unwrap();
            for k in 0..12 {
                worst = worst.max((sr[k] - sf[k]).abs());
            }
        }
        assert!(worst < 1e-9, "signal mismatch {worst}");
        let (ell, g, l) = full.decompose(&basis).unwrap();
        assert_eq!(ell.get(), 5);
        let rg = reduced.gauge.to_density();
        for i in 0..16 {
            for j in 0..16 {
                assert!((g.0[i][j] - rg.0[i][j]).abs() < 1e-9);
            }
        }
        // X_L leaves |+⟩ invariant
        assert!((l[0][1] - 0.5).abs() < 1e-9);
    }
}
