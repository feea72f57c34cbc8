//! Exponential smoothing of the twelve detector signals and the four
//! filtered triple cross-correlators that track the stabilizer signs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code_algebra::N_GAUGE_OPS;

/// Gauge operators (0-based) whose smoothed signals form each correlator,
/// in syndrome order `(C_x1, C_z1, C_x2, C_z2)`.
pub const TRIPLES: [[usize; 3]; 4] = [[6, 7, 8], [0, 1, 2], [9, 10, 11], [3, 4, 5]];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FilterError {
    #[error("τ_c = {0} must be > 0")]
    TauC(f64),
    #[error("T_c = {0} must be > 0")]
    BigTc(f64),
}

/// Smoothing time `τ_c` and correlator integration time `T_c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterParams {
    pub tau_c: f64,
    pub t_c: f64,
}

impl FilterParams {
    pub fn new(tau_c: f64, t_c: f64) -> Result<Self, FilterError> {
        if !(tau_c > 0.0 && tau_c.is_finite()) {
            return Err(FilterError::TauC(tau_c));
        }
        if !(t_c > 0.0 && t_c.is_finite()) {
            return Err(FilterError::BigTc(t_c));
        }
        Ok(FilterParams { tau_c, t_c })
    }
}

/// Magnitude of the stationary mean of a normalized triple correlator.
pub fn mean_correlator(gamma_m: f64, tau_c: f64) -> f64 {
    let x = gamma_m * tau_c;
    let a = 1.0 + x;
    let b = 1.0 + 2.0 * x;
    let c = 1.0 + 4.0 * x;
    (1.0 / (a * b) + 1.0 / (b * b) + 1.0 / (a * c)) / 3.0
}

/// How a bank starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BankInit {
    /// Smoothed signals at the given noiseless values, correlators at `+|⟨𝒞⟩|`.
    #[default]
    FixedPoint,
    Zero,
}

/// Smoothed signals `ℐ_k` and correlators `𝒞` with their normalization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorBank {
    pub params: FilterParams,
    pub smoothed: [f64; N_GAUGE_OPS],
    /// Syndrome order `(C_x1, C_z1, C_x2, C_z2)`.
    pub correlators: [f64; 4],
    pub norm: f64,
}

impl CorrelatorBank {
    /// `initial_signals` are the noiseless `Tr[𝒢_k ϱ]` used for the
    /// fixed-point start.
    pub fn new(
        params: FilterParams,
        gamma_m: f64,
        init: BankInit,
        initial_signals: &[f64; N_GAUGE_OPS],
    ) -> Self {
        let norm = mean_correlator(gamma_m, params.tau_c);
        match init {
            BankInit::FixedPoint => CorrelatorBank {
                params,
                smoothed: *initial_signals,
                correlators: [norm; 4],
                norm,
            },
            BankInit::Zero => CorrelatorBank {
                params,
                smoothed: [0.0; N_GAUGE_OPS],
                correlators: [0.0; 4],
                norm,
            },
        }
    }

    /// Advance both filters by one step.
    pub fn update(&mut self, raw: &[f64; N_GAUGE_OPS], dt: f64) {
        let a = dt / self.params.tau_c;
        for (s, r) in self.smoothed.iter_mut().zip(raw) {
            *s += (r - *s) * a;
        }
        let b = dt / self.params.t_c;
        for (c, t) in self.correlators.iter_mut().zip(TRIPLES) {
            let prod = self.smoothed[t[0]] * self.smoothed[t[1]] * self.smoothed[t[2]];
            *c += (prod - *c) * b;
        }
    }

    /// Correlators divided by `|⟨𝒞⟩|`.
    pub fn normalized(&self) -> [f64; 4] {
        self.correlators.map(|c| c / self.norm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_correlator_values() {
        assert!((mean_correlator(1.0, 0.0) - 1.0).abs() < 1e-15);
        assert!((mean_correlator(1.0, 1.0) - 17.0 / 135.0).abs() < 1e-15);
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let v = mean_correlator(1.0, i as f64 * 0.05);
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn step_response() {
        let p = FilterParams::new(0.5, 5.0).unwrap();
        let mut bank = CorrelatorBank::new(p, 1.0, BankInit::Zero, &[0.0; 12]);
        let dt = 1e-3;
        for _ in 0..50_000 {
            bank.update(&[1.0; 12], dt);
        }
        assert!(bank.smoothed.iter().all(|s| (s - 1.0).abs() < 1e-12));
        // after 10 T_c the correlators are within e^-10 of 1 (plus the τ_c lag)
        assert!(bank.correlators.iter().all(|c| (c - 1.0).abs() < 1e-3));
        for _ in 0..100_000 {
            bank.update(&[0.0; 12], dt);
        }
        assert!(bank.correlators.iter().all(|c| c.abs() < 1e-6));
    }

    #[test]
    fn causal_response() {
        let p = FilterParams::new(0.3, 2.0).unwrap();
        let mut a = CorrelatorBank::new(p, 1.0, BankInit::FixedPoint, &[1.0; 12]);
        let mut b = a.clone();
        let sig: Vec<[f64; 12]> = (0..500)
            .map(|n| [((n * 7) % 13) as f64 / 6.0 - 1.0; 12])
            .collect();
        for (n, s) in sig.iter().enumerate() {
            a.update(s, 1e-2);
            let mut s2 = *s;
            if n == 499 {
                s2[0] += 5.0;
            }
            b.update(&s2, 1e-2);
            if n < 499 {
                assert_eq!(a, b);
            }
        }
        assert_ne!(a, b);
    }
}
