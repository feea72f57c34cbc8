//! Constrained minimization of the depolarizing total rate over the lower
//! threshold and `T_c`, with the upper threshold pinned at
//! `Θ₁ = k/√SNR`.

use serde::{Deserialize, Serialize};

use super::rates::total_rate_depolarizing;
use super::snr::{golden_min, optimal_tau_c, snr_per_tcoll};
use super::AnalyticsError;
use crate::decoder::Thresholds;

/// Range of `Γ_d τ_coll` accepted by [`optimize`].
pub const GAMMA_D_RANGE: (f64, f64) = (1e-8, 1e-3);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSettings {
    /// Smoothing time in units of `τ_coll`; `None` uses the SNR-optimal value.
    pub tau_c: Option<f64>,
    /// `k` in `Θ₁ = k/√SNR`.
    pub theta1_factor: f64,
    pub theta2_points: usize,
    pub t_c_points: usize,
    pub t_c_range: (f64, f64),
    pub sweeps: usize,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        OptimizerSettings {
            tau_c: None,
            theta1_factor: 1.5,
            theta2_points: 101,
            t_c_points: 121,
            t_c_range: (2.0, 500.0),
            sweeps: 3,
        }
    }
}

/// Minimizer (all times in units of `τ_coll`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub gamma_d: f64,
    pub eta: f64,
    pub tau_c: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub t_c: f64,
    pub gamma: f64,
    pub snr: f64,
    /// `false` when the best point sits on the search boundary.
    pub converged: bool,
}

/// Total rate at `(Θ₂, T_c)` with `Θ₁` pinned; `∞` outside the feasible set.
pub fn pinned_rate(
    gamma_d: f64,
    eta: f64,
    tau_c: f64,
    theta1_factor: f64,
    theta2: f64,
    t_c: f64,
) -> (f64, f64, f64) {
    let snr = snr_per_tcoll(2.0 * tau_c, eta) * t_c;
    let theta1 = theta1_factor / snr.sqrt();
    if !(theta1 < theta2 && theta1 <= 1.0 && (1.0..2.0).contains(&theta2)) {
        return (f64::INFINITY, theta1, snr);
    }
    let th = Thresholds { theta1, theta2 };
    let g = total_rate_depolarizing(gamma_d, &th, t_c, snr).unwrap_or(f64::INFINITY);
    (g, theta1, snr)
}

pub fn optimize(gamma_d: f64, eta: f64) -> Result<Optimum, AnalyticsError> {
    optimize_with(gamma_d, eta, &OptimizerSettings::default())
}

pub fn optimize_with(
    gamma_d: f64,
    eta: f64,
    settings: &OptimizerSettings,
) -> Result<Optimum, AnalyticsError> {
    if !(GAMMA_D_RANGE.0..=GAMMA_D_RANGE.1).contains(&gamma_d) {
        return Err(AnalyticsError::Optimize(format!(
            "Γ_d τ_coll = {gamma_d:e} outside [{:e}, {:e}]",
            GAMMA_D_RANGE.0, GAMMA_D_RANGE.1
        )));
    }
    optimize_unchecked(gamma_d, eta, settings)
}

fn optimize_unchecked(
    gamma_d: f64,
    eta: f64,
    settings: &OptimizerSettings,
) -> Result<Optimum, AnalyticsError> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(AnalyticsError::Optimize(format!(
            "η = {eta} outside (0, 1]"
        )));
    }
    let tau_c = settings.tau_c.unwrap_or_else(|| optimal_tau_c(eta));
    let k = settings.theta1_factor;
    let (lo_t, hi_t) = (settings.t_c_range.0.ln(), settings.t_c_range.1.ln());
    let hi_th = 2.0 - 1e-9;
    let f = |th2: f64, u: f64| pinned_rate(gamma_d, eta, tau_c, k, th2, u.exp()).0;

    let n2 = settings.theta2_points.max(3);
    let nt = settings.t_c_points.max(3);
    let d2 = (hi_th - 1.0) / (n2 - 1) as f64;
    let dt = (hi_t - lo_t) / (nt - 1) as f64;
    let mut best = (f64::INFINITY, 1.0, lo_t);
    for i in 0..n2 {
        let th2 = 1.0 + i as f64 * d2;
        for j in 0..nt {
            let u = lo_t + j as f64 * dt;
            let v = f(th2, u);
            if v < best.0 {
                best = (v, th2, u);
            }
        }
    }
    if !best.0.is_finite() {
        return Err(AnalyticsError::Optimize(format!(
            "no feasible point for Γ_d = {gamma_d:e}, η = {eta}"
        )));
    }
    let (_, mut th2, mut u) = best;
    for _ in 0..settings.sweeps {
        let (a, b) = ((th2 - d2).max(1.0), (th2 + d2).min(hi_th));
        th2 = golden_min(|x| f(x, u), a, b, 1e-12);
        let (a, b) = ((u - dt).max(lo_t), (u + dt).min(hi_t));
        u = golden_min(|x| f(th2, x), a, b, 1e-12);
    }
    let t_c = u.exp();
    let (gamma, theta1, snr) = pinned_rate(gamma_d, eta, tau_c, k, th2, t_c);
    let edge =
        |x: f64, a: f64, b: f64, w: f64| (x - a).abs() < 1e-3 * w || (b - x).abs() < 1e-3 * w;
    let converged = gamma.is_finite() && !edge(u, lo_t, hi_t, dt) && !edge(th2, 1.0, hi_th, d2);
    Ok(Optimum {
        gamma_d,
        eta,
        tau_c,
        theta1,
        theta2: th2,
        t_c,
        gamma,
        snr,
        converged,
    })
}

/// `Γ_d` at which the optimized logical rate equals `Γ_d`, by bisection
/// in `ln Γ_d` over `[1e-5, 1e-2]`.
pub fn crossover(eta: f64, settings: &OptimizerSettings) -> Result<f64, AnalyticsError> {
    let excess = |ln_g: f64| -> Result<f64, AnalyticsError> {
        let g = ln_g.exp();
        Ok((optimize_unchecked(g, eta, settings)?.gamma / g).ln())
    };
    let (mut a, mut b) = ((1e-5f64).ln(), (1e-2f64).ln());
    let (fa, fb) = (excess(a)?, excess(b)?);
    if fa.signum() == fb.signum() {
        return Err(AnalyticsError::Optimize(format!(
            "no crossover in [1e-5, 1e-2] for η = {eta}"
        )));
    }
    for _ in 0..50 {
        let m = 0.5 * (a + b);
        if excess(m)?.signum() == fa.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    Ok((0.5 * (a + b)).exp())
}

/// Least-squares `y = a·ln(b·x)`; returns `(a, b)`.
pub fn fit_log(points: &[(f64, f64)]) -> (f64, f64) {
    let (slope, icpt) = linfit(points.iter().map(|&(x, y)| (x.ln(), y)));
    (slope, (icpt / slope).exp())
}

/// Least-squares `y = A·x^ν` in log-log space; returns `(A, ν)`.
pub fn fit_power(points: &[(f64, f64)]) -> (f64, f64) {
    let (slope, icpt) = linfit(points.iter().map(|&(x, y)| (x.ln(), y.ln())));
    (icpt.exp(), slope)
}

fn linfit(pts: impl Iterator<Item = (f64, f64)>) -> (f64, f64) {
    let pts: Vec<_> = pts.collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_theta1_and_feasibility() {
        let (g, t1, snr) = pinned_rate(1e-5, 1.0, 0.229, 1.5, 1.4, 30.0);
        assert!(g.is_finite());
        assert!((t1 - 1.5 / snr.sqrt()).abs() < 1e-15);
        assert!(pinned_rate(1e-5, 1.0, 0.229, 1.5, 2.0, 30.0)
            .0
            .is_infinite());
        // tiny T_c: SNR so small that Θ₁ exceeds 1
        assert!(pinned_rate(1e-5, 1.0, 0.229, 1.5, 1.4, 1e-3)
            .0
            .is_infinite());
    }

    #[test]
    fn optimum_is_a_local_minimum() {
        let o = optimize(1e-5, 1.0).unwrap();
        assert!(o.converged);
        for (d2, dt) in [(0.01, 0.0), (-0.01, 0.0), (0.0, 0.5), (0.0, -0.5)] {
            let (g, _, _) = pinned_rate(o.gamma_d, o.eta, o.tau_c, 1.5, o.theta2 + d2, o.t_c + dt);
            assert!(g >= o.gamma * (1.0 - 1e-12));
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(optimize(1e-2, 1.0).is_err());
        assert!(optimize(1e-9, 1.0).is_err());
    }

    #[test]
    fn fits_recover_parameters() {
        let pts: Vec<_> = [1e-7, 1e-6, 1e-5]
            .iter()
            .map(|&g: &f64| (g, -6.5 * (70.0 * g).ln()))
            .collect();
        let (a, b) = fit_log(&pts);
        assert!((a + 6.5).abs() < 1e-9 && (b / 70.0 - 1.0).abs() < 1e-9);
        let pts: Vec<_> = [1e-7, 1e-6, 1e-5]
            .iter()
            .map(|&g: &f64| (g, 700.0 * g.powf(1.9)))
            .collect();
        let (amp, nu) = fit_power(&pts);
        assert!((amp / 700.0 - 1.0).abs() < 1e-9 && (nu - 1.9).abs() < 1e-12);
    }
}
