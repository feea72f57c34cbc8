//! Stationary statistics of one triple cross-correlator in the code space:
//! mean, two-time covariance of the unfiltered product, diffusion
//! coefficient and signal-to-noise ratio.

use serde::{Deserialize, Serialize};

use super::AnalyticsError;
use crate::correlators::mean_correlator;

/// Filter and detector parameters entering the correlator statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnrInputs {
    pub tau_c: f64,
    pub t_c: f64,
    pub eta: f64,
    pub gamma_m: f64,
}

impl SnrInputs {
    pub fn new(tau_c: f64, t_c: f64, eta: f64, gamma_m: f64) -> Result<Self, AnalyticsError> {
        let ok = |v: f64| v > 0.0 && v.is_finite();
        if !(ok(tau_c) && ok(t_c) && ok(gamma_m)) || !(eta > 0.0 && eta <= 1.0) {
            return Err(AnalyticsError::Snr(format!(
                "need τ_c, T_c, Γ_m > 0 and η ∈ (0, 1]; got τ_c = {tau_c}, T_c = {t_c}, η = {eta}, Γ_m = {gamma_m}"
            )));
        }
        Ok(SnrInputs {
            tau_c,
            t_c,
            eta,
            gamma_m,
        })
    }

    /// `s = 2 τ_c / τ_coll`.
    pub fn s(&self) -> f64 {
        2.0 * self.tau_c * self.gamma_m
    }

    pub fn mean(&self) -> f64 {
        mean_correlator(self.gamma_m, self.tau_c)
    }
}

fn poly(x: f64, coeffs_high_first: &[f64]) -> f64 {
    coeffs_high_first.iter().fold(0.0, |acc, c| acc * x + c)
}

fn denominator(s: f64, eta: f64) -> f64 {
    36.0 * s
        * s
        * eta
        * eta
        * (s - 1.0).powi(2)
        * (s + 1.0).powi(4)
        * (s - 2.0)
        * (s + 2.0).powi(2)
        * (s + 3.0)
        * (s + 4.0)
        * (s + 5.0)
        * (2.0 * s - 1.0)
        * (2.0 * s + 1.0).powi(2)
        * (2.0 * s + 3.0)
        * (2.0 * s + 5.0)
}

/// The five rational coefficients `R₁..R₅(s, η)`.
pub fn r_coefficients(s: f64, eta: f64) -> [f64; 5] {
    let e = eta;
    let e2 = e * e;
    let d = denominator(s, e);
    let r1 = 6.0 * s * (s + 1.0).powi(2) * (2.0 * s + 1.0) / d
        * poly(
            s,
            &[
                12.0 * (4.0 * e2 + 8.0 * e + 5.0),
                8.0 * (208.0 * e2 + 234.0 * e + 135.0),
                3.0 * (4748.0 * e2 + 4756.0 * e + 2507.0),
                47680.0 * e2 + 51468.0 * e + 23598.0,
                48220.0 * e2 + 72963.0 * e + 18132.0,
                -6.0 * (12824.0 * e2 + 9657.0 * e + 14832.0),
                -(198464.0 * e2 + 302379.0 * e + 250755.0),
                -18.0 * (5520.0 * e2 + 14779.0 * e + 9321.0),
                36352.0 * e2 + 61260.0 * e + 202458.0,
                12.0 * (2080.0 * e2 + 10858.0 * e + 27801.0),
                -24.0 * (720.0 * e - 2741.0),
                -720.0 * (40.0 * e + 141.0),
                -43200.0,
            ],
        );
    let r2 = -12.0 * s * e * (s - 1.0).powi(2) * (s + 2.0).powi(2) / d
        * poly(s, &[8.0, 84.0, 278.0, 279.0, -70.0, -75.0])
        * poly(
            s,
            &[
                2.0 * (34.0 * e + 9.0),
                254.0 * e + 147.0,
                18.0 * (16.0 * e + 23.0),
                96.0 * e + 531.0,
                318.0,
                72.0,
            ],
        );
    let r3 = 6.0 * (s + 1.0).powi(2) / d
        * poly(s, &[8.0, 4.0, -42.0, -1.0, 10.0])
        * poly(
            s,
            &[
                4.0 * (28.0 * e2 - 3.0),
                4.0 * (172.0 * e2 - 27.0 * e - 54.0),
                -3.0 * (96.0 * e2 + 526.0 * e + 523.0),
                -16.0 * (605.0 * e2 + 552.0 * e + 366.0),
                -6.0 * (3800.0 * e2 + 4017.0 * e + 1925.0),
                -12.0 * (1656.0 * e2 + 2819.0 * e + 812.0),
                -3.0 * (1920.0 * e2 + 7664.0 * e - 1173.0),
                -24.0 * (240.0 * e - 569.0),
                9612.0,
                2160.0,
            ],
        );
    let r4 = 6.0 * e * s * (s + 1.0).powi(2) / d
        * poly(s, &[8.0, 84.0, 226.0, -181.0, -1197.0, -590.0, 600.0])
        * poly(
            s,
            &[
                4.0 * (7.0 * e + 3.0),
                4.0 * (47.0 * e + 24.0),
                3.0 * (88.0 * e + 93.0),
                96.0 * e + 357.0,
                192.0,
                36.0,
            ],
        );
    let r5 = -3.0 * (s - 1.0).powi(2) / d
        * poly(s, &[2.0, 17.0, 30.0, -53.0, -152.0, -60.0])
        * poly(
            s,
            &[
                12.0 * (2.0 * e + 1.0).powi(2),
                8.0 * (76.0 * e2 + 72.0 * e + 21.0),
                1876.0 * e2 + 2676.0 * e + 981.0,
                2024.0 * e2 + 6120.0 * e + 3138.0,
                672.0 * e2 + 7236.0 * e + 6042.0,
                96.0 * (44.0 * e + 75.0),
                15.0 * (64.0 * e + 347.0),
                2094.0,
                360.0,
            ],
        );
    [r1, r2, r3, r4, r5]
}

/// Zeros of `D(s, η)` on `s > 0`.
pub const SINGULAR_S: [f64; 3] = [0.5, 1.0, 2.0];

/// Half-width of the interpolation window around each singular `s`. The
/// coefficients have up to double poles there, so evaluating closer than
/// this loses more digits to cancellation than interpolation costs.
pub const SINGULAR_WINDOW: f64 = 1e-3;

/// Nearest singular point if `s` is inside its window.
pub fn near_singular(s: f64) -> Option<f64> {
    SINGULAR_S
        .into_iter()
        .find(|s0| (s - s0).abs() < SINGULAR_WINDOW)
}

/// Evaluate `f(s)` directly, or by cubic interpolation through
/// `s₀ ± w, s₀ ± 2w` when `s` sits at a removable singularity `s₀` of the
/// assembled expression.
fn regularized(s: f64, f: impl Fn(f64) -> f64) -> f64 {
    match near_singular(s) {
        None => f(s),
        Some(s0) => {
            let w = SINGULAR_WINDOW;
            let nodes = [s0 - 2.0 * w, s0 - w, s0 + w, s0 + 2.0 * w];
            let vals = nodes.map(&f);
            let mut acc = 0.0;
            for i in 0..4 {
                let mut l = 1.0;
                for j in 0..4 {
                    if i != j {
                        l *= (s - nodes[j]) / (nodes[i] - nodes[j]);
                    }
                }
                acc += l * vals[i];
            }
            acc
        }
    }
}

/// Amplitudes `A_i` and decay rates `λ_i` (in units of `Γ_m`) of the
/// five-exponential covariance at a given `s`.
fn modes(s: f64, eta: f64) -> [(f64, f64); 5] {
    let r = r_coefficients(s, eta);
    // 1/τ_c = 2/s in units of Γ_m
    let inv_tc = 2.0 / s;
    [
        (1.0 / (8.0 * s.powi(3) * eta.powi(3)) + r[0], 3.0 * inv_tc),
        (r[1], inv_tc + 2.0),
        (r[2], 2.0 * inv_tc + 2.0),
        (r[3], inv_tc + 4.0),
        (r[4], 2.0 * inv_tc + 4.0),
    ]
}

/// `⟨𝒞̃(t)𝒞̃(0)⟩ − ⟨𝒞̃⟩²` for the unfiltered triple product at lag `t`.
pub fn two_time_corr(t: f64, inp: &SnrInputs) -> f64 {
    let x = t.abs() * inp.gamma_m;
    regularized(inp.s(), |s| {
        modes(s, inp.eta)
            .iter()
            .map(|(a, l)| a * (-l * x).exp())
            .sum()
    })
}

/// Effective diffusion coefficient `𝒟_c = 2∫₀^∞ cov(t) dt`.
pub fn diffusion(inp: &SnrInputs) -> f64 {
    let d = regularized(inp.s(), |s| {
        modes(s, inp.eta).iter().map(|(a, l)| a / l).sum()
    });
    2.0 * d / inp.gamma_m
}

/// Large-`T_c` SNR from the closed-form rational expression.
pub fn snr(inp: &SnrInputs) -> f64 {
    let s = inp.s();
    snr_per_tcoll(s, inp.eta) * inp.t_c * inp.gamma_m
}

/// SNR per unit `T_c/τ_coll` in the large-`T_c` limit.
pub fn snr_per_tcoll(s: f64, eta: f64) -> f64 {
    let e = eta;
    let e2 = e * e;
    let e3 = e2 * e;
    let num = 16.0
        * e3
        * s
        * s
        * (s + 1.0)
        * (s + 2.0)
        * (s + 3.0)
        * (s + 4.0)
        * (2.0 * s + 1.0)
        * (2.0 * s + 3.0)
        * (8.0 * s * s + 15.0 * s + 6.0).powi(2);
    let den = poly(
        s,
        &[
            48.0 * (1.0 + e) * (1.0 + 2.0 * e).powi(2),
            16.0 * (63.0 + 315.0 * e + 540.0 * e2 + 452.0 * e3),
            24.0 * (396.0 + 1963.0 * e + 3548.0 * e2 + 3308.0 * e3),
            4.0 * (13347.0 + 64890.0 * e + 121128.0 * e2 + 106744.0 * e3),
            199809.0 + 940479.0 * e + 1770048.0 * e2 + 1331548.0 * e3,
            3.0 * (175818.0 + 789057.0 * e + 1458060.0 * e2 + 863636.0 * e3),
            1013421.0 + 4259496.0 * e + 7504140.0 * e2 + 3235624.0 * e3,
            6.0 * (240069.0 + 925035.0 * e + 1502502.0 * e2 + 430792.0 * e3),
            1522503.0 + 5239407.0 * e + 7535364.0 * e2 + 1272544.0 * e3,
            3.0 * (397086.0 + 1180221.0 * e + 1426120.0 * e2 + 116992.0 * e3),
            3.0 * (226437.0 + 555214.0 * e + 522576.0 * e2 + 13824.0 * e3),
            18.0 * (15211.0 + 28710.0 * e + 18512.0 * e2),
            12.0 * (6145.0 + 7902.0 * e + 2592.0 * e2),
            216.0 * (55.0 + 36.0 * e),
            864.0,
        ],
    );
    num / den
}

/// Stationary variance of the filtered correlator at finite `T_c`.
pub fn correlator_variance(inp: &SnrInputs) -> f64 {
    let k = 1.0 / (inp.t_c * inp.gamma_m);
    let v = regularized(inp.s(), |s| {
        modes(s, inp.eta).iter().map(|(a, l)| a / (l + k)).sum()
    });
    v * k
}

/// Finite-`T_c` SNR, `⟨𝒞⟩²/Var[𝒞]`, with the exponential `T_c` kernel
/// applied to the five-exponential covariance.
pub fn snr_exact(inp: &SnrInputs) -> f64 {
    inp.mean().powi(2) / correlator_variance(inp)
}

/// `τ_c` (in units of `τ_coll`) maximizing the large-`T_c` SNR.
pub fn optimal_tau_c(eta: f64) -> f64 {
    // golden section on ln τ_c
    let f = |u: f64| -snr_per_tcoll(2.0 * u.exp(), eta);
    golden_min(f, (0.02f64).ln(), (3.0f64).ln(), 1e-12).exp()
}

/// Golden-section minimization of a unimodal `f` on `[a, b]`.
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol * (1.0 + a.abs() + b.abs()) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inp(tau_c: f64, t_c: f64, eta: f64) -> SnrInputs {
        SnrInputs::new(tau_c, t_c, eta, 1.0).unwrap()
    }

    /// Composite Gauss-Legendre quadrature of `2∫₀^∞ cov` on a mapped grid.
    fn quadrature_dc(p: &SnrInputs) -> f64 {
        let nodes = [
            (-0.906_179_845_938_664, 0.236_926_885_056_189),
            (-0.538_469_310_105_683, 0.478_628_670_499_366),
            (0.0, 0.568_888_888_888_889),
            (0.538_469_310_105_683, 0.478_628_670_499_366),
            (0.906_179_845_938_664, 0.236_926_885_056_189),
        ];
        let slowest = (3.0 / p.tau_c).min(1.0 / p.tau_c + 2.0);
        let t_max = 45.0 / slowest;
        let n = 4000;
        let h = t_max / n as f64;
        let mut acc = 0.0;
        for k in 0..n {
            let mid = (k as f64 + 0.5) * h;
            for (x, w) in nodes {
                acc += w * 0.5 * h * two_time_corr(mid + 0.5 * h * x, p);
            }
        }
        2.0 * acc
    }

    #[test]
    fn quadrature_matches_closed_form_snr() {
        for &(tau_c, eta) in &[
            (0.1, 1.0),
            (0.229, 1.0),
            (0.4, 0.5),
            (0.8, 0.7),
            (1.7, 1.0),
            (0.35, 0.25),
        ] {
            let p = inp(tau_c, 30.0, eta);
            let dc_closed = 2.0 * p.mean().powi(2) * p.t_c / snr(&p);
            let dc_modes = diffusion(&p);
            let dc_quad = quadrature_dc(&p);
            assert!(
                (dc_modes / dc_closed - 1.0).abs() < 1e-8,
                "{tau_c} {eta}: {dc_modes} vs {dc_closed}"
            );
            assert!(
                (dc_quad / dc_closed - 1.0).abs() < 1e-8,
                "{tau_c} {eta}: {dc_quad} vs {dc_closed}"
            );
        }
    }

    #[test]
    fn singular_points_are_removable() {
        for s0 in SINGULAR_S {
            for eta in [0.5, 1.0] {
                let p = inp(s0 / 2.0, 30.0, eta);
                let dc_closed = 2.0 * p.mean().powi(2) * p.t_c / snr(&p);
                assert!((diffusion(&p) / dc_closed - 1.0).abs() < 1e-6, "s = {s0}");
                let c0 = two_time_corr(0.0, &p);
                assert!(c0.is_finite() && c0 > 0.0);
            }
        }
    }

    #[test]
    fn leading_small_tau_c_term() {
        // corrections are relative O(τ_c)
        let tau_c = 5e-4;
        let p = inp(tau_c, 30.0, 1.0);
        let lead = 1.0 / (64.0 * tau_c.powi(3));
        assert!((two_time_corr(0.0, &p) / lead - 1.0).abs() < 0.01);
        let tau_c: f64 = 5e-5;
        let asym = 192.0 * tau_c.powi(2) * 30.0;
        assert!((snr(&inp(tau_c, 30.0, 1.0)) / asym - 1.0).abs() < 0.01);
    }

    #[test]
    fn covariance_is_even() {
        let p = inp(0.3, 30.0, 0.8);
        for t in [0.01, 0.2, 1.5] {
            assert_eq!(two_time_corr(t, &p), two_time_corr(-t, &p));
        }
    }

    #[test]
    fn optimal_tau_c_values() {
        assert!(
            (optimal_tau_c(1.0) - 0.229).abs() < 0.0015,
            "{}",
            optimal_tau_c(1.0)
        );
        assert!(
            (optimal_tau_c(0.5) - 0.331).abs() < 0.0015,
            "{}",
            optimal_tau_c(0.5)
        );
    }

    #[test]
    fn exact_snr_approaches_large_t_c_limit() {
        for tau_c in [0.05, 0.1, 0.229, 0.5, 1.0, 2.0] {
            let p = inp(tau_c, 100.0, 1.0);
            let gap = (snr_exact(&p) / snr(&p) - 1.0).abs();
            assert!(gap < 0.02, "τ_c = {tau_c}: {gap}");
            let p30 = inp(tau_c, 30.0, 1.0);
            assert!((snr_exact(&p30) / snr(&p30) - 1.0).abs() < 0.1);
        }
    }
}
