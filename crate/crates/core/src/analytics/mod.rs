//! Closed-form predictions: correlator SNR, continuous and discrete logical
//! error rates, probability offsets and protocol optimization. Times are in
//! units of `τ_coll = 1/Γ_m` unless an input carries `Γ_m` explicitly.

mod optimize;
mod rates;
mod snr;

use thiserror::Error;

pub use optimize::{
    crossover, fit_log, fit_power, optimize, optimize_with, pinned_rate, OptimizerSettings,
    Optimum, GAMMA_D_RANGE,
};
pub use rates::{
    cont_rates_large_tc, cont_rates_large_tc_enumerated, cont_rates_small_tc, discrete_rates,
    discrete_rates_transcribed, fluctuation_factors, offsets, pair_window, total_rate,
    total_rate_depolarizing, window_times, ContRates, TypeRates, THETA2_MAX,
};
pub use snr::{
    correlator_variance, diffusion, near_singular, optimal_tau_c, r_coefficients, snr, snr_exact,
    snr_per_tcoll, two_time_corr, SnrInputs, SINGULAR_S, SINGULAR_WINDOW,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticsError {
    #[error("invalid SNR inputs: {0}")]
    Snr(String),
    #[error("Θ₂ = {0} too close to 2: detection window diverges")]
    Window(f64),
    #[error("optimizer: {0}")]
    Optimize(String),
}

/// `1 − erf(x)` evaluated directly, without cancellation for large `x`.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erfc_reference_values() {
        // 30-digit references, rounded
        let cases = [
            (0.0, 1.0),
            (0.5, 0.479_500_122_186_953_5),
            (1.0, 0.157_299_207_050_285_13),
            (2.0, 0.004_677_734_981_047_266),
            (3.0, 2.209_049_699_858_544e-5),
            (5.0, 1.537_459_794_428_034_8e-12),
            (-1.0, 1.842_700_792_949_715),
        ];
        for (x, want) in cases {
            let got = erfc(x);
            assert!(
                (got - want).abs() <= 1e-15 * want.max(1e-300) + 1e-16,
                "{x}: {got} vs {want}"
            );
        }
    }
}
