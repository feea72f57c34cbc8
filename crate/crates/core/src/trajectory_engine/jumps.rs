//! Pauli error channels and their jump statistics.

use rand::Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use super::EngineError;
use crate::code_algebra::{channel_from_index, channel_index, transpose_qubit};
use crate::pauli::PauliKind;

/// Number of single-qubit error channels (9 qubits × X, Y, Z).
pub const N_CHANNELS: usize = 27;

/// Default bound on `Γ_tot·dt`.
pub const DEFAULT_RATE_BOUND: f64 = 0.01;

/// Markovian Pauli error rates per qubit, `rates[q-1] = [Γ_X, Γ_Y, Γ_Z]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ErrorModel {
    pub rates: [[f64; 3]; 9],
}

impl ErrorModel {
    pub fn none() -> Self {
        Self::default()
    }

    /// `Γ_i^(X) = Γ_i^(Y) = Γ_i^(Z) = Γ_d/3` on every qubit.
    pub fn depolarizing(gamma_d: f64) -> Self {
        ErrorModel {
            rates: [[gamma_d / 3.0; 3]; 9],
        }
    }

    pub fn from_channels(rates: &[f64; N_CHANNELS]) -> Self {
        ErrorModel {
            rates: std::array::from_fn(|q| std::array::from_fn(|k| rates[3 * q + k])),
        }
    }

    pub fn channels(&self) -> [f64; N_CHANNELS] {
        std::array::from_fn(|c| self.rates[c / 3][c % 3])
    }

    pub fn rate(&self, qubit: usize, kind: PauliKind) -> f64 {
        self.channels()[channel_index(qubit, kind)]
    }

    pub fn total_rate(&self) -> f64 {
        self.rates.iter().flatten().sum()
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        for (c, r) in self.channels().iter().enumerate() {
            if !(r.is_finite() && *r >= 0.0) {
                let (q, k) = channel_from_index(c);
                return Err(EngineError::InvalidParams(format!(
                    "rate Γ_{q}^({}) = {r} must be ≥ 0",
                    k.letter()
                )));
            }
        }
        Ok(())
    }

    /// Enforce `Γ_tot·dt < bound`.
    pub fn check_step(&self, dt: f64, bound: f64) -> Result<(), EngineError> {
        self.validate()?;
        let load = self.total_rate() * dt;
        if load >= bound {
            return Err(EngineError::InvalidParams(format!(
                "total error rate × dt = {load:.3e} exceeds the bound {bound:.3e}"
            )));
        }
        Ok(())
    }

    /// X↔Z exchange combined with the grid transpose `(2↔4, 3↔7, 6↔8)`.
    pub fn xz_mirror(&self) -> Self {
        let mut out = ErrorModel::none();
        for q in 1..=9 {
            let [x, y, z] = self.rates[q - 1];
            out.rates[transpose_qubit(q) - 1] = [z, y, x];
        }
        out
    }
}

/// Independent Bernoulli draw per channel, probability `Γ·dt` each.
pub fn sample_jumps<R: Rng + ?Sized>(
    model: &ErrorModel,
    dt: f64,
    rng: &mut R,
) -> Vec<(usize, PauliKind)> {
    model
        .channels()
        .iter()
        .enumerate()
        .filter(|(_, &r)| r > 0.0 && rng.random::<f64>() < r * dt)
        .map(|(c, _)| channel_from_index(c))
        .collect()
}

/// Statistically equivalent to calling [`sample_jumps`] every step, but
/// draws only at steps where something fires: a geometric number of quiet
/// steps, then the fired set conditioned on being nonempty.
#[derive(Debug, Clone)]
pub struct JumpSampler {
    p: [f64; N_CHANNELS],
    // tail_quiet[c] = Π_{c' ≥ c} (1 - p_c')
    tail_quiet: [f64; N_CHANNELS + 1],
    skip: Option<Geometric>,
}

impl JumpSampler {
    pub fn new(model: &ErrorModel, dt: f64) -> Result<Self, EngineError> {
        model.validate()?;
        let p: [f64; N_CHANNELS] = model.channels().map(|r| (r * dt).min(1.0));
        let mut tail_quiet = [1.0; N_CHANNELS + 1];
        let mut log_quiet = 0.0;
        for c in (0..N_CHANNELS).rev() {
            tail_quiet[c] = tail_quiet[c + 1] * (1.0 - p[c]);
            log_quiet += (-p[c]).ln_1p();
        }
        let p_any = -log_quiet.exp_m1();
        let skip = if p_any > 0.0 {
            Some(Geometric::new(p_any).map_err(|e| EngineError::InvalidParams(e.to_string()))?)
        } else {
            None
        };
        Ok(JumpSampler {
            p,
            tail_quiet,
            skip,
        })
    }

    /// Probability that at least one channel fires in a step.
    pub fn p_any(&self) -> f64 {
        1.0 - self.tail_quiet[0]
    }

    /// Number of quiet steps before the next step with a jump; `None` when
    /// all rates vanish.
    pub fn quiet_steps<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<u64> {
        self.skip.as_ref().map(|g| g.sample(rng))
    }

    /// Channels firing in a step known to contain at least one jump, in
    /// channel order.
    pub fn fired<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut Vec<usize>) {
        out.clear();
        for c in 0..N_CHANNELS {
            let p = self.p[c];
            if p == 0.0 {
                continue;
            }
            let q = if out.is_empty() {
                p / (1.0 - self.tail_quiet[c])
            } else {
                p
            };
            if rng.random::<f64>() < q {
                out.push(c);
            }
        }
        debug_assert!(!out.is_empty());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_rates_never_fire() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = ErrorModel::none();
        for _ in 0..1000 {
            assert!(sample_jumps(&m, 0.01, &mut rng).is_empty());
        }
        assert!(JumpSampler::new(&m, 0.01)
            .unwrap()
            .quiet_steps(&mut rng)
            .is_none());
    }

    #[test]
    fn bernoulli_count_matches_binomial() {
        let mut rates = [0.0; N_CHANNELS];
        rates[4] = 1.0;
        let m = ErrorModel::from_channels(&rates);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n: usize = (0..1_000_000)
            .map(|_| sample_jumps(&m, 1e-3, &mut rng).len())
            .sum();
        assert!((n as f64 - 1000.0).abs() < 3.0 * 1000f64.sqrt(), "{n}");
    }

    #[test]
    fn skip_sampler_matches_per_step_rates() {
        let m = ErrorModel::depolarizing(0.6);
        let dt = 0.01;
        let sampler = JumpSampler::new(&m, dt).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let steps = 2_000_000u64;
        let mut counts = [0u64; N_CHANNELS];
        let mut pairs = 0u64;
        let mut t = 0u64;
        let mut fired = Vec::new();
        loop {
            t += sampler.quiet_steps(&mut rng).unwrap() + 1;
            if t > steps {
                break;
            }
            sampler.fired(&mut rng, &mut fired);
            pairs += (fired.len() >= 2) as u64;
            for &c in &fired {
                counts[c] += 1;
            }
        }
        let p = 0.2 * dt;
        let want = p * steps as f64;
        for c in counts {
            assert!((c as f64 - want).abs() < 4.0 * want.sqrt(), "{c} vs {want}");
        }
        let p_quiet = (1.0 - p).powi(27);
        let want_pairs = steps as f64 * (1.0 - p_quiet - 27.0 * p * (1.0 - p).powi(26));
        assert!(
            (pairs as f64 - want_pairs).abs() < 4.0 * want_pairs.sqrt(),
            "{pairs} vs {want_pairs}"
        );
    }

    #[test]
    fn mirror_is_an_involution() {
        let mut rates = [0.0; N_CHANNELS];
        for (c, r) in rates.iter_mut().enumerate() {
            *r = c as f64;
        }
        let m = ErrorModel::from_channels(&rates);
        assert_eq!(m.xz_mirror().xz_mirror(), m);
        assert_eq!(m.xz_mirror().rate(4, PauliKind::Z), m.rate(2, PauliKind::X));
    }
}
