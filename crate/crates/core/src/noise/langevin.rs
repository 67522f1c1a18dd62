//! Thermally driven motion of a damped mode as a rotating-frame
//! Ornstein–Uhlenbeck process.
//!
//! The complex mode amplitude obeys the exact per-step update
//!
//! ```text
//! a[k+1] = exp(-(i omega_p + gamma'/2) dt) a[k] + s (g1 + i g2)
//! ```
//!
//! with `s` matched so the stationary displacement variance is the classical
//! equipartition value `kT / (m_eff omega_p^2)`. The displacement sample is
//! `alpha[k] = Re a[k]`. The update is exact for any step size, so the only
//! stability constraint is the one imposed on callers for physical fidelity.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::constants::BOLTZMANN;
use crate::error::{Error, Result};
use crate::mech::MechMode;

/// Parameters of one thermal-motion realization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LangevinParams {
    /// Mode frequency, Hz.
    pub frequency: f64,
    /// Quality factor.
    pub q: f64,
    /// Effective mass, kg.
    pub m_eff: f64,
    /// Bath temperature, K (zero gives the identically zero trajectory).
    pub temperature: f64,
    /// Sample rate, Hz; must exceed 10 f to resolve the oscillation.
    pub sample_rate: f64,
    /// Trajectory duration, s.
    pub duration: f64,
    /// RNG seed; identical parameters and seed give bit-identical output.
    pub rng_seed: u64,
}

impl LangevinParams {
    pub fn for_mode(mode: &MechMode, temperature: f64, sample_rate: f64, duration: f64, seed: u64) -> Self {
        LangevinParams {
            frequency: mode.frequency,
            q: mode.q,
            m_eff: mode.m_eff,
            temperature,
            sample_rate,
            duration,
            rng_seed: seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.frequency > 0.0) || !(self.q > 0.0) || !(self.m_eff > 0.0) {
            return Err(Error::Domain(
                "frequency, Q, and effective mass must be positive".into(),
            ));
        }
        if self.temperature < 0.0 {
            return Err(Error::Domain("temperature must be non-negative".into()));
        }
        if !(self.sample_rate > 10.0 * self.frequency) {
            return Err(Error::Domain(format!(
                "sample_rate {} does not resolve the oscillation; need > 10 f = {}",
                self.sample_rate,
                10.0 * self.frequency
            )));
        }
        if !(self.duration > 0.0) {
            return Err(Error::Domain("duration must be positive".into()));
        }
        let gamma_ang = 2.0 * std::f64::consts::PI * self.frequency / self.q;
        let dt = 1.0 / self.sample_rate;
        if gamma_ang * dt > 0.1 {
            return Err(Error::Domain(format!(
                "gamma' * dt = {:.3} > 0.1: damping is unresolved; raise sample_rate or Q",
                gamma_ang * dt
            )));
        }
        Ok(())
    }
}

/// A sampled time series with its rate and any generation warnings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub sample_rate: f64,
    pub samples: Vec<f64>,
    pub warnings: Vec<String>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn variance(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        let mean = self.samples.iter().sum::<f64>() / self.samples.len() as f64;
        self.samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>()
            / self.samples.len() as f64
    }
}

/// Generate one displacement trajectory alpha(t) in meters.
pub fn langevin_trajectory(params: &LangevinParams) -> Result<Trajectory> {
    params.validate()?;

    let n = (params.duration * params.sample_rate).round() as usize;
    if n == 0 {
        return Err(Error::Domain("duration too short for one sample".into()));
    }

    let omega = 2.0 * std::f64::consts::PI * params.frequency;
    let gamma_ang = omega / params.q;
    let dt = 1.0 / params.sample_rate;

    let mut warnings = Vec::new();
    let gamma_hz = params.frequency / params.q;
    if params.duration * gamma_hz < 10.0 {
        warnings.push(format!(
            "duration * gamma = {:.2} < 10: spectral estimates from this trajectory will be noisy",
            params.duration * gamma_hz
        ));
    }

    // Stationary displacement variance from equipartition.
    let var_alpha = BOLTZMANN * params.temperature / (params.m_eff * omega * omega);
    let decay = (-0.5 * gamma_ang * dt).exp();
    let step = Complex64::from_polar(decay, -omega * dt);
    // <|a|^2> = 2 var_alpha in the stationary state.
    let inject = ((1.0 - decay * decay) * var_alpha).sqrt();
    let sigma0 = var_alpha.sqrt();

    let mut rng = ChaCha12Rng::seed_from_u64(params.rng_seed);
    let normal = StandardNormal;
    let draw = |rng: &mut ChaCha12Rng| -> f64 { normal.sample(rng) };

    let mut a = Complex64::new(sigma0 * draw(&mut rng), sigma0 * draw(&mut rng));
    let mut samples = Vec::with_capacity(n);
    for _ in 0..n {
        samples.push(a.re);
        let g = Complex64::new(draw(&mut rng), draw(&mut rng));
        a = step * a + inject * g;
    }

    Ok(Trajectory {
        sample_rate: params.sample_rate,
        samples,
        warnings,
    })
}
