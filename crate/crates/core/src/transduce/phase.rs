//! Dispersive phase transduction: mode-shape overlap with the transduction
//! factor xi and the linear/quadratic gain model.
//!
//! For a sine mode the accumulated differential phase over the structure is
//! `2 L xi / (p pi)` per meter of amplitude for odd p and exactly zero for
//! even p: the odd antinodes of an even mode cancel pairwise along the
//! propagation path.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mech::MechMode;

/// Optical probe and homodyne receiver parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    /// Probe optical frequency, Hz.
    pub optical_frequency: f64,
    /// Detected probe power, W.
    pub power_out: f64,
    /// Local-oscillator power, W.
    pub power_lo: f64,
    /// Quadrature angle theta: pi/2 reads phase, 0 reads amplitude.
    pub quadrature_theta: f64,
    /// Homodyne fringe visibility in [0, 1].
    pub visibility: f64,
    /// White detection noise floor referenced to probe phase, rad^2/Hz.
    pub noise_floor_psd: f64,
}

impl ProbeConfig {
    pub fn reference_device() -> Self {
        ProbeConfig {
            optical_frequency: 334.96e12,
            power_out: 10e-6,
            power_lo: 0.5e-3,
            quadrature_theta: std::f64::consts::FRAC_PI_2,
            visibility: 0.95,
            noise_floor_psd: 1e-14,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.power_out < 0.0 || self.power_lo < 0.0 {
            return Err(Error::Validation("powers must be non-negative".into()));
        }
        if !(0.0..=1.0).contains(&self.visibility) {
            return Err(Error::Validation("visibility must lie in [0, 1]".into()));
        }
        if self.noise_floor_psd < 0.0 {
            return Err(Error::Validation("noise floor must be non-negative".into()));
        }
        if !(self.optical_frequency > 0.0) {
            return Err(Error::Validation("optical frequency must be positive".into()));
        }
        Ok(())
    }

    /// Fringe amplitude of the balanced difference current (the calibration
    /// slope that converts detector units back to radians).
    pub fn fringe_amplitude(&self) -> f64 {
        self.visibility * (self.power_out * self.power_lo).sqrt()
    }
}

/// Which transduction mechanism maps motion to the probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Far from the band edge: motion phase-modulates the guided probe.
    Dispersive,
    /// Near the band edge: motion shifts a cavity-like resonance.
    BandEdge,
}

/// Per-mode gains mapping generalized amplitudes to the optical observable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransductionModel {
    pub regime: Regime,
    /// Per-mode linear gain: rad/m in the dispersive regime, Hz/m near the
    /// band edge.
    pub linear_gain: Vec<f64>,
    /// Quadratic resonance-shift gain, Hz/m^2 (band-edge regime only).
    pub quadratic_gain: f64,
}

impl TransductionModel {
    /// Dispersive model built from sampled mode shapes: the per-mode gain is
    /// the shape overlap with xi times `gap_factor` (2 for anti-phase beam
    /// motion, where the gap changes by twice the per-mode amplitude).
    /// Overlaps that vanish to quadrature noise (even antisymmetric modes)
    /// are snapped to exactly zero.
    pub fn dispersive_from_modes(modes: &[MechMode], xi: f64, gap_factor: f64) -> Self {
        let raw: Vec<f64> = modes.iter().map(|m| phase_overlap(&m.shape, xi)).collect();
        let peak = raw.iter().map(|w| w.abs()).fold(0.0, f64::max);
        let linear_gain = raw
            .iter()
            .map(|w| {
                if w.abs() < 1e-10 * peak {
                    0.0
                } else {
                    gap_factor * *w
                }
            })
            .collect();
        TransductionModel {
            regime: Regime::Dispersive,
            linear_gain,
            quadratic_gain: 0.0,
        }
    }

    pub fn band_edge(linear_gain: Vec<f64>, quadratic_gain: f64) -> Self {
        TransductionModel {
            regime: Regime::BandEdge,
            linear_gain,
            quadratic_gain,
        }
    }
}

/// Accumulated probe phase per meter of mode amplitude: the quadrature of
/// `xi * u(x)` along the structure, rad/m.
pub fn phase_overlap(shape: &[(f64, f64)], xi: f64) -> f64 {
    let mut acc = 0.0;
    for w in shape.windows(2) {
        let (x0, u0) = w[0];
        let (x1, u1) = w[1];
        acc += 0.5 * (u0 + u1) * (x1 - x0);
    }
    xi * acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mech::sine_shape;
    use approx::assert_relative_eq;

    const L: f64 = 107e-6;

    #[test]
    fn odd_modes_accumulate_2l_over_p_pi() {
        let xi = 9.12e11;
        for p in [1usize, 3, 5] {
            let shape = sine_shape(p, L, 4001);
            let w = phase_overlap(&shape, xi);
            let expect = 2.0 * L * xi / (p as f64 * std::f64::consts::PI);
            assert_relative_eq!(w, expect, max_relative = 1e-4);
        }
    }

    #[test]
    fn even_modes_cancel() {
        let xi = 9.12e11;
        let odd = phase_overlap(&sine_shape(1, L, 4001), xi);
        for p in [2usize, 4, 6] {
            let w = phase_overlap(&sine_shape(p, L, 4001), xi);
            assert!(
                w.abs() < 1e-10 * odd.abs(),
                "p = {p}: residual {w} vs odd {odd}"
            );
        }
    }

    #[test]
    fn p3_is_one_third_of_p1() {
        let xi = 1.0;
        let w1 = phase_overlap(&sine_shape(1, L, 8001), xi);
        let w3 = phase_overlap(&sine_shape(3, L, 8001), xi);
        assert_relative_eq!(w3, w1 / 3.0, max_relative = 1e-4);
    }

    #[test]
    fn thermal_phase_prediction_with_calibrated_xi() {
        // xi chosen so a 64.4 pm amplitude of the fundamental produces the
        // modeled 4e-3 rad rms phase excursion.
        let target = 4e-3;
        let amplitude = 64.4e-12;
        let xi = target * std::f64::consts::PI / (2.0 * L * amplitude);
        let w = phase_overlap(&sine_shape(1, L, 8001), xi);
        assert_relative_eq!(w * amplitude, target, max_relative = 1e-4);
    }

    #[test]
    fn dispersive_model_zeroes_even_gains() {
        let spec = crate::mech::BeamSpec::reference_device();
        let modes = crate::mech::analytic_modes(&spec, 4).unwrap();
        let model = TransductionModel::dispersive_from_modes(&modes, 1e12, 2.0);
        assert!(model.linear_gain[0] > 0.0);
        assert_eq!(model.linear_gain[1], 0.0);
        assert!(model.linear_gain[2] > 0.0);
        assert_eq!(model.linear_gain[3], 0.0);
        let single = TransductionModel::dispersive_from_modes(&modes, 1e12, 1.0);
        assert_relative_eq!(
            model.linear_gain[0],
            2.0 * single.linear_gain[0],
            max_relative = 1e-12
        );
    }

    #[test]
    fn probe_validation() {
        let mut p = ProbeConfig::reference_device();
        p.visibility = 1.2;
        assert!(p.validate().is_err());
        let mut p = ProbeConfig::reference_device();
        p.power_lo = -1.0;
        assert!(p.validate().is_err());
    }
}
