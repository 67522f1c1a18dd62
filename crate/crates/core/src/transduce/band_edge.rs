//! Adiabatic cavity-like response of a band-edge resonance to mechanical
//! motion.
//!
//! The instantaneous resonance frequency follows the generalized displacement,
//!
//! ```text
//! nu_res(t) = nu_1 + sum_p g_p alpha_p(t) + (1/2) g_quad (sum_p alpha_p(t))^2
//! ```
//!
//! and the probe acquires the phase and amplitude of a single-pole Lorentzian
//! filter evaluated at the instantaneous detuning. The quadratic term
//! produces second harmonics and sum/difference intermodulation between
//! modes. The adiabatic evaluation assumes mechanical frequencies far below
//! the optical linewidth; a warning is attached when that is violated.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Band-edge cavity response parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandEdgeParams {
    /// Resonance frequency of the probed rung, Hz.
    pub resonance_nu1: f64,
    /// Full optical linewidth of the low-finesse resonance, Hz. The default
    /// 100 GHz is illustrative; the resonances are broad but no measured
    /// figure pins them.
    pub linewidth: f64,
    /// Quadratic resonance-shift gain, Hz/m^2.
    pub quadratic_gain: f64,
}

impl BandEdgeParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.resonance_nu1 > 0.0) || !(self.linewidth > 0.0) {
            return Err(Error::Validation(
                "resonance frequency and linewidth must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Probe phase and amplitude time series from the adiabatic cavity response.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CavityResponse {
    pub phase: Vec<f64>,
    pub amplitude: Vec<f64>,
    pub warnings: Vec<String>,
}

/// Evaluate the response for per-mode linear gains (Hz/m) and trajectories
/// sharing one sample grid. `mode_frequencies` is used only for the
/// adiabaticity check.
pub fn band_edge_response(
    params: &BandEdgeParams,
    linear_gain: &[f64],
    trajectories: &[&[f64]],
    mode_frequencies: &[f64],
    probe_nu: f64,
) -> Result<CavityResponse> {
    params.validate()?;
    if linear_gain.len() != trajectories.len() {
        return Err(Error::Domain(format!(
            "{} gains vs {} trajectories",
            linear_gain.len(),
            trajectories.len()
        )));
    }
    let n = trajectories.first().map(|t| t.len()).unwrap_or(0);
    if trajectories.iter().any(|t| t.len() != n) {
        return Err(Error::Domain("trajectories must share one sample grid".into()));
    }
    let detuning0 = probe_nu - params.resonance_nu1;
    if detuning0.abs() > 5.0 * params.linewidth {
        return Err(Error::Domain(format!(
            "probe sits {:.3e} Hz from the resonance; the cavity model only holds within a few \
             linewidths ({:.3e} Hz)",
            detuning0.abs(),
            params.linewidth
        )));
    }

    let mut warnings = Vec::new();
    if let Some(&f_max) = mode_frequencies
        .iter()
        .max_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal))
    {
        if f_max > 0.01 * params.linewidth {
            warnings.push(format!(
                "adiabatic approximation strained: mechanical frequency {f_max:.3e} Hz is not \
                 far below the optical linewidth {:.3e} Hz",
                params.linewidth
            ));
        }
    }

    let half = params.linewidth / 2.0;
    let mut phase = Vec::with_capacity(n);
    let mut amplitude = Vec::with_capacity(n);
    for i in 0..n {
        let mut alpha_sum = 0.0;
        let mut linear = 0.0;
        for (g, traj) in linear_gain.iter().zip(trajectories) {
            linear += g * traj[i];
            alpha_sum += traj[i];
        }
        let nu_res = params.resonance_nu1
            + linear
            + 0.5 * params.quadratic_gain * alpha_sum * alpha_sum;
        let x = (probe_nu - nu_res) / half;
        phase.push(x.atan());
        amplitude.push(1.0 / (1.0 + x * x).sqrt());
    }

    Ok(CavityResponse {
        phase,
        amplitude,
        warnings,
    })
}
