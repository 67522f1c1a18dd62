//! Balanced-homodyne trace synthesis and rms phase metrology.
//!
//! The difference current of the balanced receiver is modeled as
//!
//! ```text
//! di(t) = A [ a(t) cos(theta + phi(t)) - cos(theta) ] + n(t)
//! ```
//!
//! with fringe amplitude `A = visibility sqrt(P_out P_LO)`, probe amplitude
//! response `a(t)` (unity in the dispersive regime), accumulated probe phase
//! `phi(t)`, and white detection noise whose PSD referenced to phase is the
//! configured floor. At `theta = pi/2` and small phase excursions,
//! `di = -A phi(t)` to first order.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::noise::{butterworth_bandpass, Trajectory};
use crate::transduce::band_edge::{band_edge_response, BandEdgeParams};
use crate::transduce::phase::{ProbeConfig, Regime, TransductionModel};

/// A synthesized detector trace in normalized difference-current units.
#[derive(Debug, Clone, PartialEq)]
pub struct HomodyneTrace {
    pub sample_rate: f64,
    pub samples: Vec<f64>,
    /// Calibration slope (fringe amplitude) for converting back to radians.
    pub fringe_amplitude: f64,
    pub warnings: Vec<String>,
}

/// Synthesize the balanced-homodyne difference current for a set of mode
/// trajectories sharing one sample grid.
///
/// In the dispersive regime `model.linear_gain` holds rad/m phase gains; near
/// the band edge it holds Hz/m resonance-shift gains and `band_edge` supplies
/// the cavity parameters. `mode_frequencies` feeds the adiabaticity check.
pub fn synth_homodyne_trace(
    trajectories: &[&Trajectory],
    model: &TransductionModel,
    probe: &ProbeConfig,
    band_edge: Option<&BandEdgeParams>,
    mode_frequencies: &[f64],
    noise_seed: u64,
) -> Result<HomodyneTrace> {
    probe.validate()?;
    if trajectories.is_empty() {
        return Err(Error::Domain("need at least one trajectory".into()));
    }
    if trajectories.len() != model.linear_gain.len() {
        return Err(Error::Domain(format!(
            "{} trajectories vs {} gains",
            trajectories.len(),
            model.linear_gain.len()
        )));
    }
    let fs = trajectories[0].sample_rate;
    let n = trajectories[0].samples.len();
    for t in trajectories {
        if t.sample_rate != fs || t.samples.len() != n {
            return Err(Error::Domain(
                "trajectories must share sample rate and length".into(),
            ));
        }
    }

    let mut warnings = Vec::new();
    let (phase, amplitude): (Vec<f64>, Vec<f64>) = match model.regime {
        Regime::Dispersive => {
            let mut phi = vec![0.0; n];
            for (g, t) in model.linear_gain.iter().zip(trajectories) {
                for (p, s) in phi.iter_mut().zip(&t.samples) {
                    *p += g * s;
                }
            }
            (phi, vec![1.0; n])
        }
        Regime::BandEdge => {
            let params = band_edge.ok_or_else(|| {
                Error::Domain("band-edge regime needs BandEdgeParams".into())
            })?;
            let mut params = *params;
            params.quadratic_gain = model.quadratic_gain;
            let series: Vec<&[f64]> = trajectories.iter().map(|t| t.samples.as_slice()).collect();
            let resp = band_edge_response(
                &params,
                &model.linear_gain,
                &series,
                mode_frequencies,
                probe.optical_frequency,
            )?;
            warnings.extend(resp.warnings);
            (resp.phase, resp.amplitude)
        }
    };

    let fringe = probe.fringe_amplitude();
    let theta = probe.quadrature_theta;
    let cos_theta = theta.cos();

    // White detection noise at the phase-referenced floor: one-sided PSD
    // noise_floor_psd means per-sample variance psd * fs / 2 in rad^2,
    // scaled by the fringe amplitude into detector units.
    let noise_sigma = fringe * (probe.noise_floor_psd * fs / 2.0).sqrt();
    let mut rng = ChaCha12Rng::seed_from_u64(noise_seed);
    let normal = StandardNormal;

    let samples: Vec<f64> = (0..n)
        .map(|i| {
            let signal = fringe * (amplitude[i] * (theta + phase[i]).cos() - cos_theta);
            let noise: f64 = if noise_sigma > 0.0 {
                let g: f64 = normal.sample(&mut rng);
                noise_sigma * g
            } else {
                0.0
            };
            signal + noise
        })
        .collect();

    Ok(HomodyneTrace {
        sample_rate: fs,
        samples,
        fringe_amplitude: fringe,
        warnings,
    })
}

/// Band-limited rms phase: bandpass the trace around `f_center`, take the
/// rms over the settled interior, and divide by the calibration slope.
pub fn rms_phase_estimate(
    trace: &[f64],
    sample_rate: f64,
    f_center: f64,
    half_band: f64,
    calibration: f64,
) -> Result<f64> {
    if calibration == 0.0 {
        return Err(Error::Domain(
            "zero calibration slope cannot convert to radians".into(),
        ));
    }
    let f_lo = f_center - half_band;
    let f_hi = f_center + half_band;
    if !(f_lo > 0.0) || !(f_hi < sample_rate / 2.0) {
        return Err(Error::Domain(format!(
            "band [{f_lo}, {f_hi}] must lie strictly inside (0, {})",
            sample_rate / 2.0
        )));
    }
    let filtered = butterworth_bandpass(trace, f_lo, f_hi, sample_rate)?;

    // Drop the filter's settling span at each end when the trace allows it.
    let transient = (6.0 * sample_rate / (f_hi - f_lo)).ceil() as usize;
    let interior = if filtered.len() > 4 * transient {
        &filtered[transient..filtered.len() - transient]
    } else {
        &filtered[..]
    };
    let ms = interior.iter().map(|v| v * v).sum::<f64>() / interior.len() as f64;
    Ok(ms.sqrt() / calibration.abs())
}
