//! Figure-of-merit block for motion readout at and below the standard
//! quantum limit: zero-point amplitude, linewidth, thermal occupation, the
//! Q·f ground-state criterion, and shot-noise-limited imprecision, with the
//! reference device's measured benchmarks alongside for comparison.

use serde::{Deserialize, Serialize};

use crate::constants::PLANCK;
use crate::error::{Error, Result};
use crate::mech::{thermal_amplitude, MechMode};
use crate::noise::psd::{force_sensitivity, thermal_position_instability};

/// Q·f product needed to keep thermal decoherence below one phonon per
/// oscillation period at room temperature.
pub const GROUND_STATE_QF_HZ: f64 = 6e12;

/// Measured benchmarks of the reference device, for side-by-side display.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceBenchmarks {
    pub frequency_hz: f64,
    pub alpha_zp_m: f64,
    pub n_bar_thermal: f64,
    pub alpha_th_m: f64,
    pub force_asd_n_rthz: f64,
    pub position_asd_m_rthz: f64,
    pub linewidth_hz: f64,
    pub coupling_hz: f64,
}

impl ReferenceBenchmarks {
    pub const fn device() -> Self {
        ReferenceBenchmarks {
            frequency_hz: 2.3844e6,
            alpha_zp_m: 14.7e-15,
            n_bar_thermal: 2.6e6,
            alpha_th_m: 33.5e-12,
            force_asd_n_rthz: 143e-18,
            position_asd_m_rthz: 3.8e-12,
            linewidth_hz: 24.0,
            coupling_hz: 900e3,
        }
    }
}

/// Optical probe parameters needed for the shot-noise imprecision estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeReadout {
    /// Detected probe power, W.
    pub power: f64,
    /// Optical frequency, Hz.
    pub optical_frequency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SqlReport {
    pub temperature: f64,
    pub probe_power: f64,
    pub mode_frequency: f64,
    pub quality_factor: f64,
    pub m_eff: f64,
    pub alpha_zp: f64,
    /// Full mechanical linewidth f/Q, Hz.
    pub gamma: f64,
    pub n_bar_thermal: f64,
    pub alpha_th_rms: f64,
    /// sqrt(S_FF), N/rtHz (symmetrized convention).
    pub force_asd: f64,
    /// sqrt(S_yy(f_p)), m/rtHz (symmetrized convention).
    pub position_asd: f64,
    pub qf_product: f64,
    pub qf_threshold: f64,
    pub ground_state_criterion_met: bool,
    /// Factor by which Q falls short of (or exceeds, if < 1) the criterion.
    pub qf_shortfall: f64,
    /// One-sided shot-noise phase PSD floor h nu / (2 P), rad^2/Hz.
    pub shot_phase_psd: Option<f64>,
    /// Phase-to-displacement transduction used for imprecision, rad/m.
    pub transduction_rad_per_m: Option<f64>,
    /// Shot-noise displacement imprecision, m/rtHz.
    pub imprecision_asd: Option<f64>,
    /// Bandwidth over which the shot-noise-limited readout integrates to one
    /// zero-point amplitude, Hz.
    pub zp_resolution_bandwidth: Option<f64>,
    pub benchmarks: ReferenceBenchmarks,
}

/// Build the report for one mode. The shot-noise-limited phase sensitivity is
/// parameterized by a caller-supplied transduction coefficient (rad of probe
/// phase per meter of mode amplitude) rather than recomputed from first
/// principles here; pass `None` to omit the imprecision block.
pub fn sql_report(
    mode: &MechMode,
    probe: ProbeReadout,
    temperature: f64,
    transduction_rad_per_m: Option<f64>,
) -> Result<SqlReport> {
    if !(probe.power >= 0.0) || !(probe.optical_frequency > 0.0) {
        return Err(Error::Domain(
            "probe power must be non-negative and optical frequency positive".into(),
        ));
    }
    let th = thermal_amplitude(mode.m_eff, mode.frequency, temperature)?;
    let qf = mode.q * mode.frequency;
    let shortfall = GROUND_STATE_QF_HZ / qf;

    let shot_phase_psd = if probe.power > 0.0 {
        Some(PLANCK * probe.optical_frequency / (2.0 * probe.power))
    } else {
        None
    };
    let (imprecision_asd, zp_rbw) = match (shot_phase_psd, transduction_rad_per_m) {
        (Some(s_phi), Some(w)) if w > 0.0 => {
            let imp = s_phi.sqrt() / w;
            let bw = (mode.alpha_zp / imp).powi(2);
            (Some(imp), Some(bw))
        }
        _ => (None, None),
    };

    Ok(SqlReport {
        temperature,
        probe_power: probe.power,
        mode_frequency: mode.frequency,
        quality_factor: mode.q,
        m_eff: mode.m_eff,
        alpha_zp: mode.alpha_zp,
        gamma: mode.gamma(),
        n_bar_thermal: th.n_bar,
        alpha_th_rms: th.classical_rms,
        force_asd: force_sensitivity(mode, temperature)?,
        position_asd: thermal_position_instability(mode, temperature)?,
        qf_product: qf,
        qf_threshold: GROUND_STATE_QF_HZ,
        ground_state_criterion_met: qf >= GROUND_STATE_QF_HZ,
        qf_shortfall: shortfall,
        shot_phase_psd,
        transduction_rad_per_m,
        imprecision_asd,
        zp_resolution_bandwidth: zp_rbw,
        benchmarks: ReferenceBenchmarks::device(),
    })
}

impl SqlReport {
    /// Human-readable block, one figure per line.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let b = &self.benchmarks;
        s.push_str(&format!(
            "mode: f = {:.6e} Hz, Q = {:.3e}, m_eff = {:.4e} kg, T = {} K\n",
            self.mode_frequency, self.quality_factor, self.m_eff, self.temperature
        ));
        s.push_str(&format!(
            "alpha_zp            = {:.4e} m        (benchmark {:.4e})\n",
            self.alpha_zp, b.alpha_zp_m
        ));
        s.push_str(&format!(
            "gamma = f/Q         = {:.4e} Hz       (benchmark {:.1})\n",
            self.gamma, b.linewidth_hz
        ));
        s.push_str(&format!(
            "n_bar thermal       = {:.4e}          (benchmark {:.2e})\n",
            self.n_bar_thermal, b.n_bar_thermal
        ));
        s.push_str(&format!(
            "alpha_th rms        = {:.4e} m        (benchmark {:.4e})\n",
            self.alpha_th_rms, b.alpha_th_m
        ));
        s.push_str(&format!(
            "sqrt(S_FF)          = {:.4e} N/rtHz   (benchmark {:.3e})\n",
            self.force_asd, b.force_asd_n_rthz
        ));
        s.push_str(&format!(
            "sqrt(S_yy(f_p))     = {:.4e} m/rtHz   (benchmark {:.2e}, symmetrized)\n",
            self.position_asd, b.position_asd_m_rthz
        ));
        s.push_str(&format!(
            "Q*f                 = {:.4e} Hz vs {:.1e} Hz: {}",
            self.qf_product,
            self.qf_threshold,
            if self.ground_state_criterion_met {
                "ground-state criterion MET".to_string()
            } else {
                format!("short by {:.1}x", self.qf_shortfall)
            }
        ));
        s.push('\n');
        if let (Some(imp), Some(bw)) = (self.imprecision_asd, self.zp_resolution_bandwidth) {
            s.push_str(&format!(
                "shot imprecision    = {:.4e} m/rtHz; alpha_zp resolved in {:.3e} Hz bandwidth (gamma = {:.3e} Hz)\n",
                imp, bw, self.gamma
            ));
        }
        s
    }
}
