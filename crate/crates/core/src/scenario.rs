//! Turning a scenario config into the working mode set.
//!
//! The in-plane antisymmetric ladder is computed from the 1D beam model and,
//! when a measured fundamental is injected through `modes_override`, rescaled
//! so the ladder anchors to it. Other family overrides become standalone
//! fundamental modes carrying their injected frequencies.

use crate::config::ScenarioConfig;
use crate::error::Result;
use crate::mech::{
    analytic_modes, fem_eigenmodes, thermal_amplitude, zero_point_amplitude, BoundaryCondition,
    MechMode, ModeFamily,
};

/// The mode set a scenario drives.
#[derive(Debug, Clone)]
pub struct ScenarioModes {
    /// Gap-changing in-plane antisymmetric ladder, p = 1..p_max.
    pub ladder: Vec<MechMode>,
    /// Other-family fundamentals injected via overrides.
    pub extra: Vec<MechMode>,
}

/// Build the scenario mode set at the configured temperature.
pub fn scenario_modes(config: &ScenarioConfig, p_max: usize) -> Result<ScenarioModes> {
    let beam = &config.beam;
    let base = if beam.is_uniform() && beam.boundary == BoundaryCondition::HingedHinged {
        analytic_modes(beam, p_max)?
    } else {
        fem_eigenmodes(beam, p_max, (10 * p_max).max(200))?
    };

    let ya_override = config
        .modes_override
        .iter()
        .find(|m| m.family == ModeFamily::YA);
    let scale = match ya_override {
        Some(ovr) => ovr.frequency / base[0].frequency,
        None => 1.0,
    };

    let mut ladder = Vec::with_capacity(base.len());
    for (i, mode) in base.iter().enumerate() {
        let mut m = mode.clone();
        m.family = ModeFamily::YA;
        m.frequency *= scale;
        if let Some(ovr) = ya_override {
            m.q = ovr.quality_factor;
            if i == 0 {
                if let Some(m_eff) = ovr.m_eff {
                    m.m_eff = m_eff;
                }
            }
        }
        m.alpha_zp = zero_point_amplitude(m.m_eff, m.frequency)?;
        let th = thermal_amplitude(m.m_eff, m.frequency, config.temperature)?;
        m.alpha_th_rms = th.classical_rms;
        m.temperature = config.temperature;
        ladder.push(m);
    }

    let mut extra = Vec::new();
    for ovr in &config.modes_override {
        if ovr.family == ModeFamily::YA {
            continue;
        }
        let m_eff = ovr.m_eff.unwrap_or(base[0].m_eff);
        let alpha_zp = zero_point_amplitude(m_eff, ovr.frequency)?;
        let th = thermal_amplitude(m_eff, ovr.frequency, config.temperature)?;
        extra.push(MechMode {
            index: 1,
            family: ovr.family,
            frequency: ovr.frequency,
            shape: base[0].shape.clone(),
            m_eff,
            alpha_zp,
            alpha_th_rms: th.classical_rms,
            temperature: config.temperature,
            q: ovr.quality_factor,
        });
    }

    Ok(ScenarioModes { ladder, extra })
}

/// The in-plane antisymmetric fundamental used by the report and coupling
/// commands.
pub fn fundamental_mode(config: &ScenarioConfig) -> Result<MechMode> {
    let mut modes = scenario_modes(config, 1)?;
    Ok(modes.ladder.remove(0))
}
