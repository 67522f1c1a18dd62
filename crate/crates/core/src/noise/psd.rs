//! Thermomechanical displacement and force noise of a damped mode.

use std::f64::consts::PI;

use crate::constants::BOLTZMANN;
use crate::error::{Error, Result};
use crate::mech::MechMode;
use crate::spectrum::{PsdUnits, SpectrumRecord};

/// One-sided displacement PSD of a thermally driven, velocity-damped mode,
///
/// ```text
/// S(f) = (4 kT gamma' / m_eff) / ((omega^2 - omega_p^2)^2 + (gamma' omega)^2)
/// ```
///
/// with `gamma' = omega_p / Q` in angular units. The curve integrates to the
/// equipartition variance `kT / (m_eff omega_p^2)` and peaks on resonance at
/// `4 kT Q / (m_eff omega_p^3)` — twice the symmetrized on-resonance value
/// reported by [`thermal_position_instability`].
///
/// A metadata warning is set when the grid does not cover `f_p ± 5 gamma`.
pub fn displacement_psd(mode: &MechMode, temperature: f64, freqs: &[f64]) -> Result<SpectrumRecord> {
    if !(temperature > 0.0) {
        return Err(Error::Domain("temperature must be positive".into()));
    }
    let omega_p = 2.0 * PI * mode.frequency;
    let gamma_ang = omega_p / mode.q;
    let num = 4.0 * BOLTZMANN * temperature * gamma_ang / mode.m_eff;

    let psd: Vec<f64> = freqs
        .iter()
        .map(|&f| {
            let omega = 2.0 * PI * f;
            let det = omega * omega - omega_p * omega_p;
            num / (det * det + (gamma_ang * omega).powi(2))
        })
        .collect();

    let mut rec = SpectrumRecord::new(freqs.to_vec(), psd, PsdUnits::MeterSquaredPerHz)?;
    rec.metadata.insert("mode_frequency_Hz".into(), format!("{:.6e}", mode.frequency));
    rec.metadata.insert("quality_factor".into(), format!("{:.6e}", mode.q));
    rec.metadata.insert("m_eff_kg".into(), format!("{:.6e}", mode.m_eff));
    rec.metadata.insert("temperature_K".into(), format!("{temperature}"));
    rec.metadata.insert("sided".into(), "one-sided".into());

    let gamma_hz = mode.gamma();
    let lo = mode.frequency - 5.0 * gamma_hz;
    let hi = mode.frequency + 5.0 * gamma_hz;
    if freqs[0] > lo || *freqs.last().unwrap() < hi {
        rec.metadata.insert(
            "warning".into(),
            "grid does not cover f_p +- 5 linewidths; integrals will be biased".into(),
        );
    }
    Ok(rec)
}

/// Thermomechanical force sensitivity `sqrt(4 pi m_eff f k_B T / Q)`, N/rtHz.
///
/// This is the symmetrized (two-sided) thermal force density; the one-sided
/// Langevin force PSD is twice its square.
pub fn force_sensitivity(mode: &MechMode, temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(Error::Domain("temperature must be positive".into()));
    }
    Ok((4.0 * PI * mode.m_eff * mode.frequency * BOLTZMANN * temperature / mode.q).sqrt())
}

/// On-resonance thermal position instability `sqrt(2 k_B T Q / (m_eff omega^3))`,
/// m/rtHz.
///
/// Symmetrized (two-sided) convention, matching the usual quoted figure of
/// merit; the one-sided Lorentzian of [`displacement_psd`] peaks at twice
/// the squared value.
pub fn thermal_position_instability(mode: &MechMode, temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(Error::Domain("temperature must be positive".into()));
    }
    let omega = 2.0 * PI * mode.frequency;
    Ok((2.0 * BOLTZMANN * temperature * mode.q / (mode.m_eff * omega.powi(3))).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mech::{zero_point_amplitude, ModeFamily};
    use approx::assert_relative_eq;

    pub(crate) fn reference_mode() -> MechMode {
        let f = 2.3844e6;
        let m_eff = 16.3e-15;
        MechMode {
            index: 1,
            family: ModeFamily::YA,
            frequency: f,
            shape: vec![(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)],
            m_eff,
            alpha_zp: zero_point_amplitude(m_eff, f).unwrap(),
            alpha_th_rms: 33.5e-12,
            temperature: 300.0,
            q: 1e5,
        }
    }

    fn lorentzian_grid(mode: &MechMode, half_widths: f64, n: usize) -> Vec<f64> {
        let gamma = mode.gamma();
        let lo = mode.frequency - half_widths * gamma;
        let hi = mode.frequency + half_widths * gamma;
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn symmetrized_peak_matches_reference_figure() {
        let mode = reference_mode();
        let asd = thermal_position_instability(&mode, 300.0).unwrap();
        assert_relative_eq!(asd, 3.8e-12, max_relative = 0.05);
    }

    #[test]
    fn one_sided_peak_is_twice_the_symmetrized_psd() {
        let mode = reference_mode();
        let freqs = lorentzian_grid(&mode, 3.0, 20_001);
        let rec = displacement_psd(&mode, 300.0, &freqs).unwrap();
        let (fpk, peak) = rec.peak();
        assert_relative_eq!(fpk, mode.frequency, max_relative = 1e-4);
        let symmetrized = thermal_position_instability(&mode, 300.0).unwrap().powi(2);
        assert_relative_eq!(peak, 2.0 * symmetrized, max_relative = 1e-3);
    }

    #[test]
    fn integral_closes_to_equipartition_variance() {
        let mode = reference_mode();
        let freqs = lorentzian_grid(&mode, 50.0, 400_001);
        let rec = displacement_psd(&mode, 300.0, &freqs).unwrap();
        let variance = rec.integral();
        // Thermal amplitude is 33.5 pm for these parameters.
        assert_relative_eq!(variance.sqrt(), 33.5e-12, max_relative = 0.02);
    }

    #[test]
    fn lorentzian_area_is_q_independent() {
        let mode = reference_mode();
        let mut areas = Vec::new();
        for q in [1e3, 1e4, 1e5] {
            let mut m = mode.clone();
            m.q = q;
            let freqs = lorentzian_grid(&m, 80.0, 200_001);
            let rec = displacement_psd(&m, 300.0, &freqs).unwrap();
            let (_, peak) = rec.peak();
            let width = m.gamma();
            areas.push((peak * width, rec.integral()));
        }
        for (pw, _) in &areas {
            assert_relative_eq!(*pw, areas[0].0, max_relative = 0.05);
        }
        for (_, int) in &areas {
            assert_relative_eq!(*int, areas[0].1, max_relative = 0.05);
        }
    }

    #[test]
    fn narrow_grid_sets_warning() {
        let mode = reference_mode();
        let freqs = lorentzian_grid(&mode, 2.0, 101);
        let rec = displacement_psd(&mode, 300.0, &freqs).unwrap();
        assert!(rec.metadata.contains_key("warning"));
        let wide = lorentzian_grid(&mode, 8.0, 101);
        let rec = displacement_psd(&mode, 300.0, &wide).unwrap();
        assert!(!rec.metadata.contains_key("warning"));
    }

    #[test]
    fn force_sensitivity_reference_value_and_scalings() {
        let mode = reference_mode();
        let s = force_sensitivity(&mode, 300.0).unwrap();
        assert_relative_eq!(s, 143e-18, max_relative = 0.02);

        let mut better = mode.clone();
        better.q *= 4.0;
        let s4 = force_sensitivity(&better, 300.0).unwrap();
        assert_relative_eq!(s4, s / 2.0, max_relative = 1e-12);

        // Comparison window against a much heavier membrane-style resonator.
        assert!(s > 55e-18 && s < 4.0 * 55e-18);
    }
}
