//! Fourth-order Butterworth bandpass filtering, applied forward-then-backward
//! for zero phase distortion.
//!
//! The filter has four poles overall (a second-order lowpass prototype mapped
//! through the standard bandpass transformation), designed in the analog
//! domain and discretized by the bilinear transform with frequency
//! pre-warping. Gain is normalized to exactly one at the digital band center,
//! and the double (forward + backward) pass squares the magnitude response
//! while cancelling the phase.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// One biquad section, denominator normalized to a0 = 1.
#[derive(Debug, Clone, Copy)]
pub struct SosSection {
    pub b: [f64; 3],
    pub a: [f64; 2],
}

impl SosSection {
    /// Complex response at digital angular frequency `w` (rad/sample).
    fn response(&self, w: f64) -> Complex64 {
        let z1 = Complex64::from_polar(1.0, -w);
        let z2 = z1 * z1;
        let num = self.b[0] + self.b[1] * z1 + self.b[2] * z2;
        let den = Complex64::new(1.0, 0.0) + self.a[0] * z1 + self.a[1] * z2;
        num / den
    }
}

/// Designed bandpass filter: two biquad sections plus its design metadata.
#[derive(Debug, Clone)]
pub struct BandpassFilter {
    pub sections: Vec<SosSection>,
    pub f_lo: f64,
    pub f_hi: f64,
    pub sample_rate: f64,
}

impl BandpassFilter {
    /// Digital frequency (Hz) at which the single-pass gain is exactly one.
    pub fn center_frequency(&self) -> f64 {
        let omega0 = warp(self.f_lo, self.sample_rate).sqrt()
            * warp(self.f_hi, self.sample_rate).sqrt();
        2.0 * (omega0 / (2.0 * self.sample_rate)).atan() * self.sample_rate
            / (2.0 * std::f64::consts::PI)
    }

    /// Single-pass magnitude response at frequency `f` (Hz).
    pub fn gain(&self, f: f64) -> f64 {
        let w = 2.0 * std::f64::consts::PI * f / self.sample_rate;
        self.sections
            .iter()
            .map(|s| s.response(w).norm())
            .product()
    }

    /// Double-pass (zero-phase) power gain at frequency `f`.
    pub fn double_pass_power_gain(&self, f: f64) -> f64 {
        self.gain(f).powi(4)
    }

    fn run_cascade(&self, x: &mut [f64]) {
        for sec in &self.sections {
            let (b, a) = (sec.b, sec.a);
            let mut s1 = 0.0;
            let mut s2 = 0.0;
            for v in x.iter_mut() {
                let y = b[0] * *v + s1;
                s1 = b[1] * *v - a[0] * y + s2;
                s2 = b[2] * *v - a[1] * y;
                *v = y;
            }
        }
    }

    /// Zero-phase (forward-backward) application with odd-reflection padding
    /// long enough for the band-limited transient to settle.
    pub fn filtfilt(&self, series: &[f64]) -> Vec<f64> {
        let n = series.len();
        if n == 0 {
            return Vec::new();
        }
        let transient = (6.0 * self.sample_rate / (self.f_hi - self.f_lo)).ceil() as usize;
        let pad = transient.min(n - 1);

        let mut ext = Vec::with_capacity(n + 2 * pad);
        let first = series[0];
        let last = series[n - 1];
        for i in (1..=pad).rev() {
            ext.push(2.0 * first - series[i]);
        }
        ext.extend_from_slice(series);
        for i in 1..=pad {
            ext.push(2.0 * last - series[n - 1 - i]);
        }

        self.run_cascade(&mut ext);
        ext.reverse();
        self.run_cascade(&mut ext);
        ext.reverse();

        ext[pad..pad + n].to_vec()
    }
}

fn warp(f: f64, fs: f64) -> f64 {
    2.0 * fs * (std::f64::consts::PI * f / fs).tan()
}

/// Design the four-pole Butterworth bandpass for `[f_lo, f_hi]` at `fs`.
pub fn design_bandpass(f_lo: f64, f_hi: f64, sample_rate: f64) -> Result<BandpassFilter> {
    if !(f_lo > 0.0) || !(f_lo < f_hi) || !(f_hi < sample_rate / 2.0) {
        return Err(Error::Domain(format!(
            "band [{f_lo}, {f_hi}] must satisfy 0 < f_lo < f_hi < fs/2 = {}",
            sample_rate / 2.0
        )));
    }

    let w_lo = warp(f_lo, sample_rate);
    let w_hi = warp(f_hi, sample_rate);
    let omega0_sq = w_lo * w_hi;
    let bw = w_hi - w_lo;

    // Second-order lowpass prototype poles on the unit circle.
    let proto = [
        Complex64::from_polar(1.0, 3.0 * std::f64::consts::PI / 4.0),
        Complex64::from_polar(1.0, 5.0 * std::f64::consts::PI / 4.0),
    ];

    // Bandpass transform: each prototype pole yields two analog poles.
    let mut poles = Vec::with_capacity(4);
    for p in proto {
        let pb = p * bw;
        let disc = (pb * pb - 4.0 * omega0_sq).sqrt();
        poles.push((pb + disc) / 2.0);
        poles.push((pb - disc) / 2.0);
    }

    // Bilinear transform of the poles; zeros land at z = +1 and z = -1.
    let k = 2.0 * sample_rate;
    let zpoles: Vec<Complex64> = poles
        .iter()
        .map(|s| (Complex64::new(k, 0.0) + s) / (Complex64::new(k, 0.0) - s))
        .collect();

    // Pair conjugates into biquads (deterministic order: by real part).
    let mut upper: Vec<Complex64> = zpoles.iter().copied().filter(|p| p.im >= 0.0).collect();
    upper.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap_or(std::cmp::Ordering::Equal));
    if upper.len() != 2 {
        return Err(Error::Numerical(format!(
            "pole pairing failed: {} upper-half poles",
            upper.len()
        )));
    }

    let mut sections: Vec<SosSection> = upper
        .iter()
        .map(|p| SosSection {
            b: [1.0, 0.0, -1.0],
            a: [-2.0 * p.re, p.norm_sqr()],
        })
        .collect();

    // Normalize to unit gain at the digital band center.
    let w0_d = 2.0 * (omega0_sq.sqrt() / k).atan();
    let gain: f64 = sections.iter().map(|s| s.response(w0_d).norm()).product();
    if !(gain > 0.0) {
        return Err(Error::Numerical("degenerate passband gain".into()));
    }
    let correction = 1.0 / gain;
    for b in sections[0].b.iter_mut() {
        *b *= correction;
    }

    Ok(BandpassFilter {
        sections,
        f_lo,
        f_hi,
        sample_rate,
    })
}

/// Fourth-order Butterworth bandpass, forward-backward, zero phase.
pub fn butterworth_bandpass(
    series: &[f64],
    f_lo: f64,
    f_hi: f64,
    sample_rate: f64,
) -> Result<Vec<f64>> {
    let filter = design_bandpass(f_lo, f_hi, sample_rate)?;
    Ok(filter.filtfilt(series))
}

/// Analog-prototype squared magnitude of the double pass,
/// `1 / (1 + X^4)^2` with `X = (Omega^2 - Omega0^2) / (B Omega)`, evaluated
/// at the pre-warped frequencies. Used as an independent oracle for the
/// stopband attenuation of the digital filter.
pub fn analog_double_pass_power_gain(f: f64, f_lo: f64, f_hi: f64, sample_rate: f64) -> f64 {
    let w = warp(f, sample_rate);
    let w_lo = warp(f_lo, sample_rate);
    let w_hi = warp(f_hi, sample_rate);
    let omega0_sq = w_lo * w_hi;
    let bw = w_hi - w_lo;
    let x = (w * w - omega0_sq) / (bw * w);
    let single = 1.0 / (1.0 + x.powi(4));
    single * single
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const FS: f64 = 62.5e6;
    const F_LO: f64 = 2.3e6;
    const F_HI: f64 = 2.5e6;

    fn tone(f: f64, fs: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| (2.0 * std::f64::consts::PI * f * i as f64 / fs).sin())
            .collect()
    }

    /// Amplitude and phase of `x` at frequency `f` by quadrature projection
    /// over whole periods, skipping `skip` samples at each end.
    fn demod(x: &[f64], f: f64, fs: f64, skip: usize) -> (f64, f64) {
        let interior = &x[skip..x.len() - skip];
        let periods = ((interior.len() as f64) * f / fs).floor();
        let n_use = (periods * fs / f).round() as usize;
        let seg = &interior[..n_use];
        let mut cs = 0.0;
        let mut sn = 0.0;
        for (i, &v) in seg.iter().enumerate() {
            let ph = 2.0 * std::f64::consts::PI * f * (skip + i) as f64 / fs;
            cs += v * ph.cos();
            sn += v * ph.sin();
        }
        let a = 2.0 * (cs * cs + sn * sn).sqrt() / seg.len() as f64;
        (a, cs.atan2(sn))
    }

    #[test]
    fn center_tone_preserved_with_zero_phase() {
        let filt = design_bandpass(F_LO, F_HI, FS).unwrap();
        let fc = filt.center_frequency();
        let n = 400_000;
        let x = tone(fc, FS, n);
        let y = filt.filtfilt(&x);
        let skip = 40_000;
        let (a, phase) = demod(&y, fc, FS, skip);
        assert_relative_eq!(a, 1.0, max_relative = 2e-3);
        assert!(phase.abs() < 1e-3, "phase shift {phase}");
    }

    #[test]
    fn third_harmonic_attenuated_beyond_60_db() {
        let filt = design_bandpass(F_LO, F_HI, FS).unwrap();
        let fc = filt.center_frequency();
        let f3 = 3.0 * fc;
        let n = 300_000;
        let x = tone(f3, FS, n);
        let y = filt.filtfilt(&x);
        let skip = 50_000;
        let (a, _) = demod(&y, f3, FS, skip);
        let atten_db = -20.0 * a.log10();
        assert!(atten_db > 60.0, "attenuation only {atten_db} dB");

        // Cross-check the measured attenuation against the analog-prototype
        // double-pass response at the same frequency.
        let oracle = analog_double_pass_power_gain(f3, F_LO, F_HI, FS);
        let oracle_db = -10.0 * oracle.log10();
        assert!(
            (atten_db - oracle_db).abs() < 3.0,
            "time-domain {atten_db} dB vs analytic {oracle_db} dB"
        );
        // And against the digital transfer function directly.
        let tf_db = -10.0 * filt.double_pass_power_gain(f3).log10();
        assert!((atten_db - tf_db).abs() < 1.0);
    }

    #[test]
    fn dc_is_blocked() {
        let y = butterworth_bandpass(&vec![1.0; 100_000], F_LO, F_HI, FS).unwrap();
        let mean = y.iter().sum::<f64>() / y.len() as f64;
        assert!(mean.abs() < 1e-6, "residual DC {mean}");
    }

    #[test]
    fn double_pass_center_gain_within_1e3() {
        let filt = design_bandpass(F_LO, F_HI, FS).unwrap();
        let fc = filt.center_frequency();
        let g = filt.double_pass_power_gain(fc);
        assert!((g - 1.0).abs() < 1e-3, "double-pass power gain {g}");
    }

    #[test]
    fn linearity() {
        let n = 20_000;
        let x = tone(2.4e6, FS, n);
        let y: Vec<f64> = tone(2.41e6, FS, n);
        let (a, b) = (1.7, -0.6);
        let combined: Vec<f64> = x.iter().zip(&y).map(|(u, v)| a * u + b * v).collect();
        let fx = butterworth_bandpass(&x, F_LO, F_HI, FS).unwrap();
        let fy = butterworth_bandpass(&y, F_LO, F_HI, FS).unwrap();
        let fc = butterworth_bandpass(&combined, F_LO, F_HI, FS).unwrap();
        let scale = fc.iter().map(|v| v.abs()).fold(0.0, f64::max);
        for i in 0..n {
            let lin = a * fx[i] + b * fy[i];
            assert!(
                (fc[i] - lin).abs() <= 1e-10 * scale.max(1.0),
                "nonlinearity at {i}: {} vs {lin}",
                fc[i]
            );
        }
    }

    #[test]
    fn rejects_bands_outside_nyquist() {
        assert!(butterworth_bandpass(&[0.0; 10], 2.0e6, 1.0e6, FS).is_err());
        assert!(butterworth_bandpass(&[0.0; 10], 1.0e6, 40.0e6, FS).is_err());
        assert!(butterworth_bandpass(&[0.0; 10], 0.0, 1.0e6, FS).is_err());
    }
}
