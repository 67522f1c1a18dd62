//! Welch averaged-periodogram PSD estimation.
//!
//! Hann-windowed, overlapping segments, one-sided PSD normalization: the sum
//! of PSD bins times the bin width equals the mean square of the input (the
//! discrete Parseval identity), so white noise of variance sigma^2 produces a
//! flat level of sigma^2 / (fs/2).

use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{Error, Result};
use crate::spectrum::{PsdUnits, SpectrumRecord};

/// Welch PSD of `series` sampled at `sample_rate`, with Hann windows of
/// `segment_length` samples overlapping by the fraction `overlap`.
pub fn welch_psd(
    series: &[f64],
    segment_length: usize,
    overlap: f64,
    sample_rate: f64,
    units: PsdUnits,
) -> Result<SpectrumRecord> {
    if segment_length < 8 {
        return Err(Error::Domain("segment_length must be at least 8".into()));
    }
    if series.len() < segment_length {
        return Err(Error::Domain(format!(
            "series of {} samples is shorter than one segment ({segment_length})",
            series.len()
        )));
    }
    if !(0.0..1.0).contains(&overlap) {
        return Err(Error::Domain("overlap must be in [0, 1)".into()));
    }
    if !(sample_rate > 0.0) {
        return Err(Error::Domain("sample_rate must be positive".into()));
    }

    let n = segment_length;
    let hop = ((n as f64) * (1.0 - overlap)).round().max(1.0) as usize;

    // Periodic Hann window.
    let window: Vec<f64> = (0..n)
        .map(|i| 0.5 * (1.0 - (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos()))
        .collect();
    let win_power: f64 = window.iter().map(|w| w * w).sum();

    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(n);

    let n_bins = n / 2 + 1;
    let mut acc = vec![0.0; n_bins];
    let mut n_segments = 0usize;
    let mut buf: Vec<Complex<f64>> = vec![Complex::new(0.0, 0.0); n];

    let mut start = 0;
    while start + n <= series.len() {
        for i in 0..n {
            buf[i] = Complex::new(series[start + i] * window[i], 0.0);
        }
        fft.process(&mut buf);
        for k in 0..n_bins {
            acc[k] += buf[k].norm_sqr();
        }
        n_segments += 1;
        start += hop;
    }

    let scale = 1.0 / (sample_rate * win_power * n_segments as f64);
    let psd: Vec<f64> = acc
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let one_sided = if k == 0 || (n.is_multiple_of(2) && k == n_bins - 1) {
                1.0
            } else {
                2.0
            };
            a * scale * one_sided
        })
        .collect();

    let df = sample_rate / n as f64;
    let freqs: Vec<f64> = (0..n_bins).map(|k| k as f64 * df).collect();

    let mut rec = SpectrumRecord::new(freqs, psd, units)?;
    rec.metadata.insert("estimator".into(), "welch-hann".into());
    rec.metadata.insert("segment_length".into(), n.to_string());
    rec.metadata.insert("overlap".into(), format!("{overlap}"));
    rec.metadata.insert("n_segments".into(), n_segments.to_string());
    rec.metadata.insert("enbw_bins".into(), "1.5".into());
    rec.metadata.insert("sided".into(), "one-sided".into());
    Ok(rec)
}

/// Map a spectrum-analyzer resolution bandwidth to the Welch segment length
/// `fs / rbw` (rounded to the nearest even count). The Hann ENBW makes the
/// effective bandwidth 1.5x the bin width; this mapping treats the RBW as the
/// bin width, which is the documented approximation.
pub fn segment_length_for_rbw(sample_rate: f64, rbw: f64) -> Result<usize> {
    if !(rbw > 0.0) || !(sample_rate > 0.0) {
        return Err(Error::Domain("rbw and sample_rate must be positive".into()));
    }
    let n = (sample_rate / rbw).round() as usize;
    Ok((n.max(8) + 1) & !1)
}
