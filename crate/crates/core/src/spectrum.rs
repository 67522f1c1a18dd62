//! Frequency-grid spectral records with declared units.
//!
//! All spectral densities in this crate are one-sided in positive frequency
//! unless a function explicitly says otherwise: integrating a record over its
//! frequency grid recovers the signal's mean-square value. This matters
//! because the symmetrized (two-sided) convention differs by a factor of two
//! and silently mixing the two is a classic error; see
//! [`crate::noise::thermal_position_instability`] for the one place the
//! symmetrized value is quoted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Units of the PSD values on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PsdUnits {
    /// Displacement PSD, m^2/Hz.
    MeterSquaredPerHz,
    /// Phase PSD, rad^2/Hz.
    RadianSquaredPerHz,
    /// Force PSD, N^2/Hz.
    NewtonSquaredPerHz,
    /// Detector output PSD, V^2/Hz.
    VoltSquaredPerHz,
    /// Normalized difference-current PSD, 1/Hz.
    DimensionlessPerHz,
}

impl std::fmt::Display for PsdUnits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PsdUnits::MeterSquaredPerHz => "m^2/Hz",
            PsdUnits::RadianSquaredPerHz => "rad^2/Hz",
            PsdUnits::NewtonSquaredPerHz => "N^2/Hz",
            PsdUnits::VoltSquaredPerHz => "V^2/Hz",
            PsdUnits::DimensionlessPerHz => "1/Hz",
        };
        write!(f, "{s}")
    }
}

/// A one-sided power spectral density on a uniform frequency grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    /// Frequency grid, Hz, strictly ascending with uniform spacing.
    pub freqs: Vec<f64>,
    /// PSD values, elementwise non-negative.
    pub psd: Vec<f64>,
    /// Resolution bandwidth (grid spacing), Hz.
    pub resolution_bandwidth: f64,
    pub units: PsdUnits,
    /// Acquisition parameters and warnings, ordered for reproducible output.
    pub metadata: BTreeMap<String, String>,
}

impl SpectrumRecord {
    pub fn new(freqs: Vec<f64>, psd: Vec<f64>, units: PsdUnits) -> Result<Self> {
        let rbw = if freqs.len() >= 2 { freqs[1] - freqs[0] } else { 0.0 };
        let rec = SpectrumRecord {
            freqs,
            psd,
            resolution_bandwidth: rbw,
            units,
            metadata: BTreeMap::new(),
        };
        rec.validate()?;
        Ok(rec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.freqs.len() != self.psd.len() {
            return Err(Error::Validation(
                "frequency grid and PSD lengths differ".into(),
            ));
        }
        if self.freqs.len() < 2 {
            return Err(Error::Validation("spectrum needs at least two points".into()));
        }
        let df = self.freqs[1] - self.freqs[0];
        if !(df > 0.0) {
            return Err(Error::Validation("frequency grid must ascend".into()));
        }
        for w in self.freqs.windows(2) {
            let step = w[1] - w[0];
            if !(step > 0.0) || (step - df).abs() > 1e-6 * df {
                return Err(Error::Validation(
                    "frequency grid must be uniformly spaced".into(),
                ));
            }
        }
        if self.psd.iter().any(|&v| v < 0.0 || !v.is_finite()) {
            return Err(Error::Validation(
                "PSD values must be finite and non-negative".into(),
            ));
        }
        Ok(())
    }

    /// Trapezoidal integral of the PSD over the grid (mean-square units).
    pub fn integral(&self) -> f64 {
        let mut acc = 0.0;
        for i in 1..self.freqs.len() {
            acc += 0.5 * (self.psd[i] + self.psd[i - 1]) * (self.freqs[i] - self.freqs[i - 1]);
        }
        acc
    }

    /// Sum of PSD bins times the bin width (the discrete Parseval sum).
    pub fn bin_sum(&self) -> f64 {
        self.psd.iter().sum::<f64>() * self.resolution_bandwidth
    }

    /// Integrated power in `[f_lo, f_hi]`.
    pub fn band_power(&self, f_lo: f64, f_hi: f64) -> f64 {
        self.freqs
            .iter()
            .zip(&self.psd)
            .filter(|(f, _)| **f >= f_lo && **f <= f_hi)
            .map(|(_, p)| p * self.resolution_bandwidth)
            .sum()
    }

    /// Grid point with the largest PSD value, `(frequency, psd)`.
    pub fn peak(&self) -> (f64, f64) {
        let mut best = (self.freqs[0], self.psd[0]);
        for (f, p) in self.freqs.iter().zip(&self.psd) {
            if *p > best.1 {
                best = (*f, *p);
            }
        }
        best
    }

    /// Largest PSD value within `[f_lo, f_hi]`, `(frequency, psd)`.
    pub fn peak_in_band(&self, f_lo: f64, f_hi: f64) -> Option<(f64, f64)> {
        self.freqs
            .iter()
            .zip(&self.psd)
            .filter(|(f, _)| **f >= f_lo && **f <= f_hi)
            .map(|(f, p)| (*f, *p))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
    }
}
