//! Scenario configuration: one JSON document wiring beam, dispersion, probe,
//! and synthesis parameters together.
//!
//! The schema is strict (unknown keys are rejected so typos fail loudly) and
//! every dimensioned field accepts either a plain number in SI base units or
//! a string with an explicit unit suffix, converted at this boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mech::{BeamSpec, BoundaryCondition, CrossSectionSegment, ModeFamily, PhononicCellSpec, PhononicSegment};
use crate::optics::DispersionSpec;
use crate::transduce::ProbeConfig;
use crate::units::{Dimension, UnitValue};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenarioConfig {
    pub beam: RawBeam,
    #[serde(default)]
    pub dispersion: Option<RawDispersion>,
    #[serde(default)]
    pub probe: Option<RawProbe>,
    #[serde(default)]
    pub temperature: Option<UnitValue>,
    #[serde(default)]
    pub modes_override: Option<Vec<RawModeOverride>>,
    #[serde(default)]
    pub band_edge: Option<RawBandEdge>,
    #[serde(default)]
    pub spectrum: Option<RawSpectrum>,
    #[serde(default)]
    pub phononic: Option<RawPhononic>,
    #[serde(default)]
    pub outputs: Option<RawOutputs>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBeam {
    pub length: UnitValue,
    pub youngs_modulus: UnitValue,
    pub density: UnitValue,
    pub stress: UnitValue,
    pub cross_section: Vec<RawSegment>,
    #[serde(default)]
    pub pair_gap: Option<UnitValue>,
    #[serde(default)]
    pub boundary: Option<BoundaryCondition>,
    #[serde(default)]
    pub quality_factor: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSegment {
    pub x_start: UnitValue,
    pub width: UnitValue,
    pub thickness: UnitValue,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDispersion {
    pub nu_be: UnitValue,
    pub nu_be2: UnitValue,
    #[serde(default)]
    pub zeta: Option<UnitValue>,
    pub lattice_a: UnitValue,
    pub n_cells: usize,
    #[serde(default)]
    pub band_edge_gap_slope: Option<UnitValue>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawProbe {
    pub optical_frequency: UnitValue,
    pub power_out: UnitValue,
    pub power_lo: UnitValue,
    #[serde(default)]
    pub quadrature_theta: Option<UnitValue>,
    #[serde(default)]
    pub visibility: Option<f64>,
    #[serde(default)]
    pub noise_floor_psd: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModeOverride {
    pub family: ModeFamily,
    pub frequency: UnitValue,
    pub quality_factor: f64,
    #[serde(default)]
    pub m_eff: Option<UnitValue>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBandEdge {
    #[serde(default)]
    pub linewidth: Option<UnitValue>,
    #[serde(default)]
    pub quadratic_gain: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpectrum {
    #[serde(default)]
    pub sample_rate: Option<UnitValue>,
    #[serde(default)]
    pub duration: Option<UnitValue>,
    #[serde(default)]
    pub p_max: Option<usize>,
    #[serde(default)]
    pub rbw: Option<UnitValue>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPhononic {
    pub segments: Vec<RawPhononicSegment>,
    pub tension: UnitValue,
    #[serde(default)]
    pub f_max: Option<UnitValue>,
    #[serde(default)]
    pub n_q: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPhononicSegment {
    pub length: UnitValue,
    pub linear_mass_density: UnitValue,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOutputs {
    #[serde(default)]
    pub directory: Option<String>,
    #[serde(default)]
    pub formats: Option<Vec<String>>,
}

/// Per-mode injection of externally known family frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeOverride {
    pub family: ModeFamily,
    pub frequency: f64,
    pub quality_factor: f64,
    pub m_eff: Option<f64>,
}

/// Band-edge synthesis parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandEdgeConfig {
    /// Optical linewidth of the probed rung, Hz (illustrative default).
    pub linewidth: f64,
    /// Quadratic resonance-shift gain, Hz/m^2 (illustrative default).
    pub quadratic_gain: f64,
}

impl Default for BandEdgeConfig {
    fn default() -> Self {
        BandEdgeConfig {
            linewidth: 100e9,
            quadratic_gain: 1e29,
        }
    }
}

/// Trace-synthesis parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumParams {
    pub sample_rate: f64,
    pub duration: f64,
    pub p_max: usize,
    /// Welch resolution bandwidth, mapped to the segment length fs/rbw.
    pub rbw: f64,
}

impl Default for SpectrumParams {
    /// The sample rate must resolve the highest ladder mode (about 14.4 MHz
    /// for p = 5 on the reference device) with the 10x margin the Langevin
    /// generator enforces.
    fn default() -> Self {
        SpectrumParams {
            sample_rate: 150e6,
            duration: 0.02,
            p_max: 5,
            rbw: 5e3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhononicConfig {
    pub cell: PhononicCellSpec,
    pub f_max: f64,
    pub n_q: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputConfig {
    pub directory: String,
    pub formats: Vec<String>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            directory: "apcw-out".into(),
            formats: vec!["csv".into(), "json".into()],
        }
    }
}

/// Fully resolved scenario, strict SI throughout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub beam: BeamSpec,
    pub dispersion: DispersionSpec,
    pub probe: ProbeConfig,
    pub temperature: f64,
    pub modes_override: Vec<ModeOverride>,
    pub band_edge: BandEdgeConfig,
    pub spectrum: SpectrumParams,
    pub phononic: Option<PhononicConfig>,
    pub outputs: OutputConfig,
}

impl ScenarioConfig {
    /// Parse and resolve a JSON document; all invariants validated.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawScenarioConfig = serde_json::from_str(text)
            .map_err(|e| Error::Validation(format!("config schema: {e}")))?;
        Self::resolve(raw)
    }

    pub fn from_file<P: AsRef<std::path::Path>>(path: P) -> Result<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| {
            Error::Validation(format!(
                "cannot read config {}: {e}",
                path.as_ref().display()
            ))
        })?;
        Self::from_json(&text)
    }

    fn resolve(raw: RawScenarioConfig) -> Result<Self> {
        let beam = resolve_beam(&raw.beam)?;
        beam.validate()?;

        let dispersion = match &raw.dispersion {
            Some(d) => resolve_dispersion(d)?,
            None => DispersionSpec::reference_device(),
        };
        dispersion.validate()?;

        let probe = match &raw.probe {
            Some(p) => resolve_probe(p)?,
            None => ProbeConfig::reference_device(),
        };
        probe.validate()?;

        let temperature = match &raw.temperature {
            Some(t) => t.resolve(Dimension::Temperature, "temperature")?,
            None => 300.0,
        };
        if !(temperature > 0.0) {
            return Err(Error::Validation("temperature must be positive".into()));
        }

        let modes_override = raw
            .modes_override
            .as_deref()
            .unwrap_or(&[])
            .iter()
            .map(|m| {
                Ok(ModeOverride {
                    family: m.family,
                    frequency: m.frequency.resolve(Dimension::Frequency, "modes_override.frequency")?,
                    quality_factor: m.quality_factor,
                    m_eff: m
                        .m_eff
                        .as_ref()
                        .map(|v| v.resolve(Dimension::Mass, "modes_override.m_eff"))
                        .transpose()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for m in &modes_override {
            if !(m.frequency > 0.0) || !(m.quality_factor > 0.0) {
                return Err(Error::Validation(
                    "mode overrides need positive frequency and Q".into(),
                ));
            }
        }

        let band_edge = match &raw.band_edge {
            Some(b) => BandEdgeConfig {
                linewidth: b
                    .linewidth
                    .as_ref()
                    .map(|v| v.resolve(Dimension::Frequency, "band_edge.linewidth"))
                    .transpose()?
                    .unwrap_or(BandEdgeConfig::default().linewidth),
                quadratic_gain: b
                    .quadratic_gain
                    .unwrap_or(BandEdgeConfig::default().quadratic_gain),
            },
            None => BandEdgeConfig::default(),
        };
        if !(band_edge.linewidth > 0.0) {
            return Err(Error::Validation("band-edge linewidth must be positive".into()));
        }

        let spectrum = match &raw.spectrum {
            Some(s) => {
                let d = SpectrumParams::default();
                SpectrumParams {
                    sample_rate: s
                        .sample_rate
                        .as_ref()
                        .map(|v| v.resolve(Dimension::Frequency, "spectrum.sample_rate"))
                        .transpose()?
                        .unwrap_or(d.sample_rate),
                    duration: s
                        .duration
                        .as_ref()
                        .map(|v| v.resolve(Dimension::Time, "spectrum.duration"))
                        .transpose()?
                        .unwrap_or(d.duration),
                    p_max: s.p_max.unwrap_or(d.p_max),
                    rbw: s
                        .rbw
                        .as_ref()
                        .map(|v| v.resolve(Dimension::Frequency, "spectrum.rbw"))
                        .transpose()?
                        .unwrap_or(d.rbw),
                }
            }
            None => SpectrumParams::default(),
        };
        if !(spectrum.sample_rate > 0.0) || !(spectrum.duration > 0.0) || spectrum.p_max < 1 {
            return Err(Error::Validation(
                "spectrum parameters must be positive with p_max >= 1".into(),
            ));
        }

        let phononic = raw
            .phononic
            .as_ref()
            .map(|p| -> Result<PhononicConfig> {
                let segments = p
                    .segments
                    .iter()
                    .map(|s| {
                        Ok(PhononicSegment {
                            length: s.length.resolve(Dimension::Length, "phononic.segments.length")?,
                            linear_mass_density: s.linear_mass_density.resolve(
                                Dimension::LinearMassDensity,
                                "phononic.segments.linear_mass_density",
                            )?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let cell = PhononicCellSpec {
                    segments,
                    tension: p.tension.resolve(Dimension::Force, "phononic.tension")?,
                };
                cell.validate()?;
                Ok(PhononicConfig {
                    cell,
                    f_max: p
                        .f_max
                        .as_ref()
                        .map(|v| v.resolve(Dimension::Frequency, "phononic.f_max"))
                        .transpose()?
                        .unwrap_or(5e9),
                    n_q: p.n_q.unwrap_or(64),
                })
            })
            .transpose()?;

        let outputs = match &raw.outputs {
            Some(o) => OutputConfig {
                directory: o
                    .directory
                    .clone()
                    .unwrap_or_else(|| OutputConfig::default().directory),
                formats: o
                    .formats
                    .clone()
                    .unwrap_or_else(|| OutputConfig::default().formats),
            },
            None => OutputConfig::default(),
        };
        for f in &outputs.formats {
            if f != "csv" && f != "json" && f != "bin" {
                return Err(Error::Validation(format!(
                    "unknown output format `{f}` (expected csv, json, or bin)"
                )));
            }
        }

        Ok(ScenarioConfig {
            beam,
            dispersion,
            probe,
            temperature,
            modes_override,
            band_edge,
            spectrum,
            phononic,
            outputs,
        })
    }

    /// The resolved config as pretty JSON (the `--print-config` payload).
    pub fn to_pretty_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("resolved config serializes")
    }
}

fn resolve_beam(raw: &RawBeam) -> Result<BeamSpec> {
    let cross_section = raw
        .cross_section
        .iter()
        .map(|s| {
            Ok(CrossSectionSegment {
                x_start: s.x_start.resolve(Dimension::Length, "beam.cross_section.x_start")?,
                width: s.width.resolve(Dimension::Length, "beam.cross_section.width")?,
                thickness: s
                    .thickness
                    .resolve(Dimension::Length, "beam.cross_section.thickness")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BeamSpec {
        length: raw.length.resolve(Dimension::Length, "beam.length")?,
        youngs_modulus: raw
            .youngs_modulus
            .resolve(Dimension::Pressure, "beam.youngs_modulus")?,
        density: raw.density.resolve(Dimension::MassDensity, "beam.density")?,
        stress: raw.stress.resolve(Dimension::Pressure, "beam.stress")?,
        cross_section,
        pair_gap: raw
            .pair_gap
            .as_ref()
            .map(|v| v.resolve(Dimension::Length, "beam.pair_gap"))
            .transpose()?,
        boundary: raw.boundary.unwrap_or(BoundaryCondition::HingedHinged),
        quality_factor: raw.quality_factor.unwrap_or(1e5),
    })
}

fn resolve_dispersion(raw: &RawDispersion) -> Result<DispersionSpec> {
    let nu_be = raw.nu_be.resolve(Dimension::Frequency, "dispersion.nu_be")?;
    let nu_be2 = raw.nu_be2.resolve(Dimension::Frequency, "dispersion.nu_be2")?;
    let reference = DispersionSpec::reference_device();
    let zeta = match &raw.zeta {
        Some(z) => z.resolve(Dimension::Frequency, "dispersion.zeta")?,
        None => reference.zeta,
    };
    Ok(DispersionSpec {
        nu_be,
        nu_be2,
        zeta,
        lattice_a: raw.lattice_a.resolve(Dimension::Length, "dispersion.lattice_a")?,
        n_cells: raw.n_cells,
        band_edge_gap_slope: raw
            .band_edge_gap_slope
            .as_ref()
            .map(|v| v.resolve(Dimension::FrequencyPerLength, "dispersion.band_edge_gap_slope"))
            .transpose()?
            .unwrap_or(reference.band_edge_gap_slope),
    })
}

fn resolve_probe(raw: &RawProbe) -> Result<ProbeConfig> {
    let reference = ProbeConfig::reference_device();
    Ok(ProbeConfig {
        optical_frequency: raw
            .optical_frequency
            .resolve(Dimension::Frequency, "probe.optical_frequency")?,
        power_out: raw.power_out.resolve(Dimension::Power, "probe.power_out")?,
        power_lo: raw.power_lo.resolve(Dimension::Power, "probe.power_lo")?,
        quadrature_theta: raw
            .quadrature_theta
            .as_ref()
            .map(|v| v.resolve(Dimension::Angle, "probe.quadrature_theta"))
            .transpose()?
            .unwrap_or(reference.quadrature_theta),
        visibility: raw.visibility.unwrap_or(reference.visibility),
        noise_floor_psd: raw.noise_floor_psd.unwrap_or(reference.noise_floor_psd),
    })
}

/// The shipped reference-device scenario.
pub fn reference_config_json() -> &'static str {
    include_str!("../configs/reference.json")
}

/// Parse a standalone beam document using the same schema as the config's
/// `beam` section (unit suffixes allowed), validating all invariants.
pub fn beam_from_json(text: &str) -> Result<BeamSpec> {
    let raw: RawBeam =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("beam schema: {e}")))?;
    let beam = resolve_beam(&raw)?;
    beam.validate()?;
    Ok(beam)
}
