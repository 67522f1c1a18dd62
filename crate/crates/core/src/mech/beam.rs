//! Tensioned-nanobeam geometry and the analytic hinged-beam eigenmode ladder.
//!
//! The frequency model for a uniform beam hinged at both ends combines the
//! Euler–Bernoulli bending term with the string (tension) term,
//!
//! ```text
//! f_p = (p^2 pi / 2 L^2) * sqrt( E I / (rho A) + sigma L^2 / (rho pi^2 p^2) )
//! ```
//!
//! which reduces to the linear string ladder `f_p = (p/2L) sqrt(sigma/rho)`
//! when bending is negligible and to the textbook hinged Euler–Bernoulli
//! result when the stress vanishes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::{BOLTZMANN, REDUCED_PLANCK, ROOM_TEMPERATURE};
use crate::error::{Error, Result};

/// Transverse boundary condition applied at both beam ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryCondition {
    HingedHinged,
    ClampedClamped,
}

/// Mechanical mode family. The 1D solvers label their output `Generic`;
/// family tags are metadata attached by the caller (e.g. from a measured or
/// externally simulated mode table).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeFamily {
    /// In-plane, beams moving in anti-phase (changes the gap width).
    YA,
    /// In-plane, beams moving in phase.
    YS,
    /// Out-of-plane, anti-phase.
    ZA,
    /// Out-of-plane, in phase.
    ZS,
    Generic,
}

impl std::fmt::Display for ModeFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ModeFamily::YA => "Y_A",
            ModeFamily::YS => "Y_S",
            ModeFamily::ZA => "Z_A",
            ModeFamily::ZS => "Z_S",
            ModeFamily::Generic => "generic",
        };
        write!(f, "{s}")
    }
}

/// One piecewise-constant cross-section segment starting at `x_start` and
/// extending to the start of the next segment (or the beam end).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossSectionSegment {
    pub x_start: f64,
    pub width: f64,
    pub thickness: f64,
}

/// Geometry and material description of a tensioned beam.
///
/// When `pair_gap` is set the cross section is a pair of identical rectangles
/// separated by a vacuum gap (the suspended double-nanobeam device), moving as
/// one composite beam in plane. Area and moment then become
/// `A = 2 w t` and `I = 2 (t w^3/12 + w t d^2)` with `d = (gap + w)/2`,
/// i.e. the parallel-axis moment about the common centroid. For a single
/// rectangle the convention is `A = w t`, `I = w t^3 / 12`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeamSpec {
    /// Suspended length, m.
    pub length: f64,
    /// Young's modulus, Pa.
    pub youngs_modulus: f64,
    /// Mass density, kg/m^3.
    pub density: f64,
    /// Tensile stress, Pa.
    pub stress: f64,
    /// Piecewise-constant cross-section segments tiling `[0, length]`.
    pub cross_section: Vec<CrossSectionSegment>,
    /// Vacuum gap of the paired-beam cross section, if the beam is a
    /// double-nanobeam device; `None` for a single rectangle.
    pub pair_gap: Option<f64>,
    pub boundary: BoundaryCondition,
    /// Mechanical quality factor applied to every mode unless overridden.
    pub quality_factor: f64,
}

impl BeamSpec {
    /// Uniform single-rectangle beam.
    #[allow(clippy::too_many_arguments)]
    pub fn uniform(
        length: f64,
        youngs_modulus: f64,
        density: f64,
        stress: f64,
        width: f64,
        thickness: f64,
        boundary: BoundaryCondition,
        quality_factor: f64,
    ) -> Self {
        BeamSpec {
            length,
            youngs_modulus,
            density,
            stress,
            cross_section: vec![CrossSectionSegment {
                x_start: 0.0,
                width,
                thickness,
            }],
            pair_gap: None,
            boundary,
            quality_factor,
        }
    }

    /// The reference suspended double-nanobeam device: L = 107 um,
    /// sigma = 800 MPa, rho = 3180 kg/m^3, E = 250 GPa, two 280 x 200 nm
    /// beams separated by a 238 nm vacuum gap, Q = 1e5.
    pub fn reference_device() -> Self {
        BeamSpec {
            length: 107e-6,
            youngs_modulus: 250e9,
            density: 3180.0,
            stress: 800e6,
            cross_section: vec![CrossSectionSegment {
                x_start: 0.0,
                width: 280e-9,
                thickness: 200e-9,
            }],
            pair_gap: Some(238e-9),
            boundary: BoundaryCondition::HingedHinged,
            quality_factor: 1e5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length > 0.0) {
            return Err(Error::Validation("beam length must be positive".into()));
        }
        if !(self.density > 0.0) {
            return Err(Error::Validation("density must be positive".into()));
        }
        if !(self.youngs_modulus > 0.0) {
            return Err(Error::Validation("Young's modulus must be positive".into()));
        }
        if self.stress < 0.0 {
            return Err(Error::Validation("stress must be non-negative".into()));
        }
        if !(self.quality_factor > 0.0) {
            return Err(Error::Validation("quality factor must be positive".into()));
        }
        if self.cross_section.is_empty() {
            return Err(Error::Validation("cross_section needs at least one segment".into()));
        }
        if let Some(g) = self.pair_gap {
            if !(g > 0.0) {
                return Err(Error::Validation("pair_gap must be positive".into()));
            }
        }
        // Segments must tile [0, L] without gaps or overlap.
        let mut prev = 0.0;
        for (i, seg) in self.cross_section.iter().enumerate() {
            if !(seg.width > 0.0) || !(seg.thickness > 0.0) {
                return Err(Error::Validation(format!(
                    "segment {i}: width and thickness must be positive"
                )));
            }
            let tol = 1e-9 * self.length;
            if (seg.x_start - prev).abs() > tol {
                return Err(Error::Validation(format!(
                    "segment {i} starts at {} but previous segment ends at {prev}",
                    seg.x_start
                )));
            }
            if i + 1 < self.cross_section.len() {
                let next = self.cross_section[i + 1].x_start;
                if next <= seg.x_start {
                    return Err(Error::Validation(format!(
                        "segment {} must start after segment {i}",
                        i + 1
                    )));
                }
                prev = next;
            } else if seg.x_start >= self.length {
                return Err(Error::Validation(format!(
                    "last segment starts at {} beyond beam end {}",
                    seg.x_start, self.length
                )));
            }
        }
        Ok(())
    }

    pub fn is_uniform(&self) -> bool {
        self.cross_section.len() == 1
    }

    fn segment_at(&self, x: f64) -> &CrossSectionSegment {
        // Segments are sorted by construction; last one whose start is <= x.
        self.cross_section
            .iter()
            .rev()
            .find(|s| s.x_start <= x)
            .unwrap_or(&self.cross_section[0])
    }

    /// Cross-section area at position `x`, m^2.
    pub fn area_at(&self, x: f64) -> f64 {
        let s = self.segment_at(x);
        let a = s.width * s.thickness;
        if self.pair_gap.is_some() {
            2.0 * a
        } else {
            a
        }
    }

    /// Bending moment of inertia at position `x`, m^4.
    pub fn moment_at(&self, x: f64) -> f64 {
        let s = self.segment_at(x);
        match self.pair_gap {
            // Composite in-plane moment of two rectangles about the common
            // centroid; d is the offset of each rectangle's centroid.
            Some(g) => {
                let own = s.thickness * s.width.powi(3) / 12.0;
                let d = 0.5 * (g + s.width);
                2.0 * (own + s.width * s.thickness * d * d)
            }
            None => s.width * s.thickness.powi(3) / 12.0,
        }
    }

    /// Linear mass density at `x`, kg/m.
    pub fn linear_mass_at(&self, x: f64) -> f64 {
        self.density * self.area_at(x)
    }

    /// Total material mass, kg (piecewise-exact).
    pub fn total_mass(&self) -> f64 {
        let mut m = 0.0;
        for (i, seg) in self.cross_section.iter().enumerate() {
            let end = self
                .cross_section
                .get(i + 1)
                .map(|s| s.x_start)
                .unwrap_or(self.length);
            m += self.linear_mass_at(seg.x_start) * (end - seg.x_start);
        }
        m
    }
}

/// One mechanical eigenmode with its derived amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MechMode {
    /// Mode index p >= 1.
    pub index: usize,
    pub family: ModeFamily,
    /// Eigenfrequency, Hz.
    pub frequency: f64,
    /// Sampled shape `(x, u)` with max |u| = 1.
    pub shape: Vec<(f64, f64)>,
    /// Effective mass for the max-displacement coordinate, kg.
    pub m_eff: f64,
    /// Zero-point amplitude sqrt(hbar / (2 m_eff omega)), m.
    pub alpha_zp: f64,
    /// Thermal rms amplitude at `temperature`, m.
    pub alpha_th_rms: f64,
    /// Temperature at which `alpha_th_rms` is stated, K.
    pub temperature: f64,
    /// Quality factor.
    pub q: f64,
}

impl MechMode {
    /// Full linewidth f/Q, Hz.
    pub fn gamma(&self) -> f64 {
        self.frequency / self.q
    }

    /// Angular damping rate omega/Q, rad/s.
    pub fn gamma_angular(&self) -> f64 {
        2.0 * PI * self.frequency / self.q
    }

    /// Same mode with the thermal amplitude restated at temperature `t`.
    pub fn at_temperature(&self, t: f64) -> Result<MechMode> {
        let th = thermal_amplitude(self.m_eff, self.frequency, t)?;
        let mut m = self.clone();
        m.alpha_th_rms = th.classical_rms;
        m.temperature = t;
        Ok(m)
    }
}

/// Eigenfrequency of mode `p` for a uniform hinged beam.
pub fn hinged_frequency(spec: &BeamSpec, p: usize) -> f64 {
    let area = spec.area_at(0.0);
    let moment = spec.moment_at(0.0);
    let l = spec.length;
    let pf = p as f64;
    let bending = spec.youngs_modulus * moment / (spec.density * area);
    let string = spec.stress * l * l / (spec.density * PI * PI * pf * pf);
    (pf * pf * PI / (2.0 * l * l)) * (bending + string).sqrt()
}

/// Sampled unit-normalized sine shape `sin(p pi x / L)`, rescaled so the
/// peak sample is exactly one even when no grid point lands on an antinode.
pub fn sine_shape(p: usize, length: f64, n_samples: usize) -> Vec<(f64, f64)> {
    let n = n_samples.max(2);
    let mut shape: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let x = length * i as f64 / (n - 1) as f64;
            (x, (p as f64 * PI * i as f64 / (n - 1) as f64).sin())
        })
        .collect();
    let umax = shape.iter().map(|(_, u)| u.abs()).fold(0.0, f64::max);
    if umax > 0.0 {
        for (_, u) in shape.iter_mut() {
            *u /= umax;
        }
    }
    shape
}

/// Analytic eigenmodes of a uniform hinged beam: frequencies from the
/// bending-plus-tension ladder, sine shapes, and derived amplitudes.
///
/// Thermal amplitudes are stated at 300 K; use [`MechMode::at_temperature`]
/// for other baths.
pub fn analytic_modes(spec: &BeamSpec, p_max: usize) -> Result<Vec<MechMode>> {
    spec.validate()?;
    if !spec.is_uniform() {
        return Err(Error::UnsupportedGeometry(
            "analytic frequencies require a uniform (single-segment) cross section".into(),
        ));
    }
    if spec.boundary != BoundaryCondition::HingedHinged {
        return Err(Error::UnsupportedGeometry(
            "analytic frequencies are derived for hinged-hinged ends".into(),
        ));
    }
    if p_max < 1 {
        return Err(Error::Domain("p_max must be at least 1".into()));
    }

    let n_samples = 1001;
    (1..=p_max)
        .map(|p| {
            let f = hinged_frequency(spec, p);
            let shape = sine_shape(p, spec.length, n_samples);
            let m_eff = effective_mass(&shape, spec)?;
            let alpha_zp = zero_point_amplitude(m_eff, f)?;
            let th = thermal_amplitude(m_eff, f, ROOM_TEMPERATURE)?;
            Ok(MechMode {
                index: p,
                family: ModeFamily::Generic,
                frequency: f,
                shape,
                m_eff,
                alpha_zp,
                alpha_th_rms: th.classical_rms,
                temperature: ROOM_TEMPERATURE,
                q: spec.quality_factor,
            })
        })
        .collect()
}

/// Frequency deviation from the linear string ladder,
/// `delta f_p = f_p - p f_1`.
pub fn dispersion_deviation(modes: &[MechMode]) -> Result<Vec<(usize, f64)>> {
    if modes.len() < 2 {
        return Err(Error::Domain(
            "dispersion deviation needs at least two modes".into(),
        ));
    }
    for (i, m) in modes.iter().enumerate() {
        if m.index != i + 1 {
            return Err(Error::Domain(format!(
                "modes must be sorted by p starting at 1; position {i} has p = {}",
                m.index
            )));
        }
    }
    let f1 = modes[0].frequency;
    Ok(modes
        .iter()
        .map(|m| (m.index, m.frequency - m.index as f64 * f1))
        .collect())
}

/// Mode-shape-weighted mass relative to the max-displacement coordinate:
/// the quadrature of `rho(x) A(x) u(x)^2` over the beam for a shape with
/// max |u| = 1.
pub fn effective_mass(shape: &[(f64, f64)], spec: &BeamSpec) -> Result<f64> {
    if shape.len() < 2 {
        return Err(Error::Domain("shape needs at least two samples".into()));
    }
    let umax = shape.iter().map(|(_, u)| u.abs()).fold(0.0, f64::max);
    if (umax - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "shape must be normalized to max |u| = 1 (got {umax})"
        )));
    }
    let mut acc = 0.0;
    for w in shape.windows(2) {
        let (x0, u0) = w[0];
        let (x1, u1) = w[1];
        let f0 = spec.linear_mass_at(x0) * u0 * u0;
        let f1 = spec.linear_mass_at(x1) * u1 * u1;
        acc += 0.5 * (f0 + f1) * (x1 - x0);
    }
    Ok(acc)
}

/// Zero-point amplitude `sqrt(hbar / (2 m_eff omega))`, m.
pub fn zero_point_amplitude(m_eff: f64, frequency: f64) -> Result<f64> {
    if !(m_eff > 0.0) || !(frequency > 0.0) {
        return Err(Error::Domain(
            "zero-point amplitude needs positive mass and frequency".into(),
        ));
    }
    Ok((REDUCED_PLANCK / (2.0 * m_eff * 2.0 * PI * frequency)).sqrt())
}

/// Thermal occupation and rms amplitude of a mode at temperature `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalAmplitude {
    /// Bose occupation 1/(exp(hbar omega / kT) - 1).
    pub n_bar: f64,
    /// Quantum estimate alpha_zp * sqrt(2 n_bar), m.
    pub quantum_rms: f64,
    /// Classical equipartition estimate sqrt(kT / (m omega^2)), m.
    pub classical_rms: f64,
}

/// Exact Bose occupation plus both the quantum and the classical
/// equipartition rms amplitude estimates. The two estimates agree to
/// first order in `hbar omega / kT` when the occupation is large.
pub fn thermal_amplitude(m_eff: f64, frequency: f64, temperature: f64) -> Result<ThermalAmplitude> {
    if !(m_eff > 0.0) || !(frequency > 0.0) || !(temperature > 0.0) {
        return Err(Error::Domain(
            "thermal amplitude needs positive mass, frequency, and temperature".into(),
        ));
    }
    let omega = 2.0 * PI * frequency;
    let x = REDUCED_PLANCK * omega / (BOLTZMANN * temperature);
    let n_bar = 1.0 / x.exp_m1();
    let alpha_zp = zero_point_amplitude(m_eff, frequency)?;
    let quantum_rms = alpha_zp * (2.0 * n_bar).sqrt();
    let classical_rms = (BOLTZMANN * temperature / (m_eff * omega * omega)).sqrt();
    Ok(ThermalAmplitude {
        n_bar,
        quantum_rms,
        classical_rms,
    })
}
