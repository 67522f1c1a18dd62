//! Band-edge dispersion of the periodic waveguide and the finite-structure
//! resonance ladder.
//!
//! Near the band edges the deviation of the Bloch wavevector from the zone
//! edge follows
//!
//! ```text
//! delta_k(nu) = (2 pi / a) sqrt( (nu_be2 - nu)(nu_be - nu) / (4 zeta^2 - (nu_be2 - nu_be)^2) )
//! ```
//!
//! A structure of N cells supports resonances where `delta_k(nu_n) = n pi / L`
//! with `L = (N - 1) a`; the rung frequencies accumulate quadratically toward
//! the lower (dielectric) band edge.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mech::MechMode;

/// Band-edge dispersion parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionSpec {
    /// Lower (dielectric) band-edge frequency, Hz.
    pub nu_be: f64,
    /// Upper band-edge frequency, Hz.
    pub nu_be2: f64,
    /// Band-curvature frequency, Hz.
    pub zeta: f64,
    /// Lattice constant, m.
    pub lattice_a: f64,
    /// Number of unit cells.
    pub n_cells: usize,
    /// Local linear sensitivity of the band edge to gap width, Hz/m.
    pub band_edge_gap_slope: f64,
}

impl DispersionSpec {
    /// Reference-device dispersion: dielectric band edge at 344 THz, lattice
    /// 370 nm, 150 cells, gap slope 0.034 THz/nm. The upper edge (352 THz)
    /// and curvature are illustrative placeholders chosen to put the first
    /// resonance 200 GHz below the band edge; everything derived from them
    /// is meaningful only as a self-consistent model.
    pub fn reference_device() -> Self {
        let nu_be = 344e12;
        let nu_be2 = 352e12;
        let lattice_a = 370e-9;
        let n_cells = 150;
        // Place nu_1 at nu_be - 200 GHz: P(nu_1) = D (a / 2L)^2.
        let x1 = 200e9;
        let p1 = (nu_be2 - (nu_be - x1)) * x1;
        let ratio = 2.0 * (n_cells as f64 - 1.0);
        let d = p1 * ratio * ratio;
        let zeta = 0.5 * (d + (nu_be2 - nu_be).powi(2)).sqrt();
        DispersionSpec {
            nu_be,
            nu_be2,
            zeta,
            lattice_a,
            n_cells,
            band_edge_gap_slope: 0.034e21,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nu_be > 0.0) || !(self.nu_be < self.nu_be2) {
            return Err(Error::Validation(
                "band edges must satisfy 0 < nu_be < nu_be2".into(),
            ));
        }
        if 4.0 * self.zeta * self.zeta <= (self.nu_be2 - self.nu_be).powi(2) {
            return Err(Error::Validation(
                "curvature must satisfy 4 zeta^2 > (nu_be2 - nu_be)^2".into(),
            ));
        }
        if !(self.lattice_a > 0.0) {
            return Err(Error::Validation("lattice constant must be positive".into()));
        }
        if self.n_cells < 2 {
            return Err(Error::Validation("need at least two unit cells".into()));
        }
        Ok(())
    }

    /// Effective resonator length `L = (N - 1) a`, m.
    pub fn effective_length(&self) -> f64 {
        (self.n_cells as f64 - 1.0) * self.lattice_a
    }

    /// Positive denominator `4 zeta^2 - (nu_be2 - nu_be)^2`, Hz^2.
    fn curvature_denominator(&self) -> f64 {
        4.0 * self.zeta * self.zeta - (self.nu_be2 - self.nu_be).powi(2)
    }
}

/// Deviation of the Bloch wavevector from the zone edge at frequency `nu`,
/// rad/m. Real only in the propagating regions `nu <= nu_be` or
/// `nu >= nu_be2`; frequencies inside the gap are evanescent and rejected.
pub fn delta_kx(spec: &DispersionSpec, nu: f64) -> Result<f64> {
    spec.validate()?;
    let p = (spec.nu_be2 - nu) * (spec.nu_be - nu);
    if p < 0.0 {
        return Err(Error::BandGap(format!(
            "nu = {nu} lies inside the gap ({}, {}); the mode is evanescent there",
            spec.nu_be, spec.nu_be2
        )));
    }
    Ok((2.0 * std::f64::consts::PI / spec.lattice_a) * (p / spec.curvature_denominator()).sqrt())
}

/// Resonance rungs `nu_n` below the dielectric band edge, solving
/// `delta_kx(nu_n) = n pi / L` in closed form. The quadratic is evaluated in
/// the numerically stable form `x^2 + (nu_be2 - nu_be) x = C` for the
/// distance `x = nu_be - nu_n`, avoiding cancellation between the large
/// band-edge frequencies.
pub fn resonance_ladder(spec: &DispersionSpec, n_max: usize) -> Result<Vec<(usize, f64)>> {
    spec.validate()?;
    if n_max < 1 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let l = spec.effective_length();
    let d = spec.curvature_denominator();
    let gap = spec.nu_be2 - spec.nu_be;

    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        // delta_k = n pi / L  =>  P(nu) = D (n a / 2L)^2 = C
        let half_ratio = n as f64 * spec.lattice_a / (2.0 * l);
        let c = d * half_ratio * half_ratio;
        let x = 2.0 * c / (gap + (gap * gap + 4.0 * c).sqrt());
        let nu_n = spec.nu_be - x;
        if nu_n <= 0.0 {
            return Err(Error::Numerical(format!(
                "rung n = {n} falls at non-physical frequency {nu_n}; \
                 dispersion parameters do not support this many rungs"
            )));
        }
        out.push((n, nu_n));
    }
    Ok(out)
}

/// Dispersive transduction factor `xi(nu) = (d delta_kx / d nu_be) * (d nu_be / d gap)`
/// in (rad/m) per meter of gap change, evaluated analytically. Diverges at
/// the band edge where the band flattens.
pub fn xi_dispersive(spec: &DispersionSpec, nu: f64) -> Result<f64> {
    spec.validate()?;
    if nu >= spec.nu_be {
        return Err(Error::Domain(format!(
            "xi(nu) requires nu below the dielectric band edge; d(delta_k)/d(nu_be) diverges as \
             nu -> nu_be = {} (got nu = {nu})",
            spec.nu_be
        )));
    }
    let d = spec.curvature_denominator();
    let p = (spec.nu_be2 - nu) * (spec.nu_be - nu);
    let ratio = p / d;
    // d(P/D)/d(nu_be) with P' = (nu_be2 - nu), D' = 2 (nu_be2 - nu_be).
    let dp = spec.nu_be2 - nu;
    let dd = 2.0 * (spec.nu_be2 - spec.nu_be);
    let dratio = (dp * d - p * dd) / (d * d);
    let dkx_dnube =
        (2.0 * std::f64::consts::PI / spec.lattice_a) * dratio / (2.0 * ratio.sqrt());
    Ok(dkx_dnube * spec.band_edge_gap_slope)
}

/// Optomechanical coupling rate from a resonance-shift slope:
/// `G = (2 if antisymmetric else 1) * alpha_zp * |dnu/dy|`, Hz. The factor
/// two reflects that anti-phase motion of the two beams changes the gap by
/// twice the per-beam displacement.
pub fn coupling_from_slope(dnu_dy: f64, mode: &MechMode, antisymmetric: bool) -> f64 {
    let factor = if antisymmetric { 2.0 } else { 1.0 };
    factor * mode.alpha_zp * dnu_dy.abs()
}

/// Sensitivity of rung `n` to band-edge shifts, `d nu_n / d nu_be`
/// (dimensionless), via implicit differentiation of `P(nu_n) = C_n(nu_be)`.
pub fn rung_band_edge_sensitivity(spec: &DispersionSpec, n: usize, nu_n: f64) -> f64 {
    let half_ratio = n as f64 * spec.lattice_a / (2.0 * spec.effective_length());
    let c_prime = 2.0 * (spec.nu_be2 - spec.nu_be) * half_ratio * half_ratio;
    let dp_dnube = spec.nu_be2 - nu_n;
    let dp_dnu = 2.0 * nu_n - spec.nu_be - spec.nu_be2;
    -(dp_dnube - c_prime) / dp_dnu
}
