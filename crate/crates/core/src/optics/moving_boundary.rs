//! First-order eigenfrequency shift from displacing dielectric boundaries.
//!
//! The shift per unit of the generalized displacement coordinate is a surface
//! quadrature over the unperturbed fields,
//!
//! ```text
//! dnu/dalpha = -(nu0 / 2) * sum dS (u.n) (deps |E_par|^2 - deps_inv |D_perp|^2)
//!              / ( max|u| * integral eps |E|^2 dV )
//! ```
//!
//! with `deps = eps_in - eps_out` and `deps_inv = 1/eps_in - 1/eps_out`.
//! Samples are caller-provided; no internal meshing. The expression is
//! homogeneous of degree zero in the field intensity, so any consistent
//! field normalization gives the same shift.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One surface sample of the unperturbed fields at a dielectric boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSample {
    /// Quadrature weight dS, m^2.
    pub area_weight: f64,
    /// Normal displacement of the unit-normalized mode at this point,
    /// in [-1, 1]; positive moves the boundary along the outward normal
    /// of the dielectric.
    pub normal_displacement: f64,
    /// |E_parallel|^2 of the unperturbed mode, (V/m)^2.
    pub e_parallel_sq: f64,
    /// |D_perp|^2 of the unperturbed mode, (C/m^2)^2.
    pub d_perp_sq: f64,
}

/// Inputs for the surface-quadrature evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MovingBoundaryInput {
    /// Unperturbed eigenfrequency, Hz.
    pub nu0: f64,
    pub surface_samples: Vec<SurfaceSample>,
    /// eps_in - eps_out, F/m.
    pub delta_eps: f64,
    /// 1/eps_in - 1/eps_out, m/F.
    pub delta_eps_inv: f64,
    /// Mode energy normalization, integral of eps |E|^2 dV.
    pub energy_norm: f64,
}

impl MovingBoundaryInput {
    pub fn validate(&self) -> Result<()> {
        if !(self.energy_norm > 0.0) {
            return Err(Error::Domain("energy_norm must be positive".into()));
        }
        if !(self.nu0 > 0.0) {
            return Err(Error::Domain("nu0 must be positive".into()));
        }
        for (i, s) in self.surface_samples.iter().enumerate() {
            if s.area_weight < 0.0 {
                return Err(Error::Domain(format!("sample {i}: area weight must be >= 0")));
            }
            if s.normal_displacement.abs() > 1.0 + 1e-12 {
                return Err(Error::Domain(format!(
                    "sample {i}: |u.n| = {} exceeds the unit normalization",
                    s.normal_displacement.abs()
                )));
            }
        }
        Ok(())
    }
}

/// Result of the perturbative evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryShift {
    /// Frequency shift per meter of generalized displacement, Hz/m.
    pub dnu_dalpha: f64,
}

impl BoundaryShift {
    /// Coupling rate for a mode with the given zero-point amplitude, Hz.
    pub fn coupling(&self, alpha_zp: f64) -> f64 {
        self.dnu_dalpha * alpha_zp
    }
}

/// Evaluate the first-order moving-boundary shift. Displacing a boundary so
/// that high-permittivity material replaces low (positive `u.n` with
/// `delta_eps > 0` and dominant parallel field) lowers the eigenfrequency.
pub fn moving_boundary_shift(input: &MovingBoundaryInput) -> Result<BoundaryShift> {
    input.validate()?;
    let surface: f64 = input
        .surface_samples
        .iter()
        .map(|s| {
            s.area_weight
                * s.normal_displacement
                * (input.delta_eps * s.e_parallel_sq - input.delta_eps_inv * s.d_perp_sq)
        })
        .sum();
    // max|u| = 1 by the unit normalization of the samples.
    let dnu_dalpha = -(input.nu0 / 2.0) * surface / input.energy_norm;
    Ok(BoundaryShift { dnu_dalpha })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::VACUUM_PERMITTIVITY;
    use approx::assert_relative_eq;

    fn sample_input() -> MovingBoundaryInput {
        let eps = VACUUM_PERMITTIVITY;
        MovingBoundaryInput {
            nu0: 344e12,
            surface_samples: vec![
                SurfaceSample {
                    area_weight: 1e-12,
                    normal_displacement: 1.0,
                    e_parallel_sq: 2.0,
                    d_perp_sq: (2.0 * eps) * (2.0 * eps) * 0.5,
                },
                SurfaceSample {
                    area_weight: 2e-12,
                    normal_displacement: -0.5,
                    e_parallel_sq: 1.0,
                    d_perp_sq: 0.0,
                },
            ],
            delta_eps: 3.0 * eps,
            delta_eps_inv: 1.0 / (4.0 * eps) - 1.0 / eps,
            energy_norm: 5e-11 * eps,
        }
    }

    #[test]
    fn zero_displacement_gives_zero_shift() {
        let mut input = sample_input();
        for s in input.surface_samples.iter_mut() {
            s.normal_displacement = 0.0;
        }
        let shift = moving_boundary_shift(&input).unwrap();
        assert_eq!(shift.dnu_dalpha, 0.0);
    }

    #[test]
    fn normalization_invariance() {
        let input = sample_input();
        let base = moving_boundary_shift(&input).unwrap().dnu_dalpha;
        for scale in [0.5, 2.0, 37.0] {
            let mut scaled = input.clone();
            for s in scaled.surface_samples.iter_mut() {
                s.e_parallel_sq *= scale;
                s.d_perp_sq *= scale;
            }
            scaled.energy_norm *= scale;
            let shifted = moving_boundary_shift(&scaled).unwrap().dnu_dalpha;
            assert_relative_eq!(shifted, base, max_relative = 1e-12);
        }
    }

    #[test]
    fn dielectric_expansion_lowers_frequency() {
        let eps = VACUUM_PERMITTIVITY;
        // Pure parallel field, boundary moving outward into vacuum.
        let input = MovingBoundaryInput {
            nu0: 1e14,
            surface_samples: vec![SurfaceSample {
                area_weight: 1.0,
                normal_displacement: 1.0,
                e_parallel_sq: 1.0,
                d_perp_sq: 0.0,
            }],
            delta_eps: 3.0 * eps,
            delta_eps_inv: 1.0 / (4.0 * eps) - 1.0 / eps,
            energy_norm: 1.0,
        };
        assert!(moving_boundary_shift(&input).unwrap().dnu_dalpha < 0.0);
    }

    #[test]
    fn rejects_degenerate_norm_and_oversized_displacement() {
        let mut input = sample_input();
        input.energy_norm = 0.0;
        assert!(moving_boundary_shift(&input).is_err());

        let mut input = sample_input();
        input.surface_samples[0].normal_displacement = 1.5;
        assert!(moving_boundary_shift(&input).is_err());
    }

    #[test]
    fn coupling_scales_with_zero_point_amplitude() {
        let shift = moving_boundary_shift(&sample_input()).unwrap();
        let g = shift.coupling(14.7e-15);
        assert_relative_eq!(g, shift.dnu_dalpha * 14.7e-15, max_relative = 1e-15);
    }
}
