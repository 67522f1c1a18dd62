//! Brute-force 1D slab-cavity eigenfrequencies: the independent oracle for
//! the moving-boundary perturbation formula.
//!
//! A perfectly mirrored cavity of length `L` contains one dielectric slab.
//! The scalar Helmholtz problem `E'' + k0^2 eps_r(x) E = 0` with `E = 0` at
//! both walls is solved by propagating `(E, E')` analytically through the
//! three regions and bisecting the mode-matching condition `E(L) = 0` for
//! `k0`. Moving the slab's right boundary by a small amount and re-solving
//! gives a nonperturbative eigenfrequency shift to compare against the
//! surface-quadrature formula.

use serde::{Deserialize, Serialize};

use crate::constants::{SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};
use crate::error::{Error, Result};
use crate::optics::moving_boundary::{MovingBoundaryInput, SurfaceSample};

/// A single dielectric slab inside a perfectly mirrored 1D cavity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlabCavity {
    /// Cavity length, m.
    pub cavity_length: f64,
    /// Left edge of the slab, m.
    pub slab_start: f64,
    /// Slab thickness, m.
    pub slab_thickness: f64,
    /// Relative permittivity of the slab.
    pub slab_eps_rel: f64,
}

impl SlabCavity {
    pub fn validate(&self) -> Result<()> {
        if !(self.cavity_length > 0.0) {
            return Err(Error::Domain("cavity length must be positive".into()));
        }
        if self.slab_start < 0.0
            || !(self.slab_thickness >= 0.0)
            || self.slab_start + self.slab_thickness > self.cavity_length * (1.0 + 1e-12)
        {
            return Err(Error::Domain("slab must lie inside the cavity".into()));
        }
        if !(self.slab_eps_rel >= 1.0) {
            return Err(Error::Domain("slab permittivity must be >= 1".into()));
        }
        Ok(())
    }

    fn regions(&self, shift: f64) -> [(f64, f64); 3] {
        // (length, eps_rel) per region; the slab's right edge moves by shift.
        [
            (self.slab_start, 1.0),
            (self.slab_thickness + shift, self.slab_eps_rel),
            (
                self.cavity_length - self.slab_start - self.slab_thickness - shift,
                1.0,
            ),
        ]
    }
}

/// Oracle output: both eigenfrequencies plus the unperturbed field sampled
/// at the moving interface in the form the perturbation formula consumes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HelmholtzSolution {
    pub nu_unperturbed: f64,
    pub nu_shifted: f64,
    /// Surface data of the unperturbed mode at the displaced (right) slab
    /// boundary, normalized so the boundary displacement field is 1 there.
    pub perturbation_input: MovingBoundaryInput,
}

/// Propagate (E, E') across a region of length `d` and index^2 `eps`.
fn propagate(state: (f64, f64), k0: f64, d: f64, eps: f64) -> (f64, f64) {
    let kappa = k0 * eps.sqrt();
    let (e, ep) = state;
    if kappa * d < 1e-12 {
        return (e + ep * d, ep);
    }
    let (s, c) = (kappa * d).sin_cos();
    (e * c + ep * s / kappa, -e * kappa * s + ep * c)
}

/// E(L) for a left-start state (0, 1); eigenmodes are the zeros in k0.
fn boundary_mismatch(cavity: &SlabCavity, shift: f64, k0: f64) -> f64 {
    let mut state = (0.0, 1.0);
    for (d, eps) in cavity.regions(shift) {
        if d > 0.0 {
            state = propagate(state, k0, d, eps);
        }
    }
    state.0
}

/// Field value E(x2) of the normalized left-start solution at the slab's
/// right boundary, plus the energy integral eps0 * sum eps_r int E^2 dx.
fn field_at_interface_and_energy(cavity: &SlabCavity, k0: f64) -> (f64, f64) {
    let mut state = (0.0, 1.0);
    let mut energy = 0.0;
    let mut e_at_x2 = 0.0;
    for (idx, (d, eps)) in cavity.regions(0.0).into_iter().enumerate() {
        if d > 0.0 {
            energy += VACUUM_PERMITTIVITY * eps * region_energy(state, k0 * eps.sqrt(), d);
            state = propagate(state, k0, d, eps);
        }
        if idx == 1 {
            e_at_x2 = state.0;
        }
    }
    (e_at_x2, energy)
}

/// Closed-form integral of E^2 over one region given the entry state.
fn region_energy(state: (f64, f64), kappa: f64, d: f64) -> f64 {
    let (p, q) = state;
    if kappa * d < 1e-12 {
        // E ~ p + q s
        return p * p * d + p * q * d * d + q * q * d * d * d / 3.0;
    }
    let r = q / kappa;
    let s2 = (2.0 * kappa * d).sin();
    let ss = (kappa * d).sin();
    p * p * (d / 2.0 + s2 / (4.0 * kappa)) + r * r * (d / 2.0 - s2 / (4.0 * kappa))
        + 2.0 * p * r * ss * ss / (2.0 * kappa)
}

/// Find the `mode_index`-th eigen-wavenumber (1-based) of the cavity with
/// the slab boundary displaced by `shift`.
fn eigen_k0(cavity: &SlabCavity, shift: f64, mode_index: usize) -> Result<f64> {
    // Densest possible root spacing is pi over the optical path length;
    // dielectric only lowers eigenvalues, so the m-th root cannot exceed the
    // empty-cavity value m pi / L.
    let n_idx = cavity.slab_eps_rel.sqrt();
    let opl = cavity.cavity_length + (n_idx - 1.0) * (cavity.slab_thickness + shift);
    let step = std::f64::consts::PI / (50.0 * opl);
    let k_max = (mode_index as f64 + 1.0) * std::f64::consts::PI / cavity.cavity_length;

    let mut found = 0usize;
    let mut k_prev = step * 1e-3;
    let mut g_prev = boundary_mismatch(cavity, shift, k_prev);
    let mut k = k_prev + step;
    while k <= k_max {
        let g = boundary_mismatch(cavity, shift, k);
        if g_prev * g <= 0.0 && g_prev != 0.0 {
            found += 1;
            if found == mode_index {
                return Ok(bisect_root(
                    |kk| boundary_mismatch(cavity, shift, kk),
                    k_prev,
                    k,
                ));
            }
        }
        k_prev = k;
        g_prev = g;
        k += step;
    }
    Err(Error::Numerical(format!(
        "failed to bracket mode {mode_index}: found {found} roots up to k0 = {k:.4e} \
         (scan step {step:.4e})"
    )))
}

fn bisect_root<F: Fn(f64) -> f64>(g: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut g_lo = g(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval collapsed to adjacent floats
        }
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return mid;
        }
        if g_lo * g_mid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            g_lo = g_mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solve the cavity with and without the boundary displacement and export
/// the unperturbed interface fields for the perturbation formula.
pub fn helmholtz_oracle(
    cavity: &SlabCavity,
    mode_index: usize,
    boundary_shift: f64,
) -> Result<HelmholtzSolution> {
    cavity.validate()?;
    if mode_index < 1 {
        return Err(Error::Domain("mode_index must be at least 1".into()));
    }
    let right_edge = cavity.slab_start + cavity.slab_thickness + boundary_shift;
    if right_edge <= cavity.slab_start || right_edge >= cavity.cavity_length {
        return Err(Error::Domain(
            "boundary shift pushes the slab edge outside the cavity".into(),
        ));
    }

    let k0 = eigen_k0(cavity, 0.0, mode_index)?;
    let k0_shifted = eigen_k0(cavity, boundary_shift, mode_index)?;
    let nu0 = SPEED_OF_LIGHT * k0 / (2.0 * std::f64::consts::PI);
    let nu_shifted = SPEED_OF_LIGHT * k0_shifted / (2.0 * std::f64::consts::PI);

    let (e_x2, energy) = field_at_interface_and_energy(cavity, k0);
    let eps_in = cavity.slab_eps_rel * VACUUM_PERMITTIVITY;
    let eps_out = VACUUM_PERMITTIVITY;
    let perturbation_input = MovingBoundaryInput {
        nu0,
        surface_samples: vec![SurfaceSample {
            area_weight: 1.0,
            normal_displacement: 1.0,
            // TE field is fully parallel to the interface in 1D.
            e_parallel_sq: e_x2 * e_x2,
            d_perp_sq: 0.0,
        }],
        delta_eps: eps_in - eps_out,
        delta_eps_inv: 1.0 / eps_in - 1.0 / eps_out,
        energy_norm: energy,
    };

    Ok(HelmholtzSolution {
        nu_unperturbed: nu0,
        nu_shifted,
        perturbation_input,
    })
}
