//! 1D finite-element eigenmodes of a tensioned beam.
//!
//! Solves `E I w'''' - sigma A w'' = rho A omega^2 w` with cubic-Hermite
//! elements (two nodes, deflection + slope per node): bending stiffness,
//! geometric (tension) stiffness, and a consistent mass matrix. The
//! generalized eigenproblem is reduced to standard symmetric form through a
//! Cholesky factorization of the mass matrix.

use nalgebra::{DMatrix, DVector};

use crate::constants::ROOM_TEMPERATURE;
use crate::error::{Error, Result};
use crate::mech::beam::{
    thermal_amplitude, zero_point_amplitude, BeamSpec, BoundaryCondition, MechMode, ModeFamily,
};

/// Minimum shape samples emitted per element (endpoints shared).
const SAMPLES_PER_ELEMENT: usize = 10;

/// Lowest `p_max` transverse eigenmodes of `spec` on a mesh of `n_elements`
/// equal elements. Requires `n_elements >= 10 * p_max` so the highest
/// requested mode is resolved.
pub fn fem_eigenmodes(spec: &BeamSpec, p_max: usize, n_elements: usize) -> Result<Vec<MechMode>> {
    spec.validate()?;
    if p_max < 1 {
        return Err(Error::Domain("p_max must be at least 1".into()));
    }
    if n_elements < 10 * p_max {
        return Err(Error::Domain(format!(
            "n_elements = {n_elements} is too coarse for p_max = {p_max}; need at least {}",
            10 * p_max
        )));
    }

    let n_nodes = n_elements + 1;
    let n_dof = 2 * n_nodes;
    let le = spec.length / n_elements as f64;

    let mut k = DMatrix::<f64>::zeros(n_dof, n_dof);
    let mut m = DMatrix::<f64>::zeros(n_dof, n_dof);

    for e in 0..n_elements {
        let x_mid = (e as f64 + 0.5) * le;
        let area = spec.area_at(x_mid);
        let moment = spec.moment_at(x_mid);
        let ei = spec.youngs_modulus * moment;
        let tension = spec.stress * area;
        let mu = spec.density * area;

        let kb = bending_stiffness(ei, le);
        let kg = geometric_stiffness(tension, le);
        let me = consistent_mass(mu, le);

        let dofs = [2 * e, 2 * e + 1, 2 * e + 2, 2 * e + 3];
        for i in 0..4 {
            for j in 0..4 {
                k[(dofs[i], dofs[j])] += kb[i][j] + kg[i][j];
                m[(dofs[i], dofs[j])] += me[i][j];
            }
        }
    }

    let constrained = constrained_dofs(spec.boundary, n_nodes);
    let free: Vec<usize> = (0..n_dof).filter(|d| !constrained.contains(d)).collect();
    let (k_red, m_red) = reduce(&k, &m, &free);

    let chol = m_red
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Numerical("mass matrix is not positive definite".into()))?;
    let l_inv = chol
        .l()
        .try_inverse()
        .ok_or_else(|| Error::Numerical("mass Cholesky factor is singular".into()))?;
    let a = &l_inv * &k_red * l_inv.transpose();
    let a_sym = (&a + a.transpose()) * 0.5;

    let eig = nalgebra::SymmetricEigen::try_new(a_sym, 1e-12, 10_000).ok_or_else(|| {
        Error::Numerical(format!(
            "symmetric eigensolver did not converge on a {} x {} system after 10000 iterations",
            free.len(),
            free.len()
        ))
    })?;

    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let mut modes = Vec::with_capacity(p_max);
    for (rank, &idx) in order.iter().enumerate() {
        if rank >= p_max {
            break;
        }
        let lambda = eig.eigenvalues[idx];
        if lambda <= 0.0 {
            return Err(Error::Numerical(format!(
                "non-positive eigenvalue {lambda} at rank {rank}; check boundary conditions"
            )));
        }
        let frequency = lambda.sqrt() / (2.0 * std::f64::consts::PI);

        // Back-transform to physical DOFs and scatter to the full vector.
        let y = eig.eigenvectors.column(idx);
        let phi_red = l_inv.transpose() * y;
        let mut phi = DVector::<f64>::zeros(n_dof);
        for (i, &d) in free.iter().enumerate() {
            phi[d] = phi_red[i];
        }

        let shape_raw = sample_shape(&phi, spec.length, n_elements);
        let (shape, umax) = normalize_shape(shape_raw);

        // Discrete mass-weighted norm: phi^T M phi equals the quadrature of
        // rho A u^2 for the consistent mass matrix.
        let m_phi = &m * &phi;
        let m_eff = phi.dot(&m_phi) / (umax * umax);

        let alpha_zp = zero_point_amplitude(m_eff, frequency)?;
        let th = thermal_amplitude(m_eff, frequency, ROOM_TEMPERATURE)?;
        modes.push(MechMode {
            index: rank + 1,
            family: ModeFamily::Generic,
            frequency,
            shape,
            m_eff,
            alpha_zp,
            alpha_th_rms: th.classical_rms,
            temperature: ROOM_TEMPERATURE,
            q: spec.quality_factor,
        });
    }
    Ok(modes)
}

fn bending_stiffness(ei: f64, le: f64) -> [[f64; 4]; 4] {
    let c = ei / le.powi(3);
    let l = le;
    [
        [12.0 * c, 6.0 * l * c, -12.0 * c, 6.0 * l * c],
        [6.0 * l * c, 4.0 * l * l * c, -6.0 * l * c, 2.0 * l * l * c],
        [-12.0 * c, -6.0 * l * c, 12.0 * c, -6.0 * l * c],
        [6.0 * l * c, 2.0 * l * l * c, -6.0 * l * c, 4.0 * l * l * c],
    ]
}

fn geometric_stiffness(tension: f64, le: f64) -> [[f64; 4]; 4] {
    let c = tension / (30.0 * le);
    let l = le;
    [
        [36.0 * c, 3.0 * l * c, -36.0 * c, 3.0 * l * c],
        [3.0 * l * c, 4.0 * l * l * c, -3.0 * l * c, -l * l * c],
        [-36.0 * c, -3.0 * l * c, 36.0 * c, -3.0 * l * c],
        [3.0 * l * c, -l * l * c, -3.0 * l * c, 4.0 * l * l * c],
    ]
}

fn consistent_mass(mu: f64, le: f64) -> [[f64; 4]; 4] {
    let c = mu * le / 420.0;
    let l = le;
    [
        [156.0 * c, 22.0 * l * c, 54.0 * c, -13.0 * l * c],
        [22.0 * l * c, 4.0 * l * l * c, 13.0 * l * c, -3.0 * l * l * c],
        [54.0 * c, 13.0 * l * c, 156.0 * c, -22.0 * l * c],
        [-13.0 * l * c, -3.0 * l * l * c, -22.0 * l * c, 4.0 * l * l * c],
    ]
}

fn constrained_dofs(bc: BoundaryCondition, n_nodes: usize) -> Vec<usize> {
    let last = n_nodes - 1;
    match bc {
        BoundaryCondition::HingedHinged => vec![0, 2 * last],
        BoundaryCondition::ClampedClamped => vec![0, 1, 2 * last, 2 * last + 1],
    }
}

fn reduce(k: &DMatrix<f64>, m: &DMatrix<f64>, free: &[usize]) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = free.len();
    let mut kr = DMatrix::<f64>::zeros(n, n);
    let mut mr = DMatrix::<f64>::zeros(n, n);
    for (i, &gi) in free.iter().enumerate() {
        for (j, &gj) in free.iter().enumerate() {
            kr[(i, j)] = k[(gi, gj)];
            mr[(i, j)] = m[(gi, gj)];
        }
    }
    (kr, mr)
}

/// Hermite interpolation of the deflection on each element.
fn sample_shape(phi: &DVector<f64>, length: f64, n_elements: usize) -> Vec<(f64, f64)> {
    let le = length / n_elements as f64;
    let per = SAMPLES_PER_ELEMENT;
    let mut out = Vec::with_capacity(n_elements * per + 1);
    for e in 0..n_elements {
        let w1 = phi[2 * e];
        let t1 = phi[2 * e + 1];
        let w2 = phi[2 * e + 2];
        let t2 = phi[2 * e + 3];
        for s in 0..per {
            let xi = s as f64 / per as f64;
            let x = (e as f64 + xi) * le;
            out.push((x, hermite(w1, t1, w2, t2, xi, le)));
        }
    }
    let n = phi.len();
    out.push((length, phi[n - 2]));
    out
}

fn hermite(w1: f64, t1: f64, w2: f64, t2: f64, xi: f64, le: f64) -> f64 {
    let xi2 = xi * xi;
    let xi3 = xi2 * xi;
    let h1 = 1.0 - 3.0 * xi2 + 2.0 * xi3;
    let h2 = le * (xi - 2.0 * xi2 + xi3);
    let h3 = 3.0 * xi2 - 2.0 * xi3;
    let h4 = le * (xi3 - xi2);
    h1 * w1 + h2 * t1 + h3 * w2 + h4 * t2
}

/// Scale so max |u| = 1 with the first antinode positive; returns the shape
/// and the pre-normalization peak magnitude.
fn normalize_shape(mut shape: Vec<(f64, f64)>) -> (Vec<(f64, f64)>, f64) {
    let umax = shape.iter().map(|(_, u)| u.abs()).fold(0.0, f64::max);
    let anchor = shape
        .iter()
        .find(|(_, u)| u.abs() >= umax * (1.0 - 1e-12))
        .map(|(_, u)| *u)
        .unwrap_or(1.0);
    for (_, u) in shape.iter_mut() {
        *u /= anchor;
    }
    (shape, umax.abs())
}
