//! Band-edge optical dispersion, the finite-structure resonance ladder,
//! geometry-to-frequency transduction coefficients, and moving-boundary
//! perturbation theory with its brute-force 1D validation oracle.

mod dispersion;
mod helmholtz;
mod moving_boundary;

pub use dispersion::{
    coupling_from_slope, delta_kx, resonance_ladder, rung_band_edge_sensitivity, xi_dispersive,
    DispersionSpec,
};
pub use helmholtz::{helmholtz_oracle, HelmholtzSolution, SlabCavity};
pub use moving_boundary::{
    moving_boundary_shift, BoundaryShift, MovingBoundaryInput, SurfaceSample,
};
