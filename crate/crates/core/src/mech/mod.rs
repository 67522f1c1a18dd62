//! Mechanical eigenmodes of high-tension nanobeams: analytic hinged-beam
//! ladder, 1D finite elements, effective masses and thermal amplitudes, and
//! the 1D phononic band structure of the periodic cell.

mod beam;
mod fem;
mod phononic;

pub use beam::{
    analytic_modes, dispersion_deviation, effective_mass, hinged_frequency, sine_shape,
    thermal_amplitude, zero_point_amplitude, BeamSpec, BoundaryCondition, CrossSectionSegment,
    MechMode, ModeFamily, ThermalAmplitude,
};
pub use fem::fem_eigenmodes;
pub use phononic::{
    cell_matrix, half_trace, phononic_bands, BandPoint, PhononicBands, PhononicCellSpec,
    PhononicSegment,
};
