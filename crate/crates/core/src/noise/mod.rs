//! Thermal motion, noise spectral densities, sensitivity figures, and the
//! DSP primitives (Butterworth bandpass, Welch PSD) used in trace analysis.

mod filter;
mod langevin;
mod psd;
mod report;
mod welch;

pub use filter::{
    analog_double_pass_power_gain, butterworth_bandpass, design_bandpass, BandpassFilter,
    SosSection,
};
pub use langevin::{langevin_trajectory, LangevinParams, Trajectory};
pub use psd::{displacement_psd, force_sensitivity, thermal_position_instability};
pub use report::{sql_report, ProbeReadout, ReferenceBenchmarks, SqlReport, GROUND_STATE_QF_HZ};
pub use welch::{segment_length_for_rbw, welch_psd};
