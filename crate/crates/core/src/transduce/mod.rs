//! Motion-to-light transduction: dispersive phase accumulation, band-edge
//! cavity response, balanced-homodyne trace synthesis, and rms phase
//! metrology.

mod band_edge;
mod homodyne;
mod phase;
mod power;

pub use band_edge::{band_edge_response, BandEdgeParams, CavityResponse};
pub use homodyne::{rms_phase_estimate, synth_homodyne_trace, HomodyneTrace};
pub use phase::{phase_overlap, ProbeConfig, Regime, TransductionModel};
pub use power::PowerShiftModel;
