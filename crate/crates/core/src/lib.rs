//! Desk-scale physics chain of a suspended double-nanobeam photonic crystal
//! waveguide: tensioned-beam mechanical eigenmodes, thermally driven motion
//! and its noise spectra, band-edge optical dispersion and optomechanical
//! coupling rates, and balanced-homodyne measurement synthesis.
//!
//! Conventions adopted throughout:
//!
//! * strict SI units internally; unit suffixes only at the config boundary;
//! * spectral densities are one-sided unless a function explicitly says
//!   otherwise (the two figures quoted in the symmetrized convention are
//!   [`noise::thermal_position_instability`] and [`noise::force_sensitivity`]);
//! * every stochastic path is reproducible from an explicit seed.

// Validation deliberately writes `!(x > 0.0)` instead of `x <= 0.0`: the
// negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod constants;
pub mod error;
pub mod io;
pub mod mech;
pub mod noise;
pub mod optics;
pub mod scenario;
pub mod spectrum;
pub mod transduce;
pub mod units;

pub use error::{Error, Result};
