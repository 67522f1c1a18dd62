//! Physical constants (SI, CODATA 2018 exact values where defined).

/// Reduced Planck constant, J·s.
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Planck constant, J·s.
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Vacuum permittivity, F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.8541878128e-12;

/// Default bath temperature for room-temperature estimates, K.
pub const ROOM_TEMPERATURE: f64 = 300.0;
