//! Physical constants (exact SI values).

/// Planck constant [J·s].
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Boltzmann constant [J/K].
pub const BOLTZMANN: f64 = 1.380_649e-23;
