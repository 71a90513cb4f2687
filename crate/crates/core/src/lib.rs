//! Photon–phonon squeezing in nanoscale waveguides driven by stimulated
//! Brillouin scattering.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`waveguide`]: linear photon and acoustic-phonon dispersions and the
//!    phase-matching solver for a (pump, signal, phonon) triple.
//! 2. [`pump`]: input-output steady state of the classically driven pump mode
//!    and the effective photon–phonon coupling `f` it induces.
//! 3. [`bogoliubov`]: diagonalization of
//!    `H = ω a†a + Ω b†b + f (ab + a†b†)` into two collective modes.
//! 4. [`squeezing`]: closed-form statistics of the two-mode squeezed vacuum.
//!
//! [`focksim`] rebuilds every statistic numerically on a truncated two-mode
//! Fock space and serves as an independent oracle for the closed forms.
//!
//! # Units
//!
//! All frequencies are *ordinary* frequencies in Hz (cycles per second), not
//! angular frequencies. Thermal occupations use `h·f`, not `ħ·2πf`.
//! Quadratures follow `X = (o + o†)/√2`, `Y = (o − o†)/(i√2)`, so the vacuum
//! variance is ½.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bogoliubov;
pub mod error;
pub mod focksim;
pub mod pump;
pub mod squeezing;
pub mod units;
pub mod waveguide;

pub use bogoliubov::{diagonalize, BogoliubovCoeffs, HamiltonianCoefficients, SqueezeSpec};
pub use error::{Error, Result};
pub use focksim::{TruncatedFockSpace, TruncationReport, TwoModeState};
pub use pump::{PumpDrive, PumpSteadyState};
pub use squeezing::{CrossMoments, ModeStats, MomentTable, ThermalEnv, ThermalOccupation};
pub use waveguide::{Branch, BrillouinTriple, Geometry, WaveguideParams};

pub use num_complex::Complex64;
