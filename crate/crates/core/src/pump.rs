//! Classical pump steady state from input-output theory and the effective
//! photon–phonon coupling it induces.
//!
//! The pump mode obeys `ȧ = −iΔ a + √u c_in` in the frame of the drive, with
//! complex detuning `Δ = ω_mode − ω_p − i(u + γ/2)`. Its steady state is
//! `a = √u c_in / (iΔ)`. Pump depletion is neglected.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::waveguide::WaveguideParams;

/// External drive of the pump mode. The input amplitude is taken real and
/// positive, `μ = √n_in`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpDrive {
    /// Drive frequency [Hz].
    pub omega_p: f64,
    /// Input photon flux `n_in` [photons/s].
    pub flux_in: f64,
}

impl PumpDrive {
    pub fn new(omega_p: f64, flux_in: f64) -> Result<Self> {
        if !(flux_in >= 0.0) || !flux_in.is_finite() {
            return Err(Error::invalid(
                "flux_in",
                format!("must be finite and non-negative, got {flux_in}"),
            ));
        }
        if !omega_p.is_finite() {
            return Err(Error::invalid(
                "omega_p",
                format!("must be finite, got {omega_p}"),
            ));
        }
        Ok(PumpDrive { omega_p, flux_in })
    }

    /// `μ = √n_in` [√(photons/s)].
    pub fn amplitude_in(&self) -> f64 {
        self.flux_in.sqrt()
    }
}

/// Steady state of the driven pump mode.
///
/// `detuning` is the complex pump detuning `Δ_{k−q}`; it is unrelated to the
/// Bogoliubov gap of [`crate::bogoliubov`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpSteadyState {
    pub detuning: Complex64,
    pub intracavity_amplitude: Complex64,
    pub intracavity_number: f64,
    pub effective_coupling: Complex64,
}

/// `Δ = (ω_mode − ω_p) − i(u + γ/2)`.
pub fn pump_detuning(omega_pump_mode: f64, omega_p: f64, u: f64, gamma: f64) -> Result<Complex64> {
    let linewidth = u + 0.5 * gamma;
    if !(linewidth > 0.0) {
        return Err(Error::DegenerateLinewidth { linewidth });
    }
    Ok(Complex64::new(omega_pump_mode - omega_p, -linewidth))
}

fn check_detuning(detuning: Complex64) -> Result<()> {
    if detuning.norm() == 0.0 || !detuning.is_finite() {
        return Err(Error::DegenerateLinewidth {
            linewidth: -detuning.im,
        });
    }
    Ok(())
}

/// Intracavity pump amplitude `λ = √u μ / (iΔ)`.
pub fn pump_steady_amplitude(drive: &PumpDrive, detuning: Complex64, u: f64) -> Result<Complex64> {
    check_detuning(detuning)?;
    Ok(u.sqrt() * drive.amplitude_in() / (Complex64::i() * detuning))
}

/// Effective coupling `f = g √u μ / (iΔ)`.
pub fn effective_coupling(
    g: f64,
    u: f64,
    drive: &PumpDrive,
    detuning: Complex64,
) -> Result<Complex64> {
    Ok(g * pump_steady_amplitude(drive, detuning, u)?)
}

/// Full steady state for a pump mode at `omega_pump_mode` driven by `drive`.
pub fn steady_state(
    params: &WaveguideParams,
    drive: &PumpDrive,
    omega_pump_mode: f64,
) -> Result<PumpSteadyState> {
    let detuning = pump_detuning(omega_pump_mode, drive.omega_p, params.u, params.gamma)?;
    let intracavity_amplitude = pump_steady_amplitude(drive, detuning, params.u)?;
    Ok(PumpSteadyState {
        detuning,
        intracavity_amplitude,
        intracavity_number: intracavity_amplitude.norm_sqr(),
        effective_coupling: params.g * intracavity_amplitude,
    })
}
