//! Linear photon and acoustic-phonon dispersions of a single transverse mode
//! and the Brillouin phase-matching solver.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical configuration of the waveguide. All rates are ordinary
/// frequencies in Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveguideParams {
    /// Photon reference frequency around which the dispersion is linearized.
    pub omega0: f64,
    /// Photon group velocity [m/s].
    pub vg: f64,
    /// Acoustic (sound) velocity [m/s].
    pub va: f64,
    /// Waveguide length [m].
    pub length: f64,
    /// Brillouin coupling in the local-field approximation.
    pub g: f64,
    /// Mirror coupling between the external and waveguide fields.
    pub u: f64,
    /// Photon damping rate into free space.
    pub gamma: f64,
}

impl WaveguideParams {
    /// Checks `vg > va > 0`, `length > 0` and non-negative rates.
    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("omega0", self.omega0),
            ("vg", self.vg),
            ("va", self.va),
            ("length", self.length),
            ("g", self.g),
            ("u", self.u),
            ("gamma", self.gamma),
        ];
        for (name, value) in finite {
            if !value.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {value}")));
            }
        }
        if self.va <= 0.0 {
            return Err(Error::invalid(
                "va",
                format!("must be positive, got {}", self.va),
            ));
        }
        if self.vg <= self.va {
            return Err(Error::invalid(
                "vg",
                format!("must exceed va = {} m/s, got {}", self.va, self.vg),
            ));
        }
        if self.length <= 0.0 {
            return Err(Error::invalid(
                "length",
                format!("must be positive, got {}", self.length),
            ));
        }
        for (name, value) in [("g", self.g), ("u", self.u), ("gamma", self.gamma)] {
            if value < 0.0 {
                return Err(Error::invalid(
                    name,
                    format!("must be non-negative, got {value}"),
                ));
            }
        }
        Ok(())
    }
}

/// Which linear photon branch a wavenumber sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `ω = ω₀ + v_g k`
    Forward,
    /// `ω = ω₀ − v_g k`
    Backward,
}

/// Scattering geometry of the signal photon relative to the pump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    /// Signal on the opposite-sign branch; the phonon carries `q ≈ 2 k_pump`.
    #[default]
    Backward,
    /// Signal on the pump's own branch; only the degenerate `q = 0` solution
    /// exists.
    Forward,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Geometry::Backward => f.write_str("backward"),
            Geometry::Forward => f.write_str("forward"),
        }
    }
}

/// A phase-matched pump → signal + phonon triple.
///
/// Momentum conservation `k_pump = k_signal + q_phonon` holds by construction;
/// energy conservation holds to solver precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BrillouinTriple {
    pub k_pump: f64,
    pub k_signal: f64,
    pub q_phonon: f64,
    pub omega_pump: f64,
    pub omega_signal: f64,
    pub omega_phonon: f64,
}

impl BrillouinTriple {
    /// `|ω_pump − ω_signal − Ω| / ω_pump`.
    pub fn energy_residual(&self) -> f64 {
        let scale = self.omega_pump.abs().max(f64::MIN_POSITIVE);
        (self.omega_pump - self.omega_signal - self.omega_phonon).abs() / scale
    }

    /// `|k_pump − k_signal − q| / |k_pump|`, zero for the trivial triple.
    pub fn momentum_residual(&self) -> f64 {
        let diff = (self.k_pump - self.k_signal - self.q_phonon).abs();
        if self.k_pump == 0.0 {
            diff
        } else {
            diff / self.k_pump.abs()
        }
    }
}

pub fn photon_frequency(params: &WaveguideParams, k: f64, branch: Branch) -> f64 {
    match branch {
        Branch::Forward => params.omega0 + params.vg * k,
        Branch::Backward => params.omega0 - params.vg * k,
    }
}

/// Acoustic frequency `v_a |q|`; even in `q`.
pub fn phonon_frequency(params: &WaveguideParams, q: f64) -> f64 {
    params.va * q.abs()
}

/// Quantized wavenumbers `2πn/L` for `n_min ≤ n ≤ n_max`.
pub fn allowed_wavenumbers(params: &WaveguideParams, n_min: i64, n_max: i64) -> Result<Vec<f64>> {
    if n_min > n_max {
        return Err(Error::invalid(
            "n_min",
            format!("must not exceed n_max ({n_min} > {n_max})"),
        ));
    }
    let step = 2.0 * PI / params.length;
    Ok((n_min..=n_max).map(|n| step * n as f64).collect())
}

/// Solves energy and momentum conservation for a pump photon at `k_pump` on
/// the forward branch scattering into a signal photon and an acoustic phonon.
///
/// In the backward geometry the signal lands on the backward branch and the
/// phonon takes `q = 2 k_pump v_g / (v_g + v_a)`. In the forward geometry the
/// two photon dispersions are parallel, so only the degenerate `q = 0` triple
/// conserves both quantities.
pub fn phase_match(
    params: &WaveguideParams,
    k_pump: f64,
    geometry: Geometry,
) -> Result<BrillouinTriple> {
    let (vg, va) = (params.vg, params.va);
    // sign of q equals sign of k_pump in both geometries (vg > va)
    let sign = if k_pump < 0.0 { -1.0 } else { 1.0 };
    let (k_signal, signal_branch) = match geometry {
        Geometry::Backward => {
            let denom = vg + sign * va;
            if denom == 0.0 {
                return Err(Error::NoSolution { geometry, vg, va });
            }
            (k_pump * (sign * va - vg) / denom, Branch::Backward)
        }
        Geometry::Forward => {
            // v_g q = v_a |q| has a non-trivial root only when v_g = v_a
            if vg == va {
                return Err(Error::NoSolution { geometry, vg, va });
            }
            (k_pump, Branch::Forward)
        }
    };
    let q_phonon = k_pump - k_signal;
    Ok(BrillouinTriple {
        k_pump,
        k_signal,
        q_phonon,
        omega_pump: photon_frequency(params, k_pump, Branch::Forward),
        omega_signal: photon_frequency(params, k_signal, signal_branch),
        omega_phonon: phonon_frequency(params, q_phonon),
    })
}

/// Pump wavenumber whose backward-scattered phonon has frequency
/// `phonon_frequency`. Inverse of [`phase_match`] on the phonon leg.
pub fn pump_wavenumber_for_phonon(
    params: &WaveguideParams,
    phonon_frequency: f64,
    geometry: Geometry,
) -> Result<f64> {
    if !(phonon_frequency >= 0.0) || !phonon_frequency.is_finite() {
        return Err(Error::invalid(
            "phonon_frequency",
            format!("must be finite and non-negative, got {phonon_frequency}"),
        ));
    }
    match geometry {
        Geometry::Backward => {
            let q = phonon_frequency / params.va;
            Ok(q * (params.vg + params.va) / (2.0 * params.vg))
        }
        Geometry::Forward if phonon_frequency == 0.0 => Ok(0.0),
        Geometry::Forward => Err(Error::invalid(
            "phonon_frequency",
            "forward geometry only phase-matches the degenerate Omega = 0 triple",
        )),
    }
}
