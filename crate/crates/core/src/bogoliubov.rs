//! Bogoliubov diagonalization of the two-mode squeezing Hamiltonian
//!
//! ```text
//! H/ħ = ω a†a + Ω b†b + f (ab + a†b†)
//! ```
//!
//! with `α = cosh r a + sinh r b†`, `β = cosh r b + sinh r a†`. The squeeze
//! parameter is fixed by `tanh 2r = f / ω̄`, `ω̄ = (ω + Ω)/2`, and the
//! collective frequencies are `ω_α = Δ + δ`, `ω_β = Δ − δ` with the gap
//! `Δ = √(ω̄² − f²)` and `δ = (ω − Ω)/2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Diagonalized two-mode squeezing Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezeSpec {
    /// Signal frame frequency `ω = ω_pump − ω_signal`.
    pub omega: f64,
    /// Phonon frequency `Ω`.
    pub phonon: f64,
    /// Real, non-negative effective coupling.
    pub f: f64,
    pub omega_bar: f64,
    pub delta: f64,
    /// Bogoliubov gap `√(ω̄² − f²)`.
    pub gap: f64,
    pub r: f64,
    pub omega_alpha: f64,
    pub omega_beta: f64,
    /// Vacuum energy shift `gap − ω̄ ≤ 0`.
    pub omega_0: f64,
}

/// `(cosh r, sinh r)` of the Bogoliubov transformation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BogoliubovCoeffs {
    pub cosh: f64,
    pub sinh: f64,
}

impl BogoliubovCoeffs {
    pub fn from_r(r: f64) -> Self {
        BogoliubovCoeffs {
            cosh: r.cosh(),
            sinh: r.sinh(),
        }
    }

    /// `cosh²r − sinh²r − 1`; zero for a canonical transformation.
    pub fn symplectic_defect(&self) -> f64 {
        (self.cosh - self.sinh) * (self.cosh + self.sinh) - 1.0
    }
}

/// The four coefficients of the Hamiltonian rewritten in the `α, β` modes at
/// an arbitrary trial `r`:
///
/// `H = identity·𝟙 + alpha·α†α + beta·β†β + offdiag·(αβ + α†β†)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianCoefficients {
    pub identity: f64,
    pub alpha: f64,
    pub beta: f64,
    pub offdiag: f64,
}

pub fn diagonalize(omega: f64, phonon: f64, f: f64) -> Result<SqueezeSpec> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::invalid(
            "omega",
            format!("must be positive and finite, got {omega}"),
        ));
    }
    if !(phonon > 0.0) || !phonon.is_finite() {
        return Err(Error::invalid(
            "Omega",
            format!("phonon frequency must be positive and finite, got {phonon}"),
        ));
    }
    if !(f >= 0.0) || !f.is_finite() {
        return Err(Error::invalid(
            "f",
            format!("must be real, finite and non-negative, got {f}"),
        ));
    }
    let omega_bar = 0.5 * (omega + phonon);
    if omega_bar <= f {
        return Err(Error::Unstable { omega_bar, f });
    }
    let delta = 0.5 * (omega - phonon);
    let gap = ((omega_bar - f) * (omega_bar + f)).sqrt();
    let r = 0.5 * (f / omega_bar).atanh();
    Ok(SqueezeSpec {
        omega,
        phonon,
        f,
        omega_bar,
        delta,
        gap,
        r,
        omega_alpha: gap + delta,
        omega_beta: gap - delta,
        // gap − ω̄ without cancellation
        omega_0: -f * f / (gap + omega_bar),
    })
}

/// `cosh r = √((ω̄+Δ)/(2Δ))`, `sinh r = √((ω̄−Δ)/(2Δ))`.
pub fn transform_coeffs(spec: &SqueezeSpec) -> BogoliubovCoeffs {
    let (w, gap) = (spec.omega_bar, spec.gap);
    // ω̄ − Δ = f²/(ω̄ + Δ)
    let w_minus_gap = spec.f * spec.f / (w + gap);
    BogoliubovCoeffs {
        cosh: ((w + gap) / (2.0 * gap)).sqrt(),
        sinh: (w_minus_gap / (2.0 * gap)).sqrt(),
    }
}

pub fn hamiltonian_coefficients(
    omega: f64,
    phonon: f64,
    f: f64,
    r_test: f64,
) -> HamiltonianCoefficients {
    let (c, s) = (r_test.cosh(), r_test.sinh());
    let (c2, s2, cs) = (c * c, s * s, c * s);
    HamiltonianCoefficients {
        identity: (omega + phonon) * s2 - 2.0 * f * cs,
        alpha: omega * c2 + phonon * s2 - 2.0 * f * cs,
        beta: phonon * c2 + omega * s2 - 2.0 * f * cs,
        offdiag: -((omega + phonon) * cs - f * (c2 + s2)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GHZ: f64 = 1e9;

    #[test]
    fn worked_example() {
        let spec = diagonalize(10.0 * GHZ, 10.0 * GHZ, 1.0 * GHZ).unwrap();
        let c = transform_coeffs(&spec);
        assert!((spec.r - 0.0501).abs() < 1e-4);
        assert!((c.cosh * c.cosh - 1.0025).abs() < 1e-4);
        assert!((c.sinh * c.sinh - 0.0025).abs() < 1e-4);
        assert!((spec.r.tanh() - 0.05).abs() < 1e-3);
        // √99 GHz
        assert!((spec.gap - 9.949_874_371_066_2 * GHZ).abs() < 1.0);
        assert_eq!(spec.omega_alpha, spec.gap);
        assert_eq!(spec.omega_beta, spec.gap);
    }

    #[test]
    fn decoupled_modes() {
        let spec = diagonalize(3.0, 5.0, 0.0).unwrap();
        assert_eq!(spec.r, 0.0);
        assert_eq!(spec.omega_alpha, 3.0);
        assert_eq!(spec.omega_beta, 5.0);
        assert_eq!(spec.omega_0, 0.0);
        let c = transform_coeffs(&spec);
        assert_eq!((c.cosh, c.sinh), (1.0, 0.0));
    }

    #[test]
    fn product_of_coefficients() {
        let spec = diagonalize(10.0 * GHZ, 10.0 * GHZ, 1.0 * GHZ).unwrap();
        let c = transform_coeffs(&spec);
        let expected = 1.0 / (2.0 * 99f64.sqrt());
        assert!((c.cosh * c.sinh - expected).abs() < 1e-12);
        assert!((expected - 0.05025).abs() < 1e-5);
        let via_r = spec.r.cosh() * spec.r.sinh();
        assert!((c.cosh * c.sinh - via_r).abs() < 1e-12);
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(diagonalize(0.0, 1.0, 0.0).is_err());
        assert!(diagonalize(1.0, -1.0, 0.0).is_err());
        assert!(diagonalize(1.0, 1.0, -0.5).is_err());
        assert!(diagonalize(1.0, 1.0, f64::NAN).is_err());
        assert!(matches!(
            diagonalize(1.0, 1.0, 1.0),
            Err(Error::Unstable { .. })
        ));
    }

    #[test]
    fn coefficients_at_identity_transform() {
        let h = hamiltonian_coefficients(7.0, 3.0, 2.0, 0.0);
        assert_eq!(
            h,
            HamiltonianCoefficients {
                identity: 0.0,
                alpha: 7.0,
                beta: 3.0,
                offdiag: 2.0
            }
        );
    }

    #[test]
    fn coefficients_at_optimum() {
        let (w, p, f) = (10.0 * GHZ, 10.0 * GHZ, 1.0 * GHZ);
        let spec = diagonalize(w, p, f).unwrap();
        let h = hamiltonian_coefficients(w, p, f, spec.r);
        assert!(h.offdiag.abs() < 1e-10 * (w + p));
        assert!((h.alpha - spec.omega_alpha).abs() < 1e-10 * (w + p));
        assert!((h.beta - spec.omega_beta).abs() < 1e-10 * (w + p));
        assert!((h.identity - spec.omega_0).abs() < 1e-10 * (w + p));
        assert!((spec.omega_0 + 0.050_125_628_933_8 * GHZ).abs() < 1e-3);
    }

    #[test]
    fn offdiag_changes_sign_across_optimum() {
        let spec = diagonalize(8.0, 12.0, 4.0).unwrap();
        let below = hamiltonian_coefficients(8.0, 12.0, 4.0, 0.9 * spec.r).offdiag;
        let above = hamiltonian_coefficients(8.0, 12.0, 4.0, 1.1 * spec.r).offdiag;
        assert!(below > 0.0 && above < 0.0);
    }

    #[test]
    fn stability_boundary() {
        let w = 10.0 * GHZ;
        assert!(diagonalize(w, w, w * (1.0 - 1e-12)).is_ok());
        assert!(matches!(diagonalize(w, w, w), Err(Error::Unstable { .. })));
        assert!(matches!(
            diagonalize(w, w, w * (1.0 + 1e-12)),
            Err(Error::Unstable { .. })
        ));
    }
}
