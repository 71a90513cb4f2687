//! Closed-form statistics of the two-mode squeezed vacuum
//! `|r⟩ = S(r)|0,0⟩ = (1/cosh r) Σ tanh^n r |n,n⟩`.
//!
//! Modes `a` (photon) and `b` (phonon) are the independent modes; `c = (a−b)/√2`
//! and `d = (a+b)/√2` are the mixed modes. Quadratures use the √2 convention
//! so the vacuum variance is ½ and the squeezing parameter is
//! `S = (ΔX)² − ½`; negative `S` means squeezing below vacuum noise.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{BOLTZMANN, PLANCK};

/// Moments and uncertainties of the `X` and `Y` quadratures of one mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeStats {
    pub mean_x: f64,
    pub mean_y: f64,
    /// `⟨X²⟩`
    pub second_x: f64,
    /// `⟨Y²⟩`
    pub second_y: f64,
    pub delta_x: f64,
    pub delta_y: f64,
    /// `ΔX·ΔY`
    pub heisenberg: f64,
    pub squeeze_x: f64,
    pub squeeze_y: f64,
}

impl ModeStats {
    /// Derives uncertainties and squeezing parameters from raw moments.
    pub fn from_moments(mean_x: f64, mean_y: f64, second_x: f64, second_y: f64) -> Self {
        let var_x = second_x - mean_x * mean_x;
        let var_y = second_y - mean_y * mean_y;
        let (delta_x, delta_y) = (var_x.max(0.0).sqrt(), var_y.max(0.0).sqrt());
        ModeStats {
            mean_x,
            mean_y,
            second_x,
            second_y,
            delta_x,
            delta_y,
            heisenberg: delta_x * delta_y,
            squeeze_x: var_x - 0.5,
            squeeze_y: var_y - 0.5,
        }
    }

    /// Quadrature noise relative to vacuum in dB, `10 log₁₀((ΔX)²/½)`.
    pub fn db_x(&self) -> f64 {
        10.0 * (2.0 * self.delta_x * self.delta_x).log10()
    }

    pub fn db_y(&self) -> f64 {
        10.0 * (2.0 * self.delta_y * self.delta_y).log10()
    }
}

/// Normally ordered two-mode correlators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossMoments {
    pub a_dag_a: f64,
    pub b_dag_b: f64,
    pub c_dag_c: f64,
    pub d_dag_d: f64,
    pub ab: Complex64,
    pub a_dag_b: Complex64,
    pub a_sq: Complex64,
    pub b_sq: Complex64,
    pub c_sq: Complex64,
    pub d_sq: Complex64,
}

/// Every first and second moment of `|r⟩` that the squeezing analysis uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentTable {
    pub r: f64,
    pub a: ModeStats,
    pub b: ModeStats,
    pub c: ModeStats,
    pub d: ModeStats,
    pub cross: CrossMoments,
}

impl MomentTable {
    /// Flattened `(name, value)` view; complex correlators contribute their
    /// real and imaginary parts.
    pub fn entries(&self) -> Vec<(String, f64)> {
        let mut out = Vec::with_capacity(48);
        for (mode, s) in [
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("d", &self.d),
        ] {
            let fields = [
                ("mean_x", s.mean_x),
                ("mean_y", s.mean_y),
                ("second_x", s.second_x),
                ("second_y", s.second_y),
                ("delta_x", s.delta_x),
                ("delta_y", s.delta_y),
                ("heisenberg", s.heisenberg),
                ("squeeze_x", s.squeeze_x),
                ("squeeze_y", s.squeeze_y),
            ];
            out.extend(fields.iter().map(|(k, v)| (format!("{mode}.{k}"), *v)));
        }
        let x = &self.cross;
        for (k, v) in [
            ("a_dag_a", x.a_dag_a),
            ("b_dag_b", x.b_dag_b),
            ("c_dag_c", x.c_dag_c),
            ("d_dag_d", x.d_dag_d),
        ] {
            out.push((format!("cross.{k}"), v));
        }
        for (k, v) in [
            ("ab", x.ab),
            ("a_dag_b", x.a_dag_b),
            ("a_sq", x.a_sq),
            ("b_sq", x.b_sq),
            ("c_sq", x.c_sq),
            ("d_sq", x.d_sq),
        ] {
            out.push((format!("cross.{k}.re"), v.re));
            out.push((format!("cross.{k}.im"), v.im));
        }
        out
    }

    /// Largest absolute entry-wise difference, together with the entry name.
    pub fn max_deviation(&self, other: &MomentTable) -> (String, f64) {
        self.entries()
            .into_iter()
            .zip(other.entries())
            .map(|((name, lhs), (_, rhs))| (name, (lhs - rhs).abs()))
            .fold((String::new(), 0.0), |best, cur| {
                if cur.1 > best.1 || cur.1.is_nan() {
                    cur
                } else {
                    best
                }
            })
    }
}

/// `P_n = tanh^{2n} r / cosh² r`, the probability of `n` photon–phonon pairs.
pub fn pair_probability(r: f64, n: u32) -> f64 {
    let t2 = r.tanh().powi(2);
    t2.powi(n as i32) / r.cosh().powi(2)
}

fn check_r(r: f64) -> Result<()> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::invalid(
            "r",
            format!("must be finite and non-negative, got {r}"),
        ));
    }
    Ok(())
}

fn closed_form(
    second_x: f64,
    second_y: f64,
    delta_x: f64,
    delta_y: f64,
    squeeze_x: f64,
    squeeze_y: f64,
) -> ModeStats {
    ModeStats {
        mean_x: 0.0,
        mean_y: 0.0,
        second_x,
        second_y,
        delta_x,
        delta_y,
        heisenberg: delta_x * delta_y,
        squeeze_x,
        squeeze_y,
    }
}

/// Photon (`a`) and phonon (`b`) statistics: both quadratures have variance
/// `½ cosh 2r`, so neither mode alone is squeezed.
pub fn independent_moments(r: f64) -> Result<(ModeStats, ModeStats)> {
    check_r(r)?;
    let s2 = r.sinh().powi(2);
    let second = 0.5 + s2;
    let delta = second.sqrt();
    let stats = closed_form(second, second, delta, delta, s2, s2);
    Ok((stats, stats))
}

/// Mixed-mode statistics: `X_c` and `Y_d` are squeezed to `½e^{−2r}`, their
/// conjugates anti-squeezed to `½e^{2r}`.
pub fn mixed_moments(r: f64) -> Result<(ModeStats, ModeStats)> {
    check_r(r)?;
    let low = 0.5 * (-2.0 * r).exp();
    let high = 0.5 * (2.0 * r).exp();
    let (d_low, d_high) = ((-r).exp() / 2f64.sqrt(), r.exp() / 2f64.sqrt());
    let (s_low, s_high) = (0.5 * (-2.0 * r).exp_m1(), 0.5 * (2.0 * r).exp_m1());
    let c = closed_form(low, high, d_low, d_high, s_low, s_high);
    let d = closed_form(high, low, d_high, d_low, s_high, s_low);
    Ok((c, d))
}

pub fn correlation_moments(r: f64) -> Result<CrossMoments> {
    check_r(r)?;
    let s2 = r.sinh().powi(2);
    let cs = r.cosh() * r.sinh();
    let zero = Complex64::new(0.0, 0.0);
    Ok(CrossMoments {
        a_dag_a: s2,
        b_dag_b: s2,
        c_dag_c: s2,
        d_dag_d: s2,
        ab: Complex64::new(cs, 0.0),
        a_dag_b: zero,
        a_sq: zero,
        b_sq: zero,
        c_sq: Complex64::new(-cs, 0.0),
        d_sq: Complex64::new(cs, 0.0),
    })
}

/// The full analytic [`MomentTable`] of `|r⟩`.
pub fn analytic_moments(r: f64) -> Result<MomentTable> {
    let (a, b) = independent_moments(r)?;
    let (c, d) = mixed_moments(r)?;
    Ok(MomentTable {
        r,
        a,
        b,
        c,
        d,
        cross: correlation_moments(r)?,
    })
}

/// Truncation of `|r⟩` to its first `order + 1` pair terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BellExpansion {
    /// `tanh r`; the expansion is only meaningful when this is small.
    pub tanh_r: f64,
    /// Normalized amplitudes of `|0,0⟩ … |order,order⟩`.
    pub coefficients: Vec<f64>,
    /// Probability weight `Σ_{n>order} P_n = tanh^{2(order+1)} r` dropped by
    /// the truncation.
    pub discarded_weight: f64,
}

pub fn bell_expansion(r: f64, order: u32) -> Result<BellExpansion> {
    check_r(r)?;
    let t = r.tanh();
    let raw: Vec<f64> = (0..=order).map(|n| t.powi(n as i32)).collect();
    let norm = raw.iter().map(|c| c * c).sum::<f64>().sqrt();
    Ok(BellExpansion {
        tanh_r: t,
        coefficients: raw.into_iter().map(|c| c / norm).collect(),
        discarded_weight: (t * t).powi(order as i32 + 1),
    })
}

/// Phonon bath parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalEnv {
    /// Phonon frequency [Hz].
    pub omega: f64,
    /// Temperature [K].
    pub temperature: f64,
    /// Phonon damping rate [Hz].
    pub gamma: f64,
}

impl ThermalEnv {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::invalid(
                "thermal.omega",
                format!("must be positive, got {}", self.omega),
            ));
        }
        if !(self.temperature >= 0.0) || !self.temperature.is_finite() {
            return Err(Error::invalid(
                "thermal.temperature",
                format!("must be non-negative, got {}", self.temperature),
            ));
        }
        if !(self.gamma > 0.0) || !self.gamma.is_finite() {
            return Err(Error::invalid(
                "thermal.gamma",
                format!("must be positive, got {}", self.gamma),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalOccupation {
    /// Bose–Einstein occupation `1/(exp(hΩ/k_B T) − 1)`.
    pub n_bar: f64,
    /// Mechanical quality factor `Ω/Γ`.
    pub q_factor: f64,
}

/// Thermal phonon number and quality factor. `Ω` is an ordinary frequency,
/// so the quantum of energy is `h·Ω`.
pub fn thermal_occupation(env: &ThermalEnv) -> Result<ThermalOccupation> {
    env.validate()?;
    let n_bar = if env.temperature == 0.0 {
        0.0
    } else {
        1.0 / (PLANCK * env.omega / (BOLTZMANN * env.temperature)).exp_m1()
    };
    Ok(ThermalOccupation {
        n_bar,
        q_factor: env.omega / env.gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // r at f/ω̄ = 0.1
    fn example_r() -> f64 {
        0.5 * 0.1f64.atanh()
    }

    #[test]
    fn pair_probabilities_worked_example() {
        let r = example_r();
        assert!((pair_probability(r, 0) - 0.9975).abs() < 1e-4);
        assert!((pair_probability(r, 1) - 0.0025).abs() < 1e-4);
        assert!((pair_probability(r, 2) - 6.25e-6).abs() / 6.25e-6 < 0.02);
    }

    #[test]
    fn vacuum_pairs() {
        assert_eq!(pair_probability(0.0, 0), 1.0);
        assert_eq!(pair_probability(0.0, 3), 0.0);
    }

    #[test]
    fn geometric_tail() {
        let r = 0.7;
        let n_max = 30;
        let partial: f64 = (0..=n_max).map(|n| pair_probability(r, n)).sum();
        let tail = r.tanh().powi(2 * (n_max as i32 + 1));
        assert!((1.0 - partial - tail).abs() < 1e-14);
        let mean: f64 = (0..400).map(|n| n as f64 * pair_probability(r, n)).sum();
        assert!((mean - r.sinh().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn independent_worked_example() {
        let (a, b) = independent_moments(example_r()).unwrap();
        for s in [a.squeeze_x, a.squeeze_y, b.squeeze_x, b.squeeze_y] {
            assert!((s - 0.0025).abs() < 1e-4);
        }
    }

    #[test]
    fn vacuum_statistics() {
        let t = analytic_moments(0.0).unwrap();
        for s in [t.a, t.b, t.c, t.d] {
            assert_eq!(s.second_x, 0.5);
            assert_eq!(s.second_y, 0.5);
            assert_eq!(s.squeeze_x, 0.0);
            assert_eq!(s.squeeze_y, 0.0);
            assert!((s.heisenberg - 0.5).abs() < 1e-15);
        }
        assert_eq!(t.cross.a_dag_a, 0.0);
        assert_eq!(t.cross.ab.norm(), 0.0);
    }

    #[test]
    fn independent_second_moment_value() {
        let (a, _) = independent_moments(0.3).unwrap();
        assert!((a.second_x - 0.5 * 0.6f64.cosh()).abs() < 1e-15);
        assert!((a.second_x - 0.592_73).abs() < 1e-4);
        assert!((a.heisenberg - 0.5 - 0.3f64.sinh().powi(2)).abs() < 1e-15);
    }

    #[test]
    fn mixed_worked_example() {
        let (c, d) = mixed_moments(example_r()).unwrap();
        assert!((c.squeeze_x + 0.0475).abs() < 5e-4);
        assert!((d.squeeze_y + 0.0475).abs() < 5e-4);
        assert!((c.squeeze_y - 0.0525).abs() < 5e-4);
        assert!((d.squeeze_x - 0.0525).abs() < 5e-4);
        assert_eq!(c.squeeze_x, d.squeeze_y);
    }

    #[test]
    fn mixed_second_moment_value() {
        let (c, _) = mixed_moments(0.3).unwrap();
        assert!((c.second_x - 0.274_41).abs() < 1e-5);
        // appendix form ½ − cosh r sinh r + sinh² r
        let appendix = 0.5 - 0.3f64.cosh() * 0.3f64.sinh() + 0.3f64.sinh().powi(2);
        assert!((c.second_x - appendix).abs() < 1e-15);
    }

    #[test]
    fn correlation_values() {
        let x = correlation_moments(0.3).unwrap();
        assert!((x.ab.re - 0.318_33).abs() < 1e-5);
        assert_eq!(x.c_sq, -x.d_sq);
        assert!((correlation_moments(example_r()).unwrap().a_dag_a - 0.0025).abs() < 1e-4);
    }

    #[test]
    fn sign_structure_on_grid() {
        for i in 1..=40 {
            let r = 0.05 * i as f64;
            let t = analytic_moments(r).unwrap();
            assert!(t.a.squeeze_x > 0.0 && t.b.squeeze_y > 0.0);
            assert!(t.c.squeeze_x < 0.0 && t.d.squeeze_y < 0.0);
            assert!((t.c.heisenberg - 0.5).abs() < 1e-12);
            assert!((t.a.delta_x * t.a.delta_y - 0.5 - r.sinh().powi(2)).abs() < 1e-12);
            assert!((t.c.second_x + t.d.second_x - 2.0 * t.a.second_x).abs() < 1e-12);
            assert!(
                ((1.0 + 2.0 * t.c.squeeze_x) * (1.0 + 2.0 * t.c.squeeze_y) - 1.0).abs() < 1e-12
            );
        }
    }

    #[test]
    fn from_moments_matches_closed_form() {
        let t = analytic_moments(0.4).unwrap();
        let s = ModeStats::from_moments(0.0, 0.0, t.c.second_x, t.c.second_y);
        assert!((s.squeeze_x - t.c.squeeze_x).abs() < 1e-15);
        assert!((s.heisenberg - 0.5).abs() < 1e-15);
        assert!((t.c.db_x() + t.c.db_y()).abs() < 1e-12);
    }

    #[test]
    fn bell_expansion_first_order() {
        let e = bell_expansion(0.05, 1).unwrap();
        let ratio = e.coefficients[1] / e.coefficients[0];
        assert!((ratio - 0.05f64.tanh()).abs() < 1e-15);
        assert!((ratio - 0.05).abs() < 1e-4);
        assert!((e.discarded_weight - 6.24e-6).abs() < 0.1e-6);
    }

    #[test]
    fn bell_expansion_vacuum_and_limit() {
        let e = bell_expansion(0.0, 4).unwrap();
        assert_eq!(e.coefficients, vec![1.0, 0.0, 0.0, 0.0, 0.0]);
        let r = 0.6;
        let e = bell_expansion(r, 200).unwrap();
        for n in 0..10 {
            let p = e.coefficients[n].powi(2) * (1.0 - e.discarded_weight);
            assert!((p - pair_probability(r, n as u32)).abs() < 1e-15);
        }
    }

    #[test]
    fn thermal_worked_example() {
        let env = ThermalEnv {
            omega: 10e9,
            temperature: 0.2,
            gamma: 1e6,
        };
        let occ = thermal_occupation(&env).unwrap();
        assert_eq!(occ.q_factor, 1e4);
        assert!((occ.n_bar - 0.0998).abs() < 1e-3);
    }

    #[test]
    fn thermal_ground_state() {
        let occ = thermal_occupation(&ThermalEnv {
            omega: 10e9,
            temperature: 0.0,
            gamma: 1e6,
        })
        .unwrap();
        assert_eq!(occ.n_bar, 0.0);
        let cold = thermal_occupation(&ThermalEnv {
            omega: 10e9,
            temperature: 1e-3,
            gamma: 1e6,
        })
        .unwrap();
        assert!(cold.n_bar < 1e-100);
        assert!(thermal_occupation(&ThermalEnv {
            omega: 10e9,
            temperature: 0.1,
            gamma: 0.0
        })
        .is_err());
    }

    #[test]
    fn negative_r_rejected() {
        assert!(analytic_moments(-0.1).is_err());
        assert!(bell_expansion(f64::NAN, 1).is_err());
    }
}
