//! Scenario files: one JSON document describing the waveguide, the drive,
//! the oracle settings and optionally a parameter sweep and a phonon bath.
//!
//! ```json
//! {
//!   "waveguide": { "omega0": "193 THz", "vg": 7e7, "va": 8433, "length": 0.01,
//!                  "g": "1 MHz", "u": "1 MHz", "gamma": "10 mHz" },
//!   "geometry": "backward",
//!   "drive": { "phonon_frequency": "10 GHz", "flux_in": 1e12, "detuning": 0 },
//!   "oracle": { "enabled": true, "cutoff": null, "tolerance": 1e-8 },
//!   "sweep": { "parameter": "drive.flux_in", "values": [0, 1e10, 1e12, 1e14] },
//!   "thermal": { "temperature": 0.2, "gamma": "1 MHz" }
//! }
//! ```
//!
//! Frequencies accept unit suffixes (see [`crate::freq`]); everything is Hz
//! internally.

use std::path::Path;

use brillsq::{Geometry, WaveguideParams};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::freq;

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct ScenarioError(pub String);

impl ScenarioError {
    fn new(msg: impl Into<String>) -> Self {
        ScenarioError(msg.into())
    }
}

/// [`WaveguideParams`] with unit-suffixed frequencies allowed on input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveguideSpec {
    #[serde(deserialize_with = "freq::deserialize")]
    pub omega0: f64,
    pub vg: f64,
    pub va: f64,
    pub length: f64,
    #[serde(deserialize_with = "freq::deserialize")]
    pub g: f64,
    #[serde(deserialize_with = "freq::deserialize")]
    pub u: f64,
    #[serde(deserialize_with = "freq::deserialize")]
    pub gamma: f64,
}

impl From<WaveguideSpec> for WaveguideParams {
    fn from(w: WaveguideSpec) -> Self {
        WaveguideParams {
            omega0: w.omega0,
            vg: w.vg,
            va: w.va,
            length: w.length,
            g: w.g,
            u: w.u,
            gamma: w.gamma,
        }
    }
}

/// Pump wavenumber (directly, or through the phonon frequency it should
/// phase-match) and the external drive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveSpec {
    /// Pump wavenumber [1/m].
    #[serde(default)]
    pub k_pump: Option<f64>,
    /// Target phonon frequency; the pump wavenumber is solved from it.
    #[serde(default, deserialize_with = "freq::deserialize_option")]
    pub phonon_frequency: Option<f64>,
    /// Input photon flux [photons/s].
    pub flux_in: f64,
    /// Pump-mode frequency minus drive frequency.
    #[serde(default, deserialize_with = "freq::deserialize")]
    pub detuning: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    #[serde(default = "default_true")]
    pub enabled: bool,
    /// Per-mode Fock cutoff; chosen from the tail mass when absent.
    #[serde(default)]
    pub cutoff: Option<usize>,
    /// Largest accepted deviation between closed forms and the oracle.
    #[serde(default = "default_oracle_tolerance")]
    pub tolerance: f64,
}

fn default_true() -> bool {
    true
}

fn default_oracle_tolerance() -> f64 {
    1e-8
}

impl Default for OracleSpec {
    fn default() -> Self {
        OracleSpec {
            enabled: true,
            cutoff: None,
            tolerance: default_oracle_tolerance(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

/// A one-parameter sweep over a dotted scenario path such as
/// `"drive.flux_in"`. Either `values` or `range` + `steps` must be given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: String,
    #[serde(default)]
    pub values: Option<Vec<f64>>,
    #[serde(default)]
    pub range: Option<[f64; 2]>,
    #[serde(default)]
    pub steps: Option<usize>,
    #[serde(default)]
    pub spacing: Spacing,
}

impl SweepSpec {
    /// Grid points in sweep order.
    pub fn grid(&self) -> Result<Vec<f64>, ScenarioError> {
        if let Some(values) = &self.values {
            if self.range.is_some() || self.steps.is_some() {
                return Err(ScenarioError::new(
                    "sweep: give either `values` or `range` + `steps`, not both",
                ));
            }
            if values.is_empty() {
                return Err(ScenarioError::new("sweep: `values` is empty"));
            }
            return Ok(values.clone());
        }
        let ([start, stop], steps) = match (self.range, self.steps) {
            (Some(range), Some(steps)) => (range, steps),
            _ => {
                return Err(ScenarioError::new(
                    "sweep: needs `values` or both `range` and `steps`",
                ))
            }
        };
        if steps == 0 {
            return Err(ScenarioError::new("sweep: `steps` must be at least 1"));
        }
        if steps == 1 {
            return Ok(vec![start]);
        }
        let last = (steps - 1) as f64;
        match self.spacing {
            Spacing::Linear => Ok((0..steps)
                .map(|i| start + (stop - start) * i as f64 / last)
                .collect()),
            Spacing::Log => {
                if !(start > 0.0 && stop > 0.0) {
                    return Err(ScenarioError::new(
                        "sweep: log spacing needs positive range endpoints",
                    ));
                }
                let (lo, hi) = (start.ln(), stop.ln());
                let mut grid: Vec<f64> = (0..steps)
                    .map(|i| (lo + (hi - lo) * i as f64 / last).exp())
                    .collect();
                grid[0] = start;
                grid[steps - 1] = stop;
                Ok(grid)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThermalSpec {
    /// Bath temperature [K].
    pub temperature: f64,
    /// Phonon damping rate.
    #[serde(deserialize_with = "freq::deserialize")]
    pub gamma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub waveguide: WaveguideSpec,
    #[serde(default)]
    pub geometry: Geometry,
    pub drive: DriveSpec,
    #[serde(default)]
    pub oracle: OracleSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub thermal: Option<ThermalSpec>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let scenario: Scenario = serde_json::from_str(text)
            .map_err(|e| ScenarioError::new(format!("malformed scenario: {e}")))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ScenarioError::new(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn waveguide_params(&self) -> WaveguideParams {
        self.waveguide.into()
    }

    /// Checks every physical invariant the pipeline relies on.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        self.waveguide_params()
            .validate()
            .map_err(|e| ScenarioError::new(format!("waveguide: {e}")))?;
        let d = &self.drive;
        match (d.k_pump, d.phonon_frequency) {
            (Some(k), None) if k.is_finite() => {}
            (None, Some(f)) if f.is_finite() && f >= 0.0 => {}
            (Some(_), Some(_)) => {
                return Err(ScenarioError::new("drive: give either `k_pump` or `phonon_frequency`, not both"))
            }
            (None, None) => return Err(ScenarioError::new("drive: one of `k_pump` or `phonon_frequency` is required")),
            _ => return Err(ScenarioError::new("drive: `k_pump` / `phonon_frequency` must be finite (and the frequency non-negative)")),
        }
        if !(d.flux_in >= 0.0) || !d.flux_in.is_finite() {
            return Err(ScenarioError::new(format!(
                "drive.flux_in: must be finite and non-negative, got {}",
                d.flux_in
            )));
        }
        if !d.detuning.is_finite() {
            return Err(ScenarioError::new("drive.detuning: must be finite"));
        }
        if let Some(n) = self.oracle.cutoff {
            if n < 2 {
                return Err(ScenarioError::new(format!(
                    "oracle.cutoff: must be at least 2, got {n}"
                )));
            }
        }
        if !(self.oracle.tolerance > 0.0) {
            return Err(ScenarioError::new("oracle.tolerance: must be positive"));
        }
        if let Some(t) = &self.thermal {
            if !(t.temperature >= 0.0) || !t.temperature.is_finite() {
                return Err(ScenarioError::new(
                    "thermal.temperature: must be finite and non-negative",
                ));
            }
            if !(t.gamma > 0.0) || !t.gamma.is_finite() {
                return Err(ScenarioError::new("thermal.gamma: must be positive"));
            }
        }
        if let Some(sweep) = &self.sweep {
            sweep.grid()?;
            let mut base = self.clone();
            base.sweep = None;
            numeric_slot(&mut serde_json::to_value(&base).unwrap(), &sweep.parameter)?;
        }
        Ok(())
    }

    /// Copy of the scenario with the dotted `path` set to `value` and the
    /// sweep block removed. The result is validated.
    pub fn with_parameter(&self, path: &str, value: f64) -> Result<Scenario, ScenarioError> {
        let mut base = self.clone();
        base.sweep = None;
        let mut json = serde_json::to_value(&base).expect("scenario serializes");
        *numeric_slot(&mut json, path)? = number(value)?;
        let updated: Scenario = serde_json::from_value(json)
            .map_err(|e| ScenarioError::new(format!("sweep: setting `{path}` = {value}: {e}")))?;
        updated.validate()?;
        Ok(updated)
    }
}

/// Resolves a dotted path to a numeric (or unset optional) field.
fn numeric_slot<'a>(json: &'a mut Value, path: &str) -> Result<&'a mut Value, ScenarioError> {
    let mut node = json;
    for key in path.split('.') {
        node = node
            .as_object_mut()
            .and_then(|obj| obj.get_mut(key))
            .ok_or_else(|| {
                ScenarioError::new(format!("sweep: `{path}` does not name a scenario field"))
            })?;
    }
    if node.is_number() || node.is_null() {
        Ok(node)
    } else {
        Err(ScenarioError::new(format!(
            "sweep: `{path}` is not a numeric field"
        )))
    }
}

fn number(value: f64) -> Result<Value, ScenarioError> {
    if value.fract() == 0.0 && value.abs() < 9.0e15 {
        return Ok(Value::from(value as i64));
    }
    serde_json::Number::from_f64(value)
        .map(Value::Number)
        .ok_or_else(|| ScenarioError::new(format!("sweep: value {value} is not finite")))
}

/// The worked example: a 500 nm silicon waveguide pumped at resonance so that
/// `f = 1 GHz` against a 10 GHz phonon.
pub fn reference_scenario() -> Scenario {
    Scenario::from_json(REFERENCE_SCENARIO).expect("embedded scenario is valid")
}

pub const REFERENCE_SCENARIO: &str = r#"{
  "waveguide": {
    "omega0": "193 THz",
    "vg": 7e7,
    "va": 8433,
    "length": 0.01,
    "g": "1 MHz",
    "u": "1 MHz",
    "gamma": "10 mHz"
  },
  "geometry": "backward",
  "drive": { "phonon_frequency": "10 GHz", "flux_in": 1e12, "detuning": 0 },
  "oracle": { "enabled": true, "tolerance": 1e-8 },
  "thermal": { "temperature": 0.2, "gamma": "1 MHz" }
}"#;
