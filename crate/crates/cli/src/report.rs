//! Run reports and their JSON / CSV renderings.

use brillsq::{
    BogoliubovCoeffs, BrillouinTriple, MomentTable, PumpSteadyState, SqueezeSpec, ThermalOccupation,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::{HashMap, HashSet};

use crate::scenario::Scenario;

/// Numerical cross-check of the closed forms in a truncated Fock space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub cutoff: usize,
    pub tail_mass: f64,
    pub tolerance: f64,
    /// Largest deviation over every moment and `P_0..P_5`.
    pub max_deviation: f64,
    pub worst_entry: String,
    pub pair_probabilities: Vec<f64>,
    pub moments: MomentTable,
    pub passed: bool,
}

/// `10 log10(ΔX² / ½)` for both quadratures of a mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureDb {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezingDb {
    pub a: QuadratureDb,
    pub b: QuadratureDb,
    pub c: QuadratureDb,
    pub d: QuadratureDb,
}

impl SqueezingDb {
    pub fn from_moments(m: &MomentTable) -> Self {
        let db = |s: &brillsq::ModeStats| QuadratureDb {
            x: s.db_x(),
            y: s.db_y(),
        };
        SqueezingDb {
            a: db(&m.a),
            b: db(&m.b),
            c: db(&m.c),
            d: db(&m.d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// The scenario this report was produced from (sweep block removed).
    pub scenario: Scenario,
    pub triple: BrillouinTriple,
    pub pump: PumpSteadyState,
    /// Phase of the complex coupling, absorbed into the phonon mode.
    pub coupling_phase: f64,
    pub squeeze: SqueezeSpec,
    pub coefficients: BogoliubovCoeffs,
    pub moments: MomentTable,
    /// `P_0..P_5`.
    pub pair_probabilities: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thermal: Option<ThermalOccupation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub squeezing_db: Option<SqueezingDb>,
}

impl RunReport {
    pub fn oracle_passed(&self) -> bool {
        self.oracle.as_ref().is_none_or(|o| o.passed)
    }

    /// A scenario that reproduces this report, with the pump pinned to the
    /// resolved wavenumber instead of a target phonon frequency.
    pub fn to_scenario(&self) -> Scenario {
        let mut s = self.scenario.clone();
        s.drive.k_pump = Some(self.triple.k_pump);
        s.drive.phonon_frequency = None;
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Flattened `(column, value)` pairs, one per scalar. The scenario echo is
    /// left out; everything else appears with dotted names.
    pub fn flatten(&self) -> Vec<(String, String)> {
        let mut value = serde_json::to_value(self).expect("report serializes");
        value.as_object_mut().unwrap().shift_remove("scenario");
        let mut out = Vec::new();
        flatten_into(&value, String::new(), &mut out);
        out
    }
}

fn flatten_into(value: &Value, prefix: String, out: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten_into(v, join(k), out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten_into(v, join(&i.to_string()), out);
            }
        }
        Value::String(s) => out.push((prefix, s.clone())),
        Value::Null => out.push((prefix, String::new())),
        other => out.push((prefix, other.to_string())),
    }
}

/// One sweep grid point: a report, or the error that stopped it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<RunReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub parameter: String,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep report serializes")
    }
}

/// Writes flattened rows as CSV with the union of all columns in first-seen
/// order; missing cells are empty.
pub fn write_csv<W: std::io::Write>(rows: &[Vec<(String, String)>], out: W) -> csv::Result<()> {
    let mut columns: Vec<String> = Vec::new();
    let mut seen = HashSet::new();
    for row in rows {
        for (k, _) in row {
            if seen.insert(k.as_str()) {
                columns.push(k.clone());
            }
        }
    }
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(&columns)?;
    for row in rows {
        let lookup: HashMap<&str, &str> =
            row.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
        writer.write_record(
            columns
                .iter()
                .map(|c| lookup.get(c.as_str()).copied().unwrap_or("")),
        )?;
    }
    writer.flush()?;
    Ok(())
}

pub fn run_csv(report: &RunReport) -> String {
    let mut buf = Vec::new();
    write_csv(&[report.flatten()], &mut buf).expect("in-memory csv");
    String::from_utf8(buf).expect("csv is utf-8")
}

pub fn sweep_csv(report: &SweepReport) -> String {
    let rows: Vec<Vec<(String, String)>> = report
        .rows
        .iter()
        .map(|row| {
            let mut cells = vec![
                (report.parameter.clone(), row.value.to_string()),
                (
                    "status".to_string(),
                    if row.report.is_some() { "ok" } else { "error" }.to_string(),
                ),
                (
                    "error_kind".to_string(),
                    row.error_kind.clone().unwrap_or_default(),
                ),
                ("error".to_string(), row.error.clone().unwrap_or_default()),
            ];
            if let Some(r) = &row.report {
                cells.extend(r.flatten());
            }
            cells
        })
        .collect();
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).expect("in-memory csv");
    String::from_utf8(buf).expect("csv is utf-8")
}
