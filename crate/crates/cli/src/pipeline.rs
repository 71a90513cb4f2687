//! The end-to-end pipeline: phase matching, pump steady state,
//! diagonalization, squeezed-state statistics and the Fock-space oracle.

use brillsq::focksim::{self, DEFAULT_TAIL_TOLERANCE};
use brillsq::{bogoliubov, pump, squeezing, waveguide};
use brillsq::{Error, PumpDrive, ThermalEnv, TruncatedFockSpace, TwoModeState};
use rayon::prelude::*;

use crate::report::{OracleReport, RunReport, SqueezingDb, SweepReport, SweepRow};
use crate::scenario::{Scenario, ScenarioError};

/// Number of pair probabilities reported, `P_0..P_5`.
pub const PAIR_PROBABILITIES: usize = 6;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("invalid scenario: {0}")]
    Validation(#[from] ScenarioError),
    #[error("{stage}: {error}")]
    Physics { stage: &'static str, error: Error },
}

impl RunError {
    /// Process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Validation(_) => 2,
            RunError::Physics { .. } => 3,
        }
    }

    /// Short machine-readable tag, e.g. `"Unstable"`.
    pub fn kind(&self) -> &'static str {
        match self {
            RunError::Validation(_) => "Validation",
            RunError::Physics { error, .. } => match error {
                Error::InvalidParameter { .. } => "InvalidParameter",
                Error::NoSolution { .. } => "NoSolution",
                Error::DegenerateLinewidth { .. } => "DegenerateLinewidth",
                Error::Unstable { .. } => "Unstable",
                Error::CutoffTooSmall { .. } => "CutoffTooSmall",
                Error::ZeroProbability { .. } => "ZeroProbability",
            },
        }
    }
}

fn at(stage: &'static str) -> impl FnOnce(Error) -> RunError {
    move |error| RunError::Physics { stage, error }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Also report squeezing in dB.
    pub db: bool,
}

pub fn run(scenario: &Scenario, options: RunOptions) -> Result<RunReport, RunError> {
    run_with_state(scenario, options).map(|(report, _)| report)
}

/// Like [`run`], also returning the oracle state when the oracle ran.
pub fn run_with_state(
    scenario: &Scenario,
    options: RunOptions,
) -> Result<(RunReport, Option<TwoModeState>), RunError> {
    scenario.validate()?;
    let params = scenario.waveguide_params();
    let k_pump = match (scenario.drive.k_pump, scenario.drive.phonon_frequency) {
        (Some(k), _) => k,
        (None, Some(freq)) => {
            waveguide::pump_wavenumber_for_phonon(&params, freq, scenario.geometry)
                .map_err(at("phase matching"))?
        }
        (None, None) => unreachable!("validated scenario names the pump"),
    };
    let triple =
        waveguide::phase_match(&params, k_pump, scenario.geometry).map_err(at("phase matching"))?;

    let drive = PumpDrive::new(
        triple.omega_pump - scenario.drive.detuning,
        scenario.drive.flux_in,
    )
    .map_err(at("pump drive"))?;
    let pump_state =
        pump::steady_state(&params, &drive, triple.omega_pump).map_err(at("pump steady state"))?;
    let coupling = pump_state.effective_coupling;
    let coupling_phase = if coupling.norm() > 0.0 {
        coupling.arg()
    } else {
        0.0
    };

    let squeeze = bogoliubov::diagonalize(
        triple.omega_pump - triple.omega_signal,
        triple.omega_phonon,
        coupling.norm(),
    )
    .map_err(at("diagonalization"))?;
    let r = squeeze.r;
    let moments = squeezing::analytic_moments(r).map_err(at("moments"))?;
    let pair_probabilities: Vec<f64> = (0..PAIR_PROBABILITIES as u32)
        .map(|n| squeezing::pair_probability(r, n))
        .collect();

    let (oracle, state) = if scenario.oracle.enabled {
        let space = match scenario.oracle.cutoff {
            Some(n) => TruncatedFockSpace::new(n),
            None => TruncatedFockSpace::for_squeeze(r, DEFAULT_TAIL_TOLERANCE),
        }
        .map_err(at("oracle"))?;
        let state = focksim::squeezed_vacuum(&space, r).map_err(at("oracle"))?;
        let mut numeric = focksim::measure_moments(&state);
        numeric.r = r;
        let numeric_pairs: Vec<f64> = (0..PAIR_PROBABILITIES)
            .map(|n| {
                if n < space.cutoff() {
                    state.pair_probability(n)
                } else {
                    0.0
                }
            })
            .collect();
        let (mut worst_entry, mut max_deviation) = moments.max_deviation(&numeric);
        for (n, (lhs, rhs)) in pair_probabilities.iter().zip(&numeric_pairs).enumerate() {
            let dev = (lhs - rhs).abs();
            if dev > max_deviation {
                max_deviation = dev;
                worst_entry = format!("P_{n}");
            }
        }
        let report = OracleReport {
            cutoff: space.cutoff(),
            tail_mass: focksim::tail_mass(r, space.cutoff()),
            tolerance: scenario.oracle.tolerance,
            max_deviation,
            worst_entry,
            pair_probabilities: numeric_pairs,
            moments: numeric,
            passed: max_deviation <= scenario.oracle.tolerance,
        };
        (Some(report), Some(state))
    } else {
        (None, None)
    };

    let thermal = match &scenario.thermal {
        Some(t) => Some(
            squeezing::thermal_occupation(&ThermalEnv {
                omega: triple.omega_phonon,
                temperature: t.temperature,
                gamma: t.gamma,
            })
            .map_err(at("thermal occupation"))?,
        ),
        None => None,
    };

    let mut echo = scenario.clone();
    echo.sweep = None;
    let report = RunReport {
        scenario: echo,
        triple,
        pump: pump_state,
        coupling_phase,
        squeeze,
        coefficients: bogoliubov::transform_coeffs(&squeeze),
        moments,
        pair_probabilities,
        oracle,
        thermal,
        squeezing_db: options.db.then(|| SqueezingDb::from_moments(&moments)),
    };
    Ok((report, state))
}

/// Runs every grid point of the scenario's sweep, in parallel, with rows
/// ordered by sweep value. Failing points are recorded in their row.
pub fn sweep(scenario: &Scenario, options: RunOptions) -> Result<SweepReport, RunError> {
    scenario.validate()?;
    let spec = scenario
        .sweep
        .as_ref()
        .ok_or_else(|| ScenarioError("scenario has no `sweep` block".into()))?;
    let mut grid = spec.grid()?;
    grid.sort_by(f64::total_cmp);
    let rows = grid
        .par_iter()
        .map(|&value| {
            let outcome = scenario
                .with_parameter(&spec.parameter, value)
                .map_err(RunError::from)
                .and_then(|point| run(&point, options));
            match outcome {
                Ok(report) => SweepRow {
                    value,
                    report: Some(report),
                    error_kind: None,
                    error: None,
                },
                Err(e) => SweepRow {
                    value,
                    report: None,
                    error_kind: Some(e.kind().to_string()),
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    Ok(SweepReport {
        parameter: spec.parameter.clone(),
        rows,
    })
}
