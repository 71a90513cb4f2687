use brillsq::squeezing::pair_probability;
use brillsq_cli::scenario::{reference_scenario, Spacing, SweepSpec};
use brillsq_cli::{run, sweep, RunOptions, Scenario};

fn sweep_over(parameter: &str, values: Vec<f64>) -> SweepSpec {
    SweepSpec {
        parameter: parameter.into(),
        values: Some(values),
        range: None,
        steps: None,
        spacing: Spacing::Linear,
    }
}

#[test]
fn reference_run() {
    let report = run(&reference_scenario(), RunOptions { db: true }).unwrap();
    assert!((report.squeeze.f / 1e9 - 1.0).abs() < 1e-3);
    assert!((report.squeeze.r - 0.05).abs() < 1e-3);
    assert!((report.pair_probabilities[1] - 0.0025).abs() < 1e-4);
    assert!((report.moments.c.squeeze_x + 0.0475).abs() < 5e-4);
    let oracle = report.oracle.as_ref().unwrap();
    assert!(oracle.passed);
    assert!(oracle.max_deviation < 1e-8);
    assert_eq!(report.coupling_phase, 0.0);
    let db = report.squeezing_db.unwrap();
    assert!(db.c.x < 0.0 && db.c.y > 0.0);
    assert!((db.c.x - 10.0 * (-2.0 * report.squeeze.r).exp().log10()).abs() < 1e-12);
}

#[test]
fn zero_drive_is_vacuum() {
    let mut s = reference_scenario();
    s.drive.flux_in = 0.0;
    let report = run(&s, RunOptions::default()).unwrap();
    assert_eq!(report.squeeze.r, 0.0);
    assert_eq!(report.pair_probabilities[0], 1.0);
    for mode in [
        report.moments.a,
        report.moments.b,
        report.moments.c,
        report.moments.d,
    ] {
        assert_eq!(mode.squeeze_x, 0.0);
        assert_eq!(mode.squeeze_y, 0.0);
    }
    assert!(report.oracle.unwrap().passed);
}

#[test]
fn oracle_presence_follows_setting() {
    let mut s = reference_scenario();
    s.oracle.enabled = false;
    assert!(run(&s, RunOptions::default()).unwrap().oracle.is_none());
    s.oracle.enabled = true;
    s.oracle.cutoff = Some(12);
    let oracle = run(&s, RunOptions::default()).unwrap().oracle.unwrap();
    assert_eq!(oracle.cutoff, 12);
    assert!(oracle.passed);
}

#[test]
fn runs_are_bit_identical() {
    let s = reference_scenario();
    let a = run(&s, RunOptions::default()).unwrap();
    let b = run(&s, RunOptions::default()).unwrap();
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn report_round_trips_through_scenario() {
    let report = run(&reference_scenario(), RunOptions::default()).unwrap();
    let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    let reparsed: brillsq_cli::RunReport = serde_json::from_value(json).unwrap();
    assert_eq!(reparsed, report);

    let fragment = report.to_scenario().to_json();
    let again = run(
        &Scenario::from_json(&fragment).unwrap(),
        RunOptions::default(),
    )
    .unwrap();
    assert_eq!(again.triple, report.triple);
    assert_eq!(again.pump, report.pump);
    assert_eq!(again.squeeze, report.squeeze);
    assert_eq!(again.moments, report.moments);
    assert_eq!(again.pair_probabilities, report.pair_probabilities);
    assert_eq!(again.thermal, report.thermal);
}

#[test]
fn single_point_sweep_equals_run() {
    let mut s = reference_scenario();
    s.sweep = Some(sweep_over("drive.flux_in", vec![s.drive.flux_in]));
    let table = sweep(&s, RunOptions::default()).unwrap();
    assert_eq!(table.rows.len(), 1);
    let single = run(&reference_scenario(), RunOptions::default()).unwrap();
    assert_eq!(table.rows[0].report.as_ref().unwrap(), &single);
}

#[test]
fn flux_sweep_is_monotone() {
    let mut s = reference_scenario();
    s.oracle.enabled = false;
    s.sweep = Some(sweep_over("drive.flux_in", vec![1e14, 0.0, 1e12, 1e10]));
    let table = sweep(&s, RunOptions::default()).unwrap();
    let values: Vec<f64> = table.rows.iter().map(|r| r.value).collect();
    assert_eq!(values, vec![0.0, 1e10, 1e12, 1e14]);
    let reports: Vec<_> = table
        .rows
        .iter()
        .map(|r| r.report.as_ref().unwrap())
        .collect();
    let f1 = reports[1].squeeze.f;
    for (report, n) in reports.iter().zip([0.0, 1e10, 1e12, 1e14]) {
        assert!(
            (report.squeeze.f - f1 * (n / 1e10_f64).sqrt()).abs()
                <= 1e-12 * report.squeeze.f.max(1.0)
        );
    }
    assert!(reports.windows(2).all(|w| w[0].squeeze.r < w[1].squeeze.r));
}

#[test]
fn sweep_past_the_boundary_records_unstable() {
    // f reaches omega_bar at a flux just above 1e14
    let mut s = reference_scenario();
    s.oracle.enabled = false;
    s.sweep = Some(sweep_over("drive.flux_in", vec![1e12, 5e13, 9e13, 1.02e14]));
    let table = sweep(&s, RunOptions::default()).unwrap();
    let (last, earlier) = table.rows.split_last().unwrap();
    assert!(earlier.iter().all(|r| r.report.is_some()));
    assert_eq!(last.error_kind.as_deref(), Some("Unstable"));
    assert!(last.error.as_ref().unwrap().contains("diagonalization"));
}

#[test]
fn mixed_squeezing_curve_matches_closed_form() {
    let mut s = reference_scenario();
    s.sweep = Some(SweepSpec {
        parameter: "drive.flux_in".into(),
        values: None,
        range: Some([1e10, 5e13]),
        steps: Some(12),
        spacing: Spacing::Log,
    });
    let table = sweep(&s, RunOptions::default()).unwrap();
    assert_eq!(table.rows.len(), 12);
    for row in &table.rows {
        let report = row.report.as_ref().unwrap();
        let r = report.squeeze.r;
        assert!((report.moments.c.squeeze_x - 0.5 * (-2.0 * r).exp_m1()).abs() < 1e-15);
        assert!((report.pair_probabilities[3] - pair_probability(r, 3)).abs() == 0.0);
        assert!(report.oracle.as_ref().unwrap().passed, "{row:?}");
    }
}

#[test]
fn forward_geometry_has_no_squeezing() {
    let mut s = reference_scenario();
    s.geometry = brillsq::Geometry::Forward;
    s.drive.phonon_frequency = None;
    s.drive.k_pump = Some(5e6);
    let err = run(&s, RunOptions::default()).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn invalid_sweep_value_is_a_row_error() {
    let mut s = reference_scenario();
    s.sweep = Some(sweep_over("waveguide.vg", vec![7e7, 8433.0]));
    let table = sweep(&s, RunOptions::default()).unwrap();
    assert!(table.rows[0].report.is_none());
    assert!(table.rows[1].report.is_some());
    assert_eq!(table.rows[0].value, 8433.0);
}
