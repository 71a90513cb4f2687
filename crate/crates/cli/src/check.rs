//! The built-in reference check: the 10 GHz worked example with its expected
//! values and tolerances.

use std::fmt;

use crate::pipeline::{self, RunError, RunOptions};
use crate::scenario::reference_scenario;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Absolute(f64),
    Relative(f64),
}

impl Tolerance {
    fn accepts(self, value: f64, expected: f64) -> bool {
        match self {
            Tolerance::Absolute(tol) => (value - expected).abs() <= tol,
            Tolerance::Relative(tol) => (value - expected).abs() <= tol * expected.abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: &'static str,
    pub value: f64,
    pub expected: f64,
    pub tolerance: Tolerance,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        self.tolerance.accepts(self.value, self.expected)
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let tol = match self.tolerance {
            Tolerance::Absolute(t) => format!("± {t:e}"),
            Tolerance::Relative(t) => format!("± {t:e} rel"),
        };
        write!(
            f,
            "{status}  {:<14} {:<14.6e} expected {:e} {tol}",
            self.name, self.value, self.expected
        )
    }
}

/// Runs the reference scenario and compares it with the expected values.
pub fn reference_checks() -> Result<Vec<CheckLine>, RunError> {
    use Tolerance::{Absolute, Relative};
    let report = pipeline::run(&reference_scenario(), RunOptions::default())?;
    let c = report.coefficients;
    let m = &report.moments;
    let p = &report.pair_probabilities;
    let line = |name, value, expected, tolerance| CheckLine {
        name,
        value,
        expected,
        tolerance,
    };
    let mut lines = vec![
        line("f", report.squeeze.f, 1e9, Relative(1e-3)),
        line("cosh^2 r", c.cosh * c.cosh, 1.0025, Absolute(1e-4)),
        line("tanh r", report.squeeze.r.tanh(), 0.05, Absolute(1e-3)),
        line("P_0", p[0], 0.9975, Absolute(1e-4)),
        line("P_1", p[1], 0.0025, Absolute(1e-4)),
        line("P_2", p[2], 6.25e-6, Relative(0.02)),
        line("S_a^X", m.a.squeeze_x, 0.0025, Absolute(1e-4)),
        line("S_a^Y", m.a.squeeze_y, 0.0025, Absolute(1e-4)),
        line("S_b^X", m.b.squeeze_x, 0.0025, Absolute(1e-4)),
        line("S_b^Y", m.b.squeeze_y, 0.0025, Absolute(1e-4)),
        line("S_c^X", m.c.squeeze_x, -0.0475, Absolute(5e-4)),
        line("S_c^Y", m.c.squeeze_y, 0.0525, Absolute(5e-4)),
        line("S_d^X", m.d.squeeze_x, 0.0525, Absolute(5e-4)),
        line("S_d^Y", m.d.squeeze_y, -0.0475, Absolute(5e-4)),
    ];
    if let Some(t) = report.thermal {
        lines.push(line("Q", t.q_factor, 1e4, Relative(1e-9)));
        lines.push(line("n_bar", t.n_bar, 0.1, Relative(0.05)));
    }
    if let Some(o) = &report.oracle {
        lines.push(line("oracle dev", o.max_deviation, 0.0, Absolute(1e-8)));
    }
    Ok(lines)
}
