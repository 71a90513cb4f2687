//! Scenario-driven front end for the `brillsq` squeezing pipeline.
//!
//! A [`Scenario`] describes one waveguide and pump configuration;
//! [`pipeline::run`] turns it into a [`RunReport`] and [`pipeline::sweep`]
//! repeats that over a one-parameter grid.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod check;
pub mod freq;
pub mod pipeline;
pub mod report;
pub mod scenario;

pub use pipeline::{run, sweep, RunError, RunOptions};
pub use report::{RunReport, SweepReport, SweepRow};
pub use scenario::Scenario;
