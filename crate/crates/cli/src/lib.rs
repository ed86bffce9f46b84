//! Sweep engine, file formats and the command-line front end.

pub mod app;
pub mod config;
pub mod error;
pub mod output;
pub mod selftest;
pub mod sweep;

pub use error::{CliError, Result};
pub use sweep::{run_sweep, Grid, ResultRow, SweepSpec, SweepVar};
