//! Drivers behind the `osculant` command: equations, Betti rows and verification suites.

pub mod commands;
pub mod config;
mod error;
pub mod suites;

pub use commands::{cmd_betti_row, cmd_equations, load_variety, BettiRow, EquationsReport};
pub use config::{Arithmetic, Format, RunConfig};
pub use error::CliError;
pub use suites::{cmd_verify, run_suite, Check, VerifyReport, SUITES};
