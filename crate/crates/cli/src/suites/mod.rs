//! Named verification suites. Each suite is a list of independent checks evaluated in
//! parallel and reported in a fixed order.

mod equations;
mod properties;
mod syzygies;

use std::fmt::{Display, Write as _};

use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::CliError;

pub use properties::PROPERTY_INSTANCES;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub passed: bool,
}

impl Check {
    pub fn equal(name: impl Into<String>, expected: impl Display, got: impl Display) -> Self {
        let (expected, got) = (expected.to_string(), got.to_string());
        Check {
            name: name.into(),
            passed: expected == got,
            expected,
            got,
        }
    }

    pub(crate) fn failed(name: impl Into<String>, expected: impl Display, error: impl Display) -> Self {
        Check {
            name: name.into(),
            expected: expected.to_string(),
            got: format!("error: {error}"),
            passed: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).unwrap() + "\n",
            Format::Csv => {
                let mut out = String::from("name,expected,got,passed\n");
                for c in &self.checks {
                    writeln!(
                        out,
                        "{},{},{},{}",
                        quote(&c.name),
                        quote(&c.expected),
                        quote(&c.got),
                        c.passed
                    )
                    .unwrap();
                }
                out
            }
            Format::Text => {
                let mut out = String::new();
                for c in &self.checks {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    writeln!(out, "{tag} {}: expected {}, got {}", c.name, c.expected, c.got).unwrap();
                }
                let failed = self.checks.iter().filter(|c| !c.passed).count();
                writeln!(
                    out,
                    "suite {} (seed={}): {} checks, {} failed",
                    self.suite,
                    self.seed,
                    self.checks.len(),
                    failed
                )
                .unwrap();
                out
            }
        }
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

type SuiteFn = fn(u64) -> Vec<Check>;

/// Suite names accepted by [`cmd_verify`], besides `all`.
pub const SUITES: &[(&str, SuiteFn)] = &[
    ("intro", equations::intro),
    ("membership", equations::membership),
    ("eks-genus0", equations::eks_genus0),
    ("fulton-hansen", equations::fulton_hansen),
    ("jets-vs-sampling", equations::jets_vs_sampling),
    ("lascoux", syzygies::lascoux),
    ("green-lazarsfeld", syzygies::green_lazarsfeld),
    ("segre-betti", syzygies::segre_betti),
    ("witness", syzygies::witness),
    ("properties", properties::all),
];

/// Runs one suite, or every suite for `all`.
pub fn cmd_verify(suite: &str, config: &RunConfig) -> Result<VerifyReport, CliError> {
    let checks = if suite == "all" {
        SUITES.iter().flat_map(|(_, f)| f(config.seed)).collect()
    } else {
        let (_, f) = SUITES.iter().find(|(name, _)| *name == suite).ok_or_else(|| {
            let names: Vec<&str> = SUITES.iter().map(|s| s.0).collect();
            CliError::Input(format!(
                "unknown suite {suite:?}; expected all or one of {}",
                names.join(", ")
            ))
        })?;
        f(config.seed)
    };
    Ok(VerifyReport {
        suite: suite.to_string(),
        seed: config.seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

/// Runs one named suite with the given seed. Panics on an unknown name.
pub fn run_suite(name: &str, seed: u64) -> Vec<Check> {
    let (_, f) = SUITES.iter().find(|(n, _)| *n == name).expect("known suite");
    f(seed)
}
