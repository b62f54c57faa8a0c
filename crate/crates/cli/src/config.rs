use std::fmt;
use std::str::FromStr;

use osculant_core::geometry::DEFAULT_SEED;
use osculant_core::linalg::is_prime;
use serde::Serialize;

use crate::CliError;

/// Smallest accepted modulus for `--arithmetic=modp:P`.
pub const MIN_MODULUS: u64 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    Exact,
    Modp(u64),
}

impl FromStr for Arithmetic {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "exact" {
            return Ok(Arithmetic::Exact);
        }
        let p = s
            .strip_prefix("modp:")
            .ok_or_else(|| CliError::Input(format!("arithmetic must be exact or modp:P, got {s:?}")))?;
        let p: u64 = p.parse().map_err(|_| CliError::Input(format!("bad modulus {p:?}")))?;
        if p < MIN_MODULUS || !is_prime(p) {
            return Err(CliError::Input(format!("modulus {p} must be a prime of at least 2^30")));
        }
        Ok(Arithmetic::Modp(p))
    }
}

impl fmt::Display for Arithmetic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arithmetic::Exact => write!(f, "exact"),
            Arithmetic::Modp(p) => write!(f, "modp:{p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Input(format!("unknown format {other:?}"))),
        }
    }
}

/// Settings shared by every command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub arithmetic: Arithmetic,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            arithmetic: Arithmetic::Exact,
            format: Format::Text,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_arithmetic() {
        assert_eq!("exact".parse::<Arithmetic>().unwrap(), Arithmetic::Exact);
        assert_eq!(
            "modp:1073741827".parse::<Arithmetic>().unwrap(),
            Arithmetic::Modp(1073741827)
        );
        assert!("modp:101".parse::<Arithmetic>().is_err());
        assert!("modp:1073741825".parse::<Arithmetic>().is_err());
        assert!("float".parse::<Arithmetic>().is_err());
    }
}
