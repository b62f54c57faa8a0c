use std::fmt::Write as _;

use osculant_core::geometry::{
    format_form, ideal_bottom_component, sampled_ideal_component, IdealOptions, Method, Provenance, VarietySpec,
};
use osculant_core::syzygy::{koszul_cohomology_dim, koszul_cohomology_dim_modp, GradedIdealSlice, KoszulSpot};
use osculant_core::{JetVariety, Kind, Space};
use serde::Serialize;

use crate::config::{Arithmetic, Format, RunConfig};
use crate::CliError;

/// Reads a variety descriptor given inline (starting with `{`) or as a file path.
pub fn load_variety(arg: &str) -> Result<VarietySpec, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|source| CliError::Io {
            path: arg.to_string(),
            source,
        })?
    };
    Ok(VarietySpec::from_json(&text)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct EquationsReport {
    pub variety: String,
    pub q: usize,
    pub k: usize,
    pub method: Method,
    pub degree: usize,
    pub dim: usize,
    pub basis: Vec<String>,
    pub provenance: Provenance,
    pub seed: u64,
}

impl EquationsReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = format!("dim={}", self.dim);
                if !self.basis.is_empty() {
                    write!(out, "; basis: {}", self.basis.join(", ")).unwrap();
                }
                if self.provenance == Provenance::Sampled {
                    write!(out, " (probabilistic, seed={})", self.seed).unwrap();
                }
                out.push('\n');
                out
            }
            Format::Csv => {
                let mut out = String::from("index,form\n");
                for (i, f) in self.basis.iter().enumerate() {
                    writeln!(out, "{i},{f}").unwrap();
                }
                out
            }
            Format::Json => serde_json::to_string_pretty(self).unwrap() + "\n",
        }
    }
}

/// A basis of `I(σ_q τ^k X)_(q+1)` in monomial coordinates.
pub fn cmd_equations(
    spec: &VarietySpec,
    q: usize,
    k: usize,
    method: Method,
    config: &RunConfig,
) -> Result<EquationsReport, CliError> {
    let x = spec.build();
    let opts = IdealOptions {
        seed: config.seed,
        ..IdealOptions::default()
    };
    let c = ideal_bottom_component(&x, q, k, method, &opts)?;
    let factor = c.factor();
    Ok(EquationsReport {
        variety: x.name().to_string(),
        q,
        k,
        method,
        degree: c.degree,
        dim: c.dim(),
        basis: c.basis.iter().map(|v| format_form(&factor, v)).collect(),
        provenance: c.provenance,
        seed: config.seed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiRow {
    pub variety: String,
    pub q: usize,
    pub k: usize,
    /// `dim K_(p,q+1)` for `p = 0..=p_max`.
    pub row: Vec<usize>,
    pub provenance: Provenance,
    pub arithmetic: Arithmetic,
    /// Dimension of the sampled degree `q+2` component used to check the ideal property.
    pub next_degree_dim: usize,
    pub seed: u64,
}

impl BettiRow {
    pub fn label(&self) -> &'static str {
        match (self.arithmetic, self.provenance) {
            (Arithmetic::Modp(_), _) => "filter",
            (Arithmetic::Exact, Provenance::Exact) => "exact",
            (Arithmetic::Exact, Provenance::Sampled) => "probabilistic, seed-pinned",
        }
    }

    pub fn row_string(&self) -> String {
        self.row.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => format!(
                "{}\n# {} q={} k={}: {}, arithmetic={}, seed={}\n",
                self.row_string(),
                self.variety,
                self.q,
                self.k,
                self.label(),
                self.arithmetic,
                self.seed
            ),
            Format::Csv => {
                let mut out = String::from("p,dim\n");
                for (p, d) in self.row.iter().enumerate() {
                    writeln!(out, "{p},{d}").unwrap();
                }
                out
            }
            Format::Json => {
                let mut v = serde_json::to_value(self).unwrap();
                v["label"] = self.label().into();
                serde_json::to_string_pretty(&v).unwrap() + "\n"
            }
        }
    }
}

/// `dim K_(p,q+1)(I(σ_q τ^k X))` for `p ≤ p_max`. The degree `q+1` component comes from
/// `method`; the degree `q+2` component is sampled and only used to check that the slice is
/// closed under multiplication by linear forms.
pub fn cmd_betti_row(
    spec: &VarietySpec,
    q: usize,
    k: usize,
    p_max: usize,
    method: Method,
    config: &RunConfig,
) -> Result<BettiRow, CliError> {
    let x = spec.build();
    let opts = IdealOptions {
        seed: config.seed,
        ..IdealOptions::default()
    };
    let bottom = ideal_bottom_component(&x, q, k, method, &opts)?;
    let next = sampled_ideal_component(&x, q + 2, q, k, &opts)?;
    let slice = GradedIdealSlice::new(&Space::new("V", x.ambient_dim()), Kind::Sym, x.weights())
        .with_component(&bottom)?
        .with_component(&next)?;
    let row = (0..=p_max)
        .map(|p| {
            let spot = KoszulSpot::new(p, q + 1, Kind::Sym);
            match config.arithmetic {
                Arithmetic::Exact => koszul_cohomology_dim(&slice, spot),
                Arithmetic::Modp(m) => koszul_cohomology_dim_modp(&slice, spot, m),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BettiRow {
        variety: x.name().to_string(),
        q,
        k,
        row,
        provenance: bottom.provenance,
        arithmetic: config.arithmetic,
        next_degree_dim: next.dim(),
        seed: config.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intro_equation() {
        let spec = load_variety(r#"{"kind":"rnc","params":{"d":4}}"#).unwrap();
        let r = cmd_equations(&spec, 1, 1, Method::Jets, &RunConfig::default()).unwrap();
        assert_eq!(r.render(Format::Text), "dim=1; basis: x0*x4 - 4*x1*x3 + 3*x2^2\n");
    }

    #[test]
    fn minors_row() {
        let spec = load_variety(r#"{"kind":"segre","params":{"dims":[2,3]}}"#).unwrap();
        let r = cmd_betti_row(&spec, 1, 0, 2, Method::Jets, &RunConfig::default()).unwrap();
        assert_eq!(r.row_string(), "3,2,0");
        assert_eq!(r.label(), "exact");
        assert_eq!(r.render(Format::Csv), "p,dim\n0,3\n1,2\n2,0\n");
    }

    #[test]
    fn bad_descriptor() {
        let err = load_variety(r#"{"kind":"rnc","params":{"d":0}}"#).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert_eq!(load_variety("/nonexistent/variety.json").unwrap_err().exit_code(), 1);
    }
}
