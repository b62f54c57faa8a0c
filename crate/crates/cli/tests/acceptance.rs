//! One line per acceptance criterion, with its runtime limit. Lines are written straight
//! to stdout so they show up in captured test logs.

use std::io::Write;
use std::time::{Duration, Instant};

use osculant_cli::suites::PROPERTY_INSTANCES;
use osculant_cli::{cmd_equations, load_variety, run_suite, Check, RunConfig};
use osculant_core::geometry::{Method, DEFAULT_SEED};

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_checks(checks: Vec<Check>) -> Outcome {
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    let detail = match failed.first() {
        None => format!("{} checks", checks.len()),
        Some(c) => format!(
            "{} of {} checks failed, first {}: expected {}, got {}",
            failed.len(),
            checks.len(),
            c.name,
            c.expected,
            c.got
        ),
    };
    Outcome {
        passed: failed.is_empty() && !checks.is_empty(),
        detail,
    }
}

fn intro_equation() -> Outcome {
    let spec = load_variety(r#"{"kind":"rnc","params":{"d":4}}"#).unwrap();
    match cmd_equations(&spec, 1, 1, Method::Jets, &RunConfig::default()) {
        Ok(r) => Outcome {
            passed: r.dim == 1 && r.basis == ["x0*x4 - 4*x1*x3 + 3*x2^2"],
            detail: format!("dim={} basis={:?}", r.dim, r.basis),
        },
        Err(e) => Outcome {
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn properties() -> Outcome {
    let checks = run_suite("properties", DEFAULT_SEED);
    let mut out = from_checks(checks.clone());
    let enough = checks.iter().all(|c| {
        c.got
            .split_whitespace()
            .nth(3)
            .and_then(|n| n.parse::<usize>().ok())
            .is_some_and(|n| n >= PROPERTY_INSTANCES)
    });
    if !enough {
        out.passed = false;
        out.detail = format!(
            "fewer than {PROPERTY_INSTANCES} instances in some suite; {}",
            out.detail
        );
    }
    out
}

type Criterion = (usize, &'static str, u64, fn() -> Outcome);

const CRITERIA: &[Criterion] = &[
    (1, "tangent quadric of the rational normal quartic", 1, intro_equation),
    (2, "b_map columns vanish on secants of osculating varieties", 30, || {
        from_checks(run_suite("membership", DEFAULT_SEED))
    }),
    (3, "b_map is onto the bottom equations at genus 0", 300, || {
        from_checks(run_suite("eks-genus0", DEFAULT_SEED))
    }),
    (4, "Koszul rows of 4-factor Segre tangent ideals, 3 seeds", 600, || {
        from_checks(run_suite("segre-betti", DEFAULT_SEED))
    }),
    (5, "bottom rows of 2-minors of 2x3 and 2x4 matrices", 60, || {
        from_checks(run_suite("lascoux", DEFAULT_SEED))
    }),
    (
        6,
        "bottom cycles match Schur sums and box products span them",
        600,
        || from_checks(run_suite("green-lazarsfeld", DEFAULT_SEED)),
    ),
    (7, "multilinear identities and jet range equivalence", 600, properties),
    (8, "dimensions of tangent and secant varieties", 30, || {
        from_checks(run_suite("fulton-hansen", DEFAULT_SEED))
    }),
];

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for &(id, name, limit, run) in CRITERIA {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let passed = outcome.passed && in_time;
        let line = format!(
            "{} criterion {id}: {name} ({:.2}s, limit {limit}s): {}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            outcome.detail
        );
        writeln!(std::io::stdout().lock(), "{line}").unwrap();
        if !passed {
            failures.push(line);
        }
    }
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}
