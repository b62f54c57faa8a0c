use num_traits::Zero;
use osculant_core::geometry::{
    b_map, check_x_multiplicative, dim_estimate, evaluate_form, ideal_bottom_component, sample_secant_osculating_point,
    IdealOptions, LinearTensor, Method, PolynomialParametrization, VarietySpec,
};
use osculant_core::linalg::{rank, vectors_rank, Rational, SparseMatrix, SparseVec};
use osculant_core::{Factor, JetVariety, Space};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::Check;
use crate::commands::cmd_equations;
use crate::config::RunConfig;

pub(crate) fn columns(m: &SparseMatrix<Rational>) -> Vec<SparseVec> {
    let t = m.transpose();
    (0..t.nrows()).map(|r| t.row_vec(r)).collect()
}

/// Splits `d` into `parts` positive summands as evenly as possible, larger first.
fn balanced(d: usize, parts: usize) -> Vec<usize> {
    (0..parts).map(|i| d / parts + usize::from(i < d % parts)).collect()
}

fn options(seed: u64) -> IdealOptions {
    IdealOptions {
        seed,
        ..IdealOptions::default()
    }
}

pub(super) fn intro(seed: u64) -> Vec<Check> {
    let spec = VarietySpec::Rnc { d: 4 };
    let config = RunConfig {
        seed,
        ..RunConfig::default()
    };
    let name = "tangent quadric of the rational normal quartic";
    match cmd_equations(&spec, 1, 1, Method::Jets, &config) {
        Ok(r) => vec![
            Check::equal(format!("{name}: dim"), 1, r.dim),
            Check::equal(format!("{name}: basis"), "x0*x4 - 4*x1*x3 + 3*x2^2", r.basis.join(", ")),
            Check::equal(format!("{name}: provenance"), "Exact", format!("{:?}", r.provenance)),
        ],
        Err(e) => vec![Check::failed(name, "dim=1", e)],
    }
}

struct MembershipCase {
    label: String,
    tensor: LinearTensor,
    variety: PolynomialParametrization,
    q: usize,
    k: usize,
}

fn membership_cases() -> Vec<MembershipCase> {
    let mut cases = Vec::new();
    for q in 1..=2 {
        cases.push(MembershipCase {
            label: format!("4-way tensor on nu_4, q={q}, k=1"),
            tensor: LinearTensor::rnc_multiplication(&[1, 1, 1, 1]),
            variety: PolynomialParametrization::rational_normal_curve(4),
            q,
            k: 1,
        });
    }
    for k in 0..=1 {
        let parts = 2 * k + 2;
        for d in parts..=8 {
            for q in 1..=2 {
                let degrees = balanced(d, parts);
                cases.push(MembershipCase {
                    label: format!("multiplication {degrees:?} on nu_{d}, q={q}, k={k}"),
                    tensor: LinearTensor::rnc_multiplication(&degrees),
                    variety: PolynomialParametrization::rational_normal_curve(d),
                    q,
                    k,
                });
            }
        }
    }
    for q in 1..=2 {
        cases.push(MembershipCase {
            label: format!("multiplication O(1,1) x O(1,1) on O(2,2), q={q}, k=0"),
            tensor: LinearTensor::pencil_multiplication(&[(1, 1), (1, 1)]),
            variety: PolynomialParametrization::pencil_product(2, 2),
            q,
            k: 0,
        });
    }
    cases
}

/// Number of sample points per membership case.
pub const MEMBERSHIP_POINTS: usize = 50;

pub(super) fn membership(seed: u64) -> Vec<Check> {
    membership_cases()
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let forms: Vec<SparseVec> = columns(&b_map(&c.tensor, c.q))
                .into_iter()
                .filter(|v| !v.is_zero())
                .collect();
            let factor = Factor::sym(&Space::new("V", c.variety.ambient_dim()), c.q + 1);
            let mut nonzero = 0;
            for r in 0..MEMBERSHIP_POINTS {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream((i * MEMBERSHIP_POINTS + r) as u64);
                let z = match sample_secant_osculating_point(&c.variety, c.q, c.k, &mut rng) {
                    Ok(z) => z,
                    Err(e) => return Check::failed(&c.label, 0, e),
                };
                nonzero += forms
                    .iter()
                    .filter(|f| !evaluate_form(&factor, f, &z).is_zero())
                    .count();
            }
            Check::equal(
                format!(
                    "{} ({} forms x {MEMBERSHIP_POINTS} points): nonzero values",
                    c.label,
                    forms.len()
                ),
                0,
                nonzero,
            )
        })
        .collect()
}

/// `(q, k, d, degrees)` with `d ≥ (2k+2) q`.
pub const SURJECTIVITY_CASES: &[(usize, usize, usize, &[usize])] = &[
    (1, 1, 4, &[1, 1, 1, 1]),
    (1, 1, 8, &[2, 2, 2, 2]),
    (2, 0, 4, &[2, 2]),
    (2, 0, 6, &[3, 3]),
    (3, 0, 6, &[3, 3]),
];

pub(super) fn eks_genus0(seed: u64) -> Vec<Check> {
    SURJECTIVITY_CASES
        .par_iter()
        .map(|&(q, k, d, degrees)| {
            let label = format!("nu_{d} by {degrees:?}, q={q}, k={k}");
            let x = PolynomialParametrization::rational_normal_curve(d);
            let t = LinearTensor::rnc_multiplication(degrees);
            let ideal = match ideal_bottom_component(&x, q, k, Method::Jets, &options(seed)) {
                Ok(c) => c,
                Err(e) => return vec![Check::failed(&label, "ideal", e)],
            };
            let m = b_map(&t, q);
            let mut both = columns(&m);
            both.extend(ideal.basis.iter().cloned());
            let mut checks = vec![
                Check::equal(
                    format!("{label}: ideal provenance"),
                    "Exact",
                    format!("{:?}", ideal.provenance),
                ),
                Check::equal(format!("{label}: image rank = ideal dim"), ideal.dim(), rank(&m)),
                Check::equal(format!("{label}: image inside ideal"), ideal.dim(), vectors_rank(&both)),
            ];
            match check_x_multiplicative(&t, &x, 20, seed) {
                Ok(r) => checks.push(Check::equal(
                    format!("{label}: tensor is X-multiplicative"),
                    true,
                    r.x_multiplicative(),
                )),
                Err(e) => checks.push(Check::failed(format!("{label}: tensor is X-multiplicative"), true, e)),
            }
            checks
        })
        .flatten()
        .collect()
}

pub(super) fn fulton_hansen(seed: u64) -> Vec<Check> {
    let mut cases: Vec<(String, PolynomialParametrization, usize)> = vec![(
        "O(2,2) on P1 x P1".into(),
        PolynomialParametrization::pencil_product(2, 2),
        2,
    )];
    for d in 4..=8 {
        cases.push((
            format!("nu_{d}"),
            PolynomialParametrization::rational_normal_curve(d),
            1,
        ));
    }
    cases
        .par_iter()
        .flat_map_iter(|(label, x, n)| {
            [(1, 1, "tau", 2 * n), (2, 0, "sigma_2", 2 * n + 1)].map(|(q, k, what, expected)| {
                match dim_estimate(x, q, k, 3, seed) {
                    Ok(got) => Check::equal(format!("{label}: dim {what}"), expected, got),
                    Err(e) => Check::failed(format!("{label}: dim {what}"), expected, e),
                }
            })
        })
        .collect()
}

fn builtin_small_varieties() -> Vec<VarietySpec> {
    let mut specs: Vec<VarietySpec> = (2..=8).map(|d| VarietySpec::Rnc { d }).collect();
    for dims in [
        vec![2, 2],
        vec![2, 3],
        vec![3, 3],
        vec![2, 4],
        vec![2, 2, 2],
        vec![2, 2, 2, 2],
    ] {
        specs.push(VarietySpec::Segre { dims });
    }
    specs.push(VarietySpec::SegreVeronese {
        dims: vec![2, 2],
        degrees: vec![1, 2],
    });
    specs.push(VarietySpec::SegreVeronese {
        dims: vec![2, 2],
        degrees: vec![2, 2],
    });
    for (a, b) in [(1, 1), (1, 2), (2, 2), (1, 3)] {
        specs.push(VarietySpec::PencilProduct { a, b });
    }
    specs
}

pub(super) fn jets_vs_sampling(seed: u64) -> Vec<Check> {
    let mut cases = Vec::new();
    for spec in builtin_small_varieties() {
        for q in 1..=2 {
            for k in 0..=1 {
                cases.push((spec.clone(), q, k));
            }
        }
    }
    cases
        .par_iter()
        .map(|(spec, q, k)| {
            let x = spec.build();
            let label = format!("{}, q={q}, k={k}: jets and sampling agree", x.name());
            let jets = ideal_bottom_component(&x, *q, *k, Method::Jets, &options(seed));
            let sampled = ideal_bottom_component(&x, *q, *k, Method::Sampling, &options(seed));
            match (jets, sampled) {
                (Ok(a), Ok(b)) => {
                    let mut both = a.basis.clone();
                    both.extend(b.basis.iter().cloned());
                    let expected = format!("dim {}", a.dim());
                    let got = if vectors_rank(&both) == a.dim() && b.dim() == a.dim() {
                        expected.clone()
                    } else {
                        format!(
                            "jets dim {}, sampling dim {}, joint rank {}",
                            a.dim(),
                            b.dim(),
                            vectors_rank(&both)
                        )
                    };
                    Check::equal(label, expected, got)
                }
                (Err(e), _) | (_, Err(e)) => Check::failed(label, "agreement", e),
            }
        })
        .collect()
}
