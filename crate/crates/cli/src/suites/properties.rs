use osculant_core::geometry::{
    canonical_embedding, ideal_bottom_component, IdealOptions, JetRange, Method, PolynomialParametrization,
};
use osculant_core::linalg::{int, span_basis, vectors_rank, SparseVec};
use osculant_core::multilinear::{coproduct, derive, koszul_delta, multiply, pair_map, prolong_vectors, tensor};
use osculant_core::{Factor, GradedElement, GradedPiece, Kind, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::Check;

/// Random instances per identity.
pub const PROPERTY_INSTANCES: usize = 100;

fn instance_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_element(piece: &GradedPiece, rng: &mut ChaCha8Rng) -> GradedElement {
    let mut pairs = Vec::new();
    for i in 0..piece.dim() {
        if rng.gen_bool(0.6) {
            pairs.push((i, int(rng.gen_range(-4..=4))));
        }
    }
    GradedElement::from_vector(piece, SparseVec::from_pairs(pairs))
}

fn random_kind(rng: &mut ChaCha8Rng) -> Kind {
    if rng.gen_bool(0.5) {
        Kind::Sym
    } else {
        Kind::Ext
    }
}

/// Runs `instances` seeded trials of an identity and reports the failures.
fn tally<F>(name: &str, seed: u64, stream: u64, instances: usize, trial: F) -> Check
where
    F: Fn(&mut ChaCha8Rng) -> Result<bool, String> + Sync,
{
    let failures: Vec<String> = (0..instances)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = instance_rng(seed, (stream << 32) | i as u64);
            match trial(&mut rng) {
                Ok(true) => None,
                Ok(false) => Some(format!("instance {i}")),
                Err(e) => Some(format!("instance {i}: {e}")),
            }
        })
        .collect();
    let got = match failures.first() {
        None => format!("0 failures in {instances} instances"),
        Some(first) => format!("{} failures in {instances} instances, first {first}", failures.len()),
    };
    Check::equal(name, format!("0 failures in {instances} instances"), got)
}

fn euler(seed: u64) -> Check {
    tally(
        "coproduct followed by product is the identity",
        seed,
        1,
        PROPERTY_INSTANCES,
        |rng| {
            let n = rng.gen_range(1..=5);
            let total = rng.gen_range(1..=5);
            let a = rng.gen_range(0..=total);
            let piece = GradedPiece::single(Factor::new(&Space::new("U", n), total, random_kind(rng)));
            let f = random_element(&piece, rng);
            let back = multiply(&coproduct(&f, 0, (a, total - a)).map_err(|e| e.to_string())?, 0, 1)
                .map_err(|e| e.to_string())?;
            Ok(back == f)
        },
    )
}

fn wedge(f: &GradedElement, g: &GradedElement) -> Result<GradedElement, String> {
    multiply(&tensor(f, g), 0, 1).map_err(|e| e.to_string())
}

fn leibniz(seed: u64) -> Check {
    tally(
        "contraction is a graded derivation of the wedge product",
        seed,
        2,
        PROPERTY_INSTANCES,
        |rng| {
            let u = Space::new("U", rng.gen_range(1..=5));
            let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let i = rng.gen_range(0..u.dim());
            let f = random_element(&GradedPiece::single(Factor::ext(&u, a)), rng);
            let g = random_element(&GradedPiece::single(Factor::ext(&u, b)), rng);
            let d = |e: &GradedElement| derive(&[i], 0, e).map_err(|e| e.to_string());
            let lhs = d(&wedge(&f, &g)?)?;
            let left = wedge(&d(&f)?, &g)?;
            let right = wedge(&f, &d(&g)?)?;
            let sign = if a % 2 == 0 { int(1) } else { int(-1) };
            let rhs = left.axpy(&sign, &right).map_err(|e| e.to_string())?;
            Ok(lhs == rhs)
        },
    )
}

fn delta_squared(seed: u64) -> Check {
    tally(
        "the Koszul differential squares to zero",
        seed,
        3,
        PROPERTY_INSTANCES,
        |rng| {
            let u = Space::new("U", rng.gen_range(1..=4));
            let first = random_kind(rng);
            let second = if first == Kind::Sym { Kind::Ext } else { Kind::Sym };
            let piece = GradedPiece::new(vec![
                Factor::new(&u, rng.gen_range(0..=4), first),
                Factor::new(&u, rng.gen_range(0..=3), second),
            ]);
            let f = random_element(&piece, rng);
            let once = koszul_delta(&f, 0, 1).map_err(|e| e.to_string())?;
            Ok(koszul_delta(&once, 0, 1).map_err(|e| e.to_string())?.is_zero())
        },
    )
}

fn jacobi(seed: u64, first: Kind) -> Check {
    let name = match first {
        Kind::Ext => "derivatives of determinants of products (det)",
        Kind::Sym => "derivatives of exterior minors of products (edet)",
    };
    tally(name, seed, 4 + first as u64, PROPERTY_INSTANCES, |rng| {
        let m = rng.gen_range(1..=3);
        let u = Space::new("U", rng.gen_range(1..=4));
        let w = Space::new("W", rng.gen_range(1..=4));
        let f = random_element(&GradedPiece::single(Factor::new(&u, m, first)), rng);
        let g = random_element(&GradedPiece::single(Factor::ext(&w, m)), rng);
        let fg = tensor(&f, &g);
        let (i, j) = (rng.gen_range(0..u.dim()), rng.gen_range(0..w.dim()));
        let err = |e: osculant_core::multilinear::MultilinearError| e.to_string();
        let lhs = derive(&[i * w.dim() + j], 0, &pair_map(&fg, 0, 1).map_err(err)?).map_err(err)?;
        let inner = tensor(&derive(&[i], 0, &f).map_err(err)?, &derive(&[j], 0, &g).map_err(err)?);
        Ok(lhs == pair_map(&inner, 0, 1).map_err(err)?)
    })
}

/// Span of the image of `P^m V_1 ⊗ Λ^m V_2 ⊗ … ⊗ Λ^m V_ℓ` under the canonical embedding
/// (all exterior) or under `edet` (two factors, the first symmetric).
fn embedded(spaces: &[Space], m: usize, edet: bool) -> (Factor, Vec<SparseVec>) {
    let kinds: Vec<Kind> = (0..spaces.len())
        .map(|i| if i == 0 && edet { Kind::Sym } else { Kind::Ext })
        .collect();
    let piece = GradedPiece::new(spaces.iter().zip(&kinds).map(|(s, &k)| Factor::new(s, m, k)).collect());
    let mut kind = kinds[0];
    for &k in &kinds[1..] {
        kind = if kind == k { Kind::Sym } else { Kind::Ext };
    }
    let factor = Factor::new(&Space::tensor_all(spaces), m, kind);
    let images: Vec<SparseVec> = (0..piece.dim())
        .map(|r| {
            let e = GradedElement::basis(&piece, r);
            let image = if edet {
                pair_map(&e, 0, 1)
            } else {
                canonical_embedding(&e)
            };
            image.expect("matching powers").into_coeffs()
        })
        .collect();
    (factor, span_basis(&images))
}

fn wedge_prolong_cases() -> Vec<(Vec<usize>, bool, usize, usize)> {
    let qd: Vec<(usize, usize)> = (1..=2).flat_map(|q| (1..=3 - q).map(move |d| (q, d))).collect();
    let mut dims: Vec<(Vec<usize>, bool)> = Vec::new();
    for a in 1..=4 {
        for b in 1..=4 {
            dims.push((vec![a, b], false));
            dims.push((vec![a, b], true));
        }
    }
    for d in [vec![2, 2, 2], vec![2, 2, 3], vec![2, 3, 3], vec![2, 2, 2, 2]] {
        dims.push((d, false));
    }
    dims.into_iter()
        .flat_map(|(d, e)| qd.iter().map(move |&(q, k)| (d.clone(), e, q, k)))
        .collect()
}

fn wedge_prolong() -> Check {
    let cases = wedge_prolong_cases();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(dims, edet, q, d)| {
            let spaces: Vec<Space> = dims
                .iter()
                .enumerate()
                .map(|(i, &n)| Space::new(&format!("V{}", i + 1), n))
                .collect();
            let (factor, low) = embedded(&spaces, q + 1, *edet);
            let (_, high) = embedded(&spaces, q + d + 1, *edet);
            let prolonged = prolong_vectors(&factor, &low, *d);
            let mut joint = prolonged.clone();
            joint.extend(high.iter().cloned());
            let ok = prolonged.len() == high.len() && vectors_rank(&joint) == high.len();
            (!ok).then(|| {
                format!(
                    "dims {dims:?} edet={edet} q={q} d={d}: {} vs {}",
                    prolonged.len(),
                    high.len()
                )
            })
        })
        .collect();
    let n = cases.len();
    let got = match failures.first() {
        None => format!("0 failures in {n} instances"),
        Some(f) => format!("{} failures in {n} instances, first {f}", failures.len()),
    };
    Check::equal(
        "prolongations of products of exterior powers",
        format!("0 failures in {n} instances"),
        got,
    )
}

fn range_equivalence(seed: u64) -> Check {
    let cases: Vec<(usize, usize, u64)> = (2..=8)
        .flat_map(|d| (0..=2).flat_map(move |k| (0..5).map(move |s| (d, k, s))))
        .collect();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(d, k, s)| {
            let x = PolynomialParametrization::rational_normal_curve(d);
            let run = |range| {
                let opts = IdealOptions {
                    seed: seed.wrapping_add(s),
                    range,
                    ..IdealOptions::default()
                };
                ideal_bottom_component(&x, 1, k, Method::Jets, &opts).map(|c| c.basis)
            };
            match (run(JetRange::R1), run(JetRange::R3)) {
                (Ok(a), Ok(b)) if a == b => None,
                (Ok(a), Ok(b)) => Some(format!("nu_{d} k={k}: dims {} and {}", a.len(), b.len())),
                (Err(e), _) | (_, Err(e)) => Some(format!("nu_{d} k={k}: {e}")),
            }
        })
        .collect();
    let n = cases.len();
    let got = match failures.first() {
        None => format!("0 failures in {n} instances"),
        Some(f) => format!("{} failures in {n} instances, first {f}", failures.len()),
    };
    Check::equal(
        "jet ranges R1 and R3 give the same quadrics on rational normal curves",
        format!("0 failures in {n} instances"),
        got,
    )
}

pub(super) fn all(seed: u64) -> Vec<Check> {
    vec![
        euler(seed),
        leibniz(seed),
        delta_squared(seed),
        jacobi(seed, Kind::Ext),
        jacobi(seed, Kind::Sym),
        wedge_prolong(),
        range_equivalence(seed),
    ]
}
