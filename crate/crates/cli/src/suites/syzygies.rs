use std::collections::BTreeMap;

use osculant_core::geometry::{
    b_map, format_form, ideal_bottom_component, IdealOptions, LinearTensor, Method, PolynomialParametrization,
    Provenance, VarietySpec,
};
use osculant_core::linalg::{span_basis, vectors_rank, SparseVec, Subspace};
use osculant_core::multilinear::koszul_delta;
use osculant_core::schur::{
    bottom_syzygy_dims_segre, green_lazarsfeld_ext_dims, green_lazarsfeld_sym_dims, lascoux_bottom_dims,
};
use osculant_core::syzygy::{
    bottom_cycles, box_product, koszul_cohomology_dim, koszul_cycles, nonvanishing_witness, pushforward_syzygy,
    BoxKind, GradedIdealSlice, KoszulSpot,
};
use osculant_core::{Factor, GradedElement, Kind, Space};
use rayon::prelude::*;

use super::equations::columns;
use super::Check;
use crate::commands::cmd_betti_row;
use crate::config::RunConfig;

/// The ideal of 2-minors of the generic `m × n` matrix, variables `x_(i n + j)`.
pub fn minors_slice(m: usize, n: usize) -> GradedIdealSlice {
    let t = LinearTensor::generic_matrix(m, n);
    let minors = span_basis(&columns(&b_map(&t, 1)));
    let weights = (0..m * n)
        .map(|l| {
            let mut w = vec![0; m + n];
            w[l / n] += 1;
            w[m + l % n] += 1;
            w
        })
        .collect();
    GradedIdealSlice::new(&t.target_space(), Kind::Sym, Some(weights))
        .with_degree(2, minors, Provenance::Exact)
        .expect("minors form an independent homogeneous family")
}

pub(super) fn lascoux(_seed: u64) -> Vec<Check> {
    let cases: Vec<(usize, usize, usize)> = [(2, 3), (2, 4)]
        .into_iter()
        .flat_map(|(m, n)| (0..=3).map(move |p| (m, n, p)))
        .collect();
    cases
        .par_iter()
        .map(|&(m, n, p)| {
            let slice = minors_slice(m, n);
            let label = format!("2-minors of the {m}x{n} matrix: K_({p},2)");
            let expected = lascoux_bottom_dims(p, 1, m, n);
            match koszul_cohomology_dim(&slice, KoszulSpot::new(p, 2, Kind::Sym)) {
                Ok(got) => Check::equal(label, expected, got),
                Err(e) => Check::failed(label, expected, e),
            }
        })
        .collect()
}

fn uw_weight(e: &GradedElement, nu: usize, nw: usize) -> Vec<u32> {
    let mut w = vec![0; nu + nw];
    if let Some((label, _)) = e.terms().next() {
        for l in label.iter().flatten() {
            w[l / nw] += 1;
            w[nu + l % nw] += 1;
        }
    }
    w
}

/// Rank of weight-homogeneous vectors, block by block.
fn blocked_rank(items: &[(Vec<u32>, SparseVec)]) -> usize {
    let mut blocks: BTreeMap<&[u32], Vec<SparseVec>> = BTreeMap::new();
    for (w, v) in items {
        blocks.entry(w.as_slice()).or_default().push(v.clone());
    }
    blocks
        .into_values()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|vs| vectors_rank(vs))
        .sum()
}

/// Dimension of the bottom cycles against the Schur-module sums, and the span of all box
/// products of basis cycles against the bottom cycles.
fn green_lazarsfeld_case(kind: Kind, nu: usize, nw: usize, p: usize, q: usize) -> Vec<Check> {
    let (u, w) = (Space::new("U", nu), Space::new("W", nw));
    let (expected, box_kind) = match kind {
        Kind::Sym => (green_lazarsfeld_sym_dims(p, q, nu, nw), BoxKind::Sym),
        Kind::Ext => (green_lazarsfeld_ext_dims(p, q, nu, nw), BoxKind::Ext),
    };
    let label = format!("{kind:?} dims ({nu},{nw}) p={p} q={q}");
    let cycles = match bottom_cycles(&u, &w, p, q, kind) {
        Ok(c) => c,
        Err(e) => return vec![Check::failed(format!("{label}: dim"), expected, e)],
    };
    let mut checks = vec![Check::equal(format!("{label}: dim"), expected, cycles.len())];
    let mut products = Vec::new();
    for a in 0..=p {
        let b = p - a;
        let fs = koszul_cycles(&u, kind, a, b + q + 1);
        let gs = koszul_cycles(&w, Kind::Sym, b, a + q + 1);
        let (fs, gs) = match (fs, gs) {
            (Ok(f), Ok(g)) => (f, g),
            (Err(e), _) | (_, Err(e)) => return vec![Check::failed(format!("{label}: span"), expected, e)],
        };
        let pairs: Vec<(&GradedElement, &GradedElement)> =
            fs.iter().flat_map(|f| gs.iter().map(move |g| (f, g))).collect();
        let made: Result<Vec<GradedElement>, _> = pairs.par_iter().map(|(f, g)| box_product(f, g, box_kind)).collect();
        match made {
            Ok(m) => products.extend(m),
            Err(e) => return vec![Check::failed(format!("{label}: span"), expected, e)],
        }
    }
    let tagged = |v: &[GradedElement]| -> Vec<(Vec<u32>, SparseVec)> {
        v.iter()
            .filter(|e| !e.is_zero())
            .map(|e| (uw_weight(e, nu, nw), e.coeffs().clone()))
            .collect()
    };
    let made = tagged(&products);
    let mut joint = made.clone();
    joint.extend(tagged(&cycles));
    let (r, j) = (blocked_rank(&made), blocked_rank(&joint));
    let got = if r == j {
        r.to_string()
    } else {
        format!("{r} (joint rank {j})")
    };
    checks.push(Check::equal(
        format!("{label}: rank of {} box products", products.len()),
        cycles.len(),
        got,
    ));
    checks
}

/// Largest space dimension in the decomposition checks.
pub const GL_MAX_DIM: usize = 4;

pub(super) fn green_lazarsfeld(_seed: u64) -> Vec<Check> {
    let mut cases = Vec::new();
    for kind in [Kind::Sym, Kind::Ext] {
        for nu in 1..=GL_MAX_DIM {
            for nw in 1..=GL_MAX_DIM {
                for p in 0..=2 {
                    for q in 0..=2 {
                        cases.push((kind, nu, nw, p, q));
                    }
                }
            }
        }
    }
    cases
        .par_iter()
        .flat_map_iter(|&(kind, nu, nw, p, q)| green_lazarsfeld_case(kind, nu, nw, p, q))
        .collect()
}

/// Seeds used for the sampled degree-3 slice: the base seed and its two successors.
pub const SEGRE_SEEDS: usize = 3;

pub(super) fn segre_betti(seed: u64) -> Vec<Check> {
    let cases: &[(&[usize], usize)] = &[(&[2, 2, 2, 2], 1), (&[3, 3, 3, 2], 2)];
    cases
        .iter()
        .flat_map(|&(dims, p_max)| {
            let expected: Vec<String> = (0..=p_max)
                .map(|p| bottom_syzygy_dims_segre(p, 1, dims).total.to_string())
                .collect();
            let expected = expected.join(",");
            let spec = VarietySpec::Segre { dims: dims.to_vec() };
            let rows: Vec<_> = (0..SEGRE_SEEDS as u64)
                .into_par_iter()
                .map(|s| {
                    let config = RunConfig {
                        seed: seed.wrapping_add(s),
                        ..RunConfig::default()
                    };
                    (config.seed, cmd_betti_row(&spec, 1, 1, p_max, Method::Jets, &config))
                })
                .collect();
            let mut checks = Vec::new();
            let mut verdicts = Vec::new();
            for (s, r) in rows {
                let label = format!("segre {dims:?}, q=1, k=1, seed={s}: K_(p,2) for p <= {p_max}");
                match r {
                    Ok(r) => {
                        checks.push(Check::equal(label, &expected, r.row_string()));
                        verdicts.push(format!("{} / I_3 dim {}", r.row_string(), r.next_degree_dim));
                    }
                    Err(e) => checks.push(Check::failed(label, &expected, e)),
                }
            }
            let stable = verdicts.len() == SEGRE_SEEDS && verdicts.iter().all(|v| v == &verdicts[0]);
            checks.push(Check::equal(
                format!("segre {dims:?}: verdicts stable across {SEGRE_SEEDS} seeds"),
                true,
                stable,
            ));
            checks
        })
        .collect()
}

/// Whether every `S^(q+1)`-leg of an element of `Λ^p V ⊗ S^(q+1) V` lies in `ideal`.
fn legs_in(e: &GradedElement, ideal: &Subspace) -> bool {
    let second = &e.piece().factor(1);
    let mut legs: BTreeMap<Vec<usize>, Vec<(usize, _)>> = BTreeMap::new();
    for (label, c) in e.terms() {
        legs.entry(label[0].clone())
            .or_default()
            .push((second.rank(&label[1]), c.clone()));
    }
    legs.into_values().all(|v| ideal.contains(&SparseVec::from_pairs(v)))
}

pub(super) fn witness(seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    let opts = IdealOptions {
        seed,
        ..IdealOptions::default()
    };

    let t = LinearTensor::rnc_multiplication(&[2, 2, 2, 2]);
    let label = "nu_8 by O(2)^4, p*=(1,0,0,0), q=1";
    let pushed = nonvanishing_witness(&t.source_spaces(), &[1, 0, 0, 0], 1).and_then(|s| pushforward_syzygy(&t, &s));
    let ideal = ideal_bottom_component(
        &PolynomialParametrization::rational_normal_curve(8),
        1,
        1,
        Method::Jets,
        &opts,
    );
    match (pushed, ideal) {
        (Ok(s), Ok(ideal)) => {
            let cycle = koszul_delta(&s, 0, 1).map(|d| d.is_zero()).unwrap_or(false);
            checks.push(Check::equal(
                format!("{label}: pushed witness is nonzero"),
                true,
                !s.is_zero(),
            ));
            checks.push(Check::equal(format!("{label}: pushed witness is a cycle"), true, cycle));
            checks.push(Check::equal(
                format!("{label}: legs lie in I(tau nu_8)_2"),
                true,
                legs_in(&s, &Subspace::spanned_by(&ideal.basis)),
            ));
        }
        (Err(e), _) => checks.push(Check::failed(label, "witness", e)),
        (_, Err(e)) => checks.push(Check::failed(label, "ideal", e)),
    }

    let t = LinearTensor::rnc_multiplication(&[1, 1, 1, 1]);
    let label = "4-way tensor on nu_4, p=0, q=1: pushed witness";
    match nonvanishing_witness(&t.source_spaces(), &[0, 0, 0, 0], 1).and_then(|s| pushforward_syzygy(&t, &s)) {
        Ok(s) => checks.push(Check::equal(
            label,
            "x0*x4 - 4*x1*x3 + 3*x2^2",
            format_form(&Factor::sym(&t.target_space(), 2), s.coeffs()),
        )),
        Err(e) => checks.push(Check::failed(label, "quadric", e)),
    }

    for (dims, q, p_max) in [
        (vec![2, 3], 1, 2),
        (vec![3, 3], 1, 2),
        (vec![2, 2, 2, 2], 1, 1),
        (vec![3, 3, 3, 2], 1, 1),
    ] {
        let spaces: Vec<Space> = dims
            .iter()
            .enumerate()
            .map(|(i, &n)| Space::new(&format!("V{}", i + 1), n))
            .collect();
        for p in 0..=p_max {
            for pstar in osculant_core::schur::ordered_partitions(p, dims.len()) {
                let predicted = pstar.iter().zip(&dims).all(|(&pi, &n)| n > p - pi + q);
                let label = format!("witness {dims:?}, p*={pstar:?}, q={q}: nonzero");
                match nonvanishing_witness(&spaces, &pstar, q) {
                    Ok(s) => {
                        checks.push(Check::equal(label.clone(), predicted, !s.is_zero()));
                        if dims.len() == 2 && predicted {
                            let inside = bottom_cycles(&spaces[0], &spaces[1], p, q, Kind::Sym).map(|c| {
                                let mut all: Vec<SparseVec> = c.iter().map(|e| e.coeffs().clone()).collect();
                                let before = vectors_rank(&all);
                                all.push(s.coeffs().clone());
                                before == vectors_rank(&all)
                            });
                            match inside {
                                Ok(b) => checks.push(Check::equal(format!("{label} and a bottom cycle"), true, b)),
                                Err(e) => checks.push(Check::failed(label, true, e)),
                            }
                        }
                    }
                    Err(e) => checks.push(Check::failed(label, predicted, e)),
                }
            }
        }
    }
    checks
}
