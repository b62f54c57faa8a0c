use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{GradedIdealSlice, SyzygyError};
use crate::linalg::{vectors_rank, vectors_rank_modp, SparseVec};
use crate::multilinear::{koszul_delta, Factor, GradedElement, GradedPiece, Kind};

/// A Koszul cohomology group `K_(p,j)` (kind `Sym`: the ideal lives in the symmetric
/// algebra, twisted by exterior powers) or `K^(p,j)` (kind `Ext`: an exterior ideal twisted
/// by symmetric powers).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulSpot {
    pub p: usize,
    pub j: usize,
    pub kind: Kind,
}

impl KoszulSpot {
    pub fn new(p: usize, j: usize, kind: Kind) -> Self {
        KoszulSpot { p, j, kind }
    }
}

fn opposite(kind: Kind) -> Kind {
    match kind {
        Kind::Sym => Kind::Ext,
        Kind::Ext => Kind::Sym,
    }
}

/// Rank of the Koszul differential on `P^p V ⊗ I_j`, where `P` is the power opposite to
/// the ideal's kind, computed weight block by weight block.
fn differential_rank(
    slice: &GradedIdealSlice,
    p: usize,
    basis: &[SparseVec],
    j: usize,
    modp: Option<u64>,
) -> Result<usize, SyzygyError> {
    if p == 0 || basis.is_empty() {
        return Ok(0);
    }
    let space = slice.ambient();
    let outer = Factor::new(space, p, opposite(slice.kind()));
    let inner = slice.factor(j);
    let piece = GradedPiece::new(vec![outer.clone(), inner.clone()]);
    let qweights = slice.basis_weights(j).ok_or(SyzygyError::MissingDegree { degree: j })?;
    let mut groups: BTreeMap<Vec<u32>, Vec<(usize, usize)>> = BTreeMap::new();
    for a in 0..outer.dim() {
        let wa = slice.word_weight(&outer.unrank(a));
        for (qi, wq) in qweights.iter().enumerate() {
            let key: Vec<u32> = wa.iter().zip(wq).map(|(x, y)| x + y).collect();
            groups.entry(key).or_default().push((a, qi));
        }
    }
    let groups: Vec<Vec<(usize, usize)>> = groups.into_values().collect();
    let ranks = groups
        .par_iter()
        .map(|cols| {
            let images: Vec<SparseVec> = cols
                .iter()
                .map(|&(a, qi)| {
                    let aw = outer.unrank(a);
                    let pairs = basis[qi]
                        .entries()
                        .iter()
                        .map(|(m, c)| (piece.rank(&[aw.clone(), inner.unrank(*m)]), c.clone()));
                    let el = GradedElement::from_vector(&piece, SparseVec::from_pairs(pairs));
                    Ok(koszul_delta(&el, 0, 1)?.into_coeffs())
                })
                .collect::<Result<_, SyzygyError>>()?;
            Ok(match modp {
                None => vectors_rank(&images),
                Some(prime) => vectors_rank_modp(&images, prime)?,
            })
        })
        .collect::<Result<Vec<usize>, SyzygyError>>()?;
    Ok(ranks.into_iter().sum())
}

fn cohomology(slice: &GradedIdealSlice, spot: KoszulSpot, modp: Option<u64>) -> Result<usize, SyzygyError> {
    if spot.kind != slice.kind() {
        return Err(SyzygyError::Mismatch(format!(
            "spot of kind {:?} on an ideal of kind {:?}",
            spot.kind,
            slice.kind()
        )));
    }
    if spot.j == 0 {
        return Err(SyzygyError::Mismatch("weight j must be positive".into()));
    }
    let middle = slice
        .basis(spot.j)
        .ok_or(SyzygyError::MissingDegree { degree: spot.j })?;
    let below: &[SparseVec] = match slice.basis(spot.j - 1) {
        Some(b) => b,
        None if slice.initial_degree().is_none_or(|d| spot.j - 1 < d) => &[],
        None => return Err(SyzygyError::MissingDegree { degree: spot.j - 1 }),
    };
    let outer = Factor::new(slice.ambient(), spot.p, opposite(slice.kind()));
    let cycles = outer.dim() * middle.len() - differential_rank(slice, spot.p, middle, spot.j, modp)?;
    let boundaries = differential_rank(slice, spot.p + 1, below, spot.j - 1, modp)?;
    Ok(cycles - boundaries)
}

/// `dim K_(p,j)`: the kernel of `Λ^p V ⊗ I_j → Λ^(p-1) V ⊗ S^(j+1) V` modulo the image of
/// `Λ^(p+1) V ⊗ I_(j-1)`. The differential is taken into the full symmetric power, which
/// has the same kernel as the map into `I_(j+1)`. A missing degree below the initial
/// degree counts as zero.
pub fn koszul_cohomology_dim(slice: &GradedIdealSlice, spot: KoszulSpot) -> Result<usize, SyzygyError> {
    cohomology(slice, spot, None)
}

/// The same count with ranks taken modulo `p`. Ranks can only drop modulo a prime, so
/// the result bounds the exact dimension from above; use it as a filter.
pub fn koszul_cohomology_dim_modp(slice: &GradedIdealSlice, spot: KoszulSpot, p: u64) -> Result<usize, SyzygyError> {
    cohomology(slice, spot, Some(p))
}
