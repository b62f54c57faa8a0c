use std::collections::BTreeMap;

use rayon::prelude::*;

use super::SyzygyError;
use crate::linalg::{column_kernel, intersect_subspaces, span_basis, SparseVec};
use crate::multilinear::{koszul_delta, pair_map, Factor, GradedElement, GradedPiece, Kind, Space, Word};

fn opposite(kind: Kind) -> Kind {
    match kind {
        Kind::Sym => Kind::Ext,
        Kind::Ext => Kind::Sym,
    }
}

fn add_counts(total: &mut [u32], word: &[usize], letter: impl Fn(usize) -> Vec<usize>) {
    for &l in word {
        for i in letter(l) {
            total[i] += 1;
        }
    }
}

/// Kernel of `δ` on the span of the given basis labels, grouped by a weight function that
/// the differential preserves.
fn blocked_kernel<W>(
    piece: &GradedPiece,
    weight: W,
    image: impl Fn(&GradedElement) -> Result<GradedElement, SyzygyError> + Sync,
) -> Result<Vec<GradedElement>, SyzygyError>
where
    W: Fn(&[Word]) -> Vec<u32>,
{
    let mut groups: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for (r, label) in piece.labels().enumerate() {
        groups.entry(weight(&label)).or_default().push(r);
    }
    let groups: Vec<Vec<usize>> = groups.into_values().collect();
    let blocks = groups
        .par_iter()
        .map(|cols| {
            let mut images = Vec::with_capacity(cols.len());
            for &r in cols {
                images.push(image(&GradedElement::basis(piece, r))?.into_coeffs());
            }
            Ok(column_kernel(&images)
                .into_iter()
                .map(|x| SparseVec::from_pairs(x.into_entries().into_iter().map(|(i, c)| (cols[i], c))))
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>, SyzygyError>>()?;
    Ok(blocks
        .into_iter()
        .flatten()
        .map(|v| GradedElement::from_vector(piece, v))
        .collect())
}

/// Koszul cycles in `P^a V ⊗ Q^c V`, the kernel of `δ` from the first factor into the
/// second. With `first = Sym` this is `Z^{a,c} ⊆ S^a ⊗ Λ^c`; with `first = Ext` it is
/// `Z_{a,c} ⊆ Λ^a ⊗ S^c`.
pub fn koszul_cycles(space: &Space, first: Kind, a: usize, c: usize) -> Result<Vec<GradedElement>, SyzygyError> {
    let piece = GradedPiece::new(vec![
        Factor::new(space, a, first),
        Factor::new(space, c, opposite(first)),
    ]);
    let n = space.dim();
    blocked_kernel(
        &piece,
        |label| {
            let mut w = vec![0; n];
            for word in label {
                add_counts(&mut w, word, |l| vec![l]);
            }
            w
        },
        |e| Ok(koszul_delta(e, 0, 1)?),
    )
}

/// Piece holding the bottom syzygies: `Λ^p(U⊗W) ⊗ S^(q+1)(U⊗W)` for `Sym` (syzygies of
/// the ideal of `(q+1)`-minors) and `S^p(U⊗W) ⊗ Λ^(q+1)(U⊗W)` for `Ext` (exterior minors).
fn ambient_piece(uw: &Space, p: usize, q: usize, kind: Kind) -> GradedPiece {
    GradedPiece::new(vec![Factor::new(uw, p, opposite(kind)), Factor::new(uw, q + 1, kind)])
}

/// The bottom syzygy space: Koszul cycles of `Λ^p(U⊗W) ⊗ I_(q+1)` (kind `Sym`, `I` the
/// ideal of `(q+1)`-minors) or `S^p(U⊗W) ⊗ J_(q+1)` (kind `Ext`, `J` spanned by the
/// exterior minors). Letter `i·dim W + j` of `U⊗W` is `u_i ⊗ w_j`.
///
/// Computed as the image under `id ⊗ det` (resp. `id ⊗ edet`) of the kernel of
/// `δ ∘ (id ⊗ det)` on `P^p(U⊗W) ⊗ Λ^(q+1) U ⊗ Λ^(q+1) W`, blocked by the
/// `GL(U) × GL(W)` torus weight.
pub fn bottom_cycles(u: &Space, w: &Space, p: usize, q: usize, kind: Kind) -> Result<Vec<GradedElement>, SyzygyError> {
    let uw = u.tensor(w);
    let (nu, nw) = (u.dim(), w.dim());
    let u_kind = match kind {
        Kind::Sym => Kind::Ext,
        Kind::Ext => Kind::Sym,
    };
    let domain = GradedPiece::new(vec![
        Factor::new(&uw, p, opposite(kind)),
        Factor::new(u, q + 1, u_kind),
        Factor::ext(w, q + 1),
    ]);
    let weight = |label: &[Word]| {
        let mut t = vec![0; nu + nw];
        add_counts(&mut t, &label[0], |l| vec![l / nw, nu + l % nw]);
        add_counts(&mut t, &label[1], |l| vec![l]);
        add_counts(&mut t, &label[2], |l| vec![nu + l]);
        t
    };
    let kernel = blocked_kernel(&domain, weight, |e| Ok(koszul_delta(&pair_map(e, 1, 2)?, 0, 1)?))?;
    let mut by_weight: BTreeMap<Vec<u32>, Vec<SparseVec>> = BTreeMap::new();
    for x in &kernel {
        let key = x.terms().next().map(|(l, _)| weight(&l)).unwrap_or_default();
        let image = pair_map(x, 1, 2)?.into_coeffs();
        if !image.is_zero() {
            by_weight.entry(key).or_default().push(image);
        }
    }
    let target = ambient_piece(&uw, p, q, kind);
    Ok(by_weight
        .into_values()
        .flat_map(|vs| span_basis(&vs))
        .map(|v| GradedElement::from_vector(&target, v))
        .collect())
}

/// The same space as the intersection of `ker δ` with `P^p(U⊗W) ⊗ I_(q+1)` in the whole
/// ambient piece. Only practical for small spaces; kept as a cross-check.
pub fn bottom_cycles_by_intersection(
    u: &Space,
    w: &Space,
    p: usize,
    q: usize,
    kind: Kind,
) -> Result<Vec<GradedElement>, SyzygyError> {
    let uw = u.tensor(w);
    let target = ambient_piece(&uw, p, q, kind);
    let images: Vec<SparseVec> = (0..target.dim())
        .map(|r| Ok(koszul_delta(&GradedElement::basis(&target, r), 0, 1)?.into_coeffs()))
        .collect::<Result<_, SyzygyError>>()?;
    let cycles = column_kernel(&images);
    let u_kind = match kind {
        Kind::Sym => Kind::Ext,
        Kind::Ext => Kind::Sym,
    };
    let domain = GradedPiece::new(vec![
        Factor::new(&uw, p, opposite(kind)),
        Factor::new(u, q + 1, u_kind),
        Factor::ext(w, q + 1),
    ]);
    let minors: Vec<SparseVec> = (0..domain.dim())
        .map(|r| Ok(pair_map(&GradedElement::basis(&domain, r), 1, 2)?.into_coeffs()))
        .collect::<Result<_, SyzygyError>>()?;
    let minors = span_basis(&minors);
    Ok(intersect_subspaces(&cycles, &minors)
        .into_iter()
        .map(|v| GradedElement::from_vector(&target, v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vectors_rank;

    fn rank(v: &[GradedElement]) -> usize {
        vectors_rank(&v.iter().map(|e| e.coeffs().clone()).collect::<Vec<_>>())
    }

    #[test]
    fn pullback_matches_intersection() {
        let u = Space::new("U", 2);
        let w = Space::new("W", 3);
        for kind in [Kind::Sym, Kind::Ext] {
            for p in 0..3 {
                let a = bottom_cycles(&u, &w, p, 1, kind).unwrap();
                let b = bottom_cycles_by_intersection(&u, &w, p, 1, kind).unwrap();
                assert_eq!(a.len(), b.len(), "{kind:?} p={p}");
                let mut all = a.clone();
                all.extend(b);
                assert_eq!(rank(&all), a.len());
                assert_eq!(rank(&a), a.len());
            }
        }
        assert_eq!(bottom_cycles(&u, &w, 1, 1, Kind::Sym).unwrap().len(), 2);
    }

    #[test]
    fn cycles_of_a_plane() {
        let v = Space::new("V", 3);
        assert_eq!(koszul_cycles(&v, Kind::Sym, 0, 2).unwrap().len(), 3);
        assert_eq!(koszul_cycles(&v, Kind::Sym, 2, 3).unwrap().len(), 6);
        assert_eq!(koszul_cycles(&v, Kind::Ext, 1, 1).unwrap().len(), 3);
        assert!(koszul_cycles(&v, Kind::Ext, 3, 1).unwrap().is_empty());
    }
}
