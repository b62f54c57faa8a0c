use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::ops::wedge_words;
use super::{Factor, GradedElement, Kind, Space, Word};
use crate::linalg::{Rational, SparseVec};

/// Image of one basis word under the power of a linear map with the given letter images.
pub(crate) fn power_word(kind: Kind, w: &[usize], image: &dyn Fn(usize) -> SparseVec) -> BTreeMap<Word, Rational> {
    let mut acc: BTreeMap<Word, Rational> = BTreeMap::new();
    acc.insert(Vec::new(), Rational::one());
    for &letter in w {
        let img = image(letter);
        let mut next: BTreeMap<Word, Rational> = BTreeMap::new();
        for (word, c) in &acc {
            for (y, v) in img.entries() {
                let (sign, merged) = match kind {
                    Kind::Sym => {
                        let mut m = word.clone();
                        let pos = m.partition_point(|&z| z <= *y);
                        m.insert(pos, *y);
                        (Rational::one(), m)
                    }
                    Kind::Ext => match wedge_words(word, &[*y]) {
                        Some(x) => x,
                        None => continue,
                    },
                };
                *next.entry(merged).or_insert_with(Rational::zero) += sign * c * v;
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc
}

/// Applies the power of a linear map `φ: factor.space → target` to factor `index`;
/// `image(i)` is `φ(u_i)` in coordinates of `target`.
pub fn apply_linear(
    f: &GradedElement,
    index: usize,
    target: &Space,
    image: &dyn Fn(usize) -> SparseVec,
) -> GradedElement {
    let piece = f.piece();
    let factor = piece.factor(index);
    let new_factor = Factor::new(target, factor.power, factor.kind);
    let target_piece = piece.replace(index, &[new_factor]);
    let kind = factor.kind;
    f.map_terms(&target_piece, |label, out| {
        for (w, c) in power_word(kind, &label[index], image) {
            let mut next = label.clone();
            next[index] = w;
            out.push((next, c));
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::multilinear::GradedPiece;

    #[test]
    fn powers_of_a_linear_map() {
        let u = Space::new("U", 2);
        let v = Space::new("V", 2);
        // u0 -> v0 + v1, u1 -> v1
        let image = |i: usize| {
            if i == 0 {
                SparseVec::from_pairs([(0, int(1)), (1, int(1))])
            } else {
                SparseVec::unit(1)
            }
        };
        let s = GradedPiece::single(Factor::sym(&u, 2));
        let f = GradedElement::monomial(&s, vec![vec![0, 0]]).unwrap();
        let g = apply_linear(&f, 0, &v, &image);
        let t = GradedPiece::single(Factor::sym(&v, 2));
        let expect = GradedElement::from_terms(
            &t,
            [
                (vec![vec![0, 0]], int(1)),
                (vec![vec![0, 1]], int(2)),
                (vec![vec![1, 1]], int(1)),
            ],
        )
        .unwrap();
        assert_eq!(g, expect);

        let e = GradedPiece::single(Factor::ext(&u, 2));
        let f = GradedElement::monomial(&e, vec![vec![0, 1]]).unwrap();
        let g = apply_linear(&f, 0, &v, &image);
        let t = GradedPiece::single(Factor::ext(&v, 2));
        assert_eq!(g, GradedElement::monomial(&t, vec![vec![0, 1]]).unwrap());
    }
}
