use osculant_core::linalg::{column_kernel, int, vectors_rank, SparseVec};
use osculant_core::multilinear::{coproduct, derive, koszul_delta, multiply, pair_map, prolong_vectors, tensor};
use osculant_core::{Factor, GradedElement, GradedPiece, Kind, Space};
use proptest::prelude::*;

fn element(piece: &GradedPiece, coeffs: &[i8]) -> GradedElement {
    let pairs = (0..piece.dim())
        .zip(coeffs.iter().cycle())
        .map(|(i, &c)| (i, int(c as i64)));
    GradedElement::from_vector(piece, SparseVec::from_pairs(pairs))
}

fn coeffs() -> impl Strategy<Value = Vec<i8>> {
    proptest::collection::vec(-3i8..=3, 1..40)
}

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Sym), Just(Kind::Ext)]
}

fn wedge(f: &GradedElement, g: &GradedElement) -> GradedElement {
    multiply(&tensor(f, g), 0, 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_after_coproduct_is_identity(n in 1usize..=5, total in 1usize..=5, split in 0usize..=5, k in kind(), c in coeffs()) {
        let a = split.min(total);
        let f = element(&GradedPiece::single(Factor::new(&Space::new("U", n), total, k)), &c);
        let back = multiply(&coproduct(&f, 0, (a, total - a)).unwrap(), 0, 1).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn contraction_is_a_graded_derivation(n in 1usize..=5, a in 1usize..=3, b in 1usize..=3, i in 0usize..5, c1 in coeffs(), c2 in coeffs()) {
        let u = Space::new("U", n);
        let i = i % n;
        let f = element(&GradedPiece::single(Factor::ext(&u, a)), &c1);
        let g = element(&GradedPiece::single(Factor::ext(&u, b)), &c2);
        let d = |e: &GradedElement| derive(&[i], 0, e).unwrap();
        let sign = if a % 2 == 0 { int(1) } else { int(-1) };
        let rhs = wedge(&d(&f), &g).axpy(&sign, &wedge(&f, &d(&g))).unwrap();
        prop_assert_eq!(d(&wedge(&f, &g)), rhs);
    }

    #[test]
    fn symmetric_derivative_is_a_derivation(n in 1usize..=4, a in 1usize..=3, b in 1usize..=3, i in 0usize..4, c1 in coeffs(), c2 in coeffs()) {
        let u = Space::new("U", n);
        let i = i % n;
        let f = element(&GradedPiece::single(Factor::sym(&u, a)), &c1);
        let g = element(&GradedPiece::single(Factor::sym(&u, b)), &c2);
        let d = |e: &GradedElement| derive(&[i], 0, e).unwrap();
        let rhs = wedge(&d(&f), &g).add(&wedge(&f, &d(&g))).unwrap();
        prop_assert_eq!(d(&wedge(&f, &g)), rhs);
    }

    #[test]
    fn koszul_differential_squares_to_zero(n in 1usize..=4, a in 0usize..=4, b in 0usize..=3, first in kind(), c in coeffs()) {
        let u = Space::new("U", n);
        let second = if first == Kind::Sym { Kind::Ext } else { Kind::Sym };
        let piece = GradedPiece::new(vec![Factor::new(&u, a, first), Factor::new(&u, b, second)]);
        let f = element(&piece, &c);
        prop_assert!(koszul_delta(&koszul_delta(&f, 0, 1).unwrap(), 0, 1).unwrap().is_zero());
    }

    #[test]
    fn jacobi_formula(m in 1usize..=3, nu in 1usize..=4, nw in 1usize..=4, first in kind(), i in 0usize..4, j in 0usize..4, c1 in coeffs(), c2 in coeffs()) {
        let (u, w) = (Space::new("U", nu), Space::new("W", nw));
        let (i, j) = (i % nu, j % nw);
        let f = element(&GradedPiece::single(Factor::new(&u, m, first)), &c1);
        let g = element(&GradedPiece::single(Factor::ext(&w, m)), &c2);
        let lhs = derive(&[i * nw + j], 0, &pair_map(&tensor(&f, &g), 0, 1).unwrap()).unwrap();
        let inner = tensor(&derive(&[i], 0, &f).unwrap(), &derive(&[j], 0, &g).unwrap());
        prop_assert_eq!(lhs, pair_map(&inner, 0, 1).unwrap());
    }

    #[test]
    fn wedge_kernel_is_annihilated(nu in 1usize..=4, nw in 1usize..=4, q in 1usize..=2, c in coeffs()) {
        let (u, w) = (Space::new("U", nu), Space::new("W", nw));
        let piece = GradedPiece::new(vec![Factor::ext(&u, 1), Factor::ext(&u, q)]);
        let images: Vec<SparseVec> = (0..piece.dim())
            .map(|r| multiply(&GradedElement::basis(&piece, r), 0, 1).unwrap().into_coeffs())
            .collect();
        let g = element(&GradedPiece::single(Factor::ext(&w, q + 1)), &c);
        for x in column_kernel(&images) {
            let e = tensor(&GradedElement::from_vector(&piece, x), &g);
            let e = coproduct(&e, 2, (1, q)).unwrap();
            let e = pair_map(&pair_map(&e, 0, 2).unwrap(), 1, 2).unwrap();
            prop_assert!(multiply(&e, 0, 1).unwrap().is_zero());
        }
    }
}

/// Ranks of the Koszul differentials around `P^a ⊗ Q^b`; the complex is exact in positive
/// total degree.
fn koszul_ranks(n: usize, first: Kind, a: usize, b: usize) -> (usize, usize, usize) {
    let u = Space::new("U", n);
    let second = if first == Kind::Sym { Kind::Ext } else { Kind::Sym };
    let rank_of = |a: usize, b: usize| {
        let piece = GradedPiece::new(vec![Factor::new(&u, a, first), Factor::new(&u, b, second)]);
        let images: Vec<SparseVec> = (0..piece.dim())
            .map(|r| {
                koszul_delta(&GradedElement::basis(&piece, r), 0, 1)
                    .unwrap()
                    .into_coeffs()
            })
            .collect();
        (piece.dim(), vectors_rank(&images))
    };
    let (dim, out) = rank_of(a, b);
    let incoming = if b == 0 { 0 } else { rank_of(a + 1, b - 1).1 };
    (dim, out, incoming)
}

#[test]
fn koszul_complexes_are_exact() {
    for n in 1..=4 {
        for first in [Kind::Sym, Kind::Ext] {
            for a in 0..=3 {
                for b in 0..=3 {
                    if a + b == 0 {
                        continue;
                    }
                    let (dim, out, incoming) = koszul_ranks(n, first, a, b);
                    assert_eq!(dim - out, incoming, "n={n} {first:?} a={a} b={b}");
                }
            }
        }
    }
}

#[test]
fn prolongation_of_determinantal_quadrics() {
    // the 2x2 minors of a 2x3 matrix prolong to the (empty) space of 3x3 minors
    let (u, w) = (Space::new("U", 2), Space::new("W", 3));
    let piece = GradedPiece::new(vec![Factor::ext(&u, 2), Factor::ext(&w, 2)]);
    let minors: Vec<SparseVec> = (0..piece.dim())
        .map(|r| pair_map(&GradedElement::basis(&piece, r), 0, 1).unwrap().into_coeffs())
        .collect();
    let s2 = Factor::sym(&u.tensor(&w), 2);
    assert!(prolong_vectors(&s2, &minors, 1).is_empty());
    let (u, w) = (Space::new("U", 3), Space::new("W", 3));
    let piece = GradedPiece::new(vec![Factor::ext(&u, 2), Factor::ext(&w, 2)]);
    let minors: Vec<SparseVec> = (0..piece.dim())
        .map(|r| pair_map(&GradedElement::basis(&piece, r), 0, 1).unwrap().into_coeffs())
        .collect();
    let s2 = Factor::sym(&u.tensor(&w), 2);
    let cubics = prolong_vectors(&s2, &minors, 1);
    assert_eq!(cubics.len(), 1);
    assert_eq!(cubics[0].nnz(), 6);
}
