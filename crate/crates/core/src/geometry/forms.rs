use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{Rational, SparseVec};
use crate::multilinear::{Factor, Kind};

/// Integer multiple of `v` with coprime entries whose lexicographically first term is
/// positive, as `(word, coefficient)` pairs in lexicographic word order.
pub fn primitive_integer_form(factor: &Factor, v: &SparseVec) -> Vec<(Vec<usize>, BigInt)> {
    let mut terms: Vec<(Vec<usize>, _)> = v
        .entries()
        .iter()
        .map(|(i, c)| (factor.unrank(*i), c.clone()))
        .collect();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let lcm = terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut ints: Vec<(Vec<usize>, BigInt)> = terms.into_iter().map(|(w, c)| (w, (c * &lcm).to_integer())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
    if g.is_zero() {
        return Vec::new();
    }
    let sign = if ints[0].1.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    for (_, c) in &mut ints {
        *c = &*c / &g * &sign;
    }
    ints
}

fn monomial(kind: Kind, w: &[usize]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        parts.push(if j - i > 1 {
            format!("x{}^{}", w[i], j - i)
        } else {
            format!("x{}", w[i])
        });
        i = j;
    }
    match kind {
        Kind::Sym => parts.join("*"),
        Kind::Ext => parts.join("∧"),
    }
}

/// Renders a form such as `x0*x4 - 4*x1*x3 + 3*x2^2` after primitive integer
/// normalization.
pub fn format_form(factor: &Factor, v: &SparseVec) -> String {
    let terms = primitive_integer_form(factor, v);
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (w, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = monomial(factor.kind, w);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

/// Value of a form at a point, exactly.
pub fn evaluate_form(factor: &Factor, v: &SparseVec, z: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (i, c) in v.entries() {
        let w = factor.unrank(*i);
        acc += w.iter().fold(c.clone(), |acc, &l| acc * &z[l]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::multilinear::Space;

    #[test]
    fn renders_the_tangent_quadric() {
        let f = Factor::sym(&Space::new("V", 5), 2);
        let v = SparseVec::from_pairs([
            (f.rank(&[0, 4]), rat(-1, 3)),
            (f.rank(&[1, 3]), rat(4, 3)),
            (f.rank(&[2, 2]), rat(-1, 1)),
        ]);
        assert_eq!(format_form(&f, &v), "x0*x4 - 4*x1*x3 + 3*x2^2");
        assert_eq!(format_form(&f, &SparseVec::new()), "0");
    }
}
