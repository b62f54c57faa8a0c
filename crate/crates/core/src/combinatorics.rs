//! Binomial coefficients, combinatorial ranking of subsets and multisets, permutations.

use std::sync::OnceLock;

const TABLE_N: usize = 256;

fn table() -> &'static Vec<Vec<u64>> {
    static TABLE: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![vec![0u64; TABLE_N + 1]; TABLE_N + 1];
        for n in 0..=TABLE_N {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(if k < n { t[n - 1][k] } else { 0 });
            }
        }
        t
    })
}

/// `C(n, k)`; zero when `k > n`. Panics if the value does not fit in `u64`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let v = if n <= TABLE_N {
        table()[n][k]
    } else {
        let k = k.min(n - k);
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
            assert!(acc <= u64::MAX as u128, "binomial C({n}, {k}) overflows u64");
        }
        acc as u64
    };
    assert!(v != u64::MAX, "binomial C({n}, {k}) overflows u64");
    v
}

/// Number of multisets of size `k` drawn from `n` letters.
pub fn multichoose(n: usize, k: usize) -> u64 {
    if k == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    binomial(n + k - 1, k)
}

/// Colex rank of a strictly increasing sequence: `sum_i C(c_i, i + 1)`.
pub fn colex_rank(set: &[usize]) -> u64 {
    set.iter().enumerate().map(|(i, &c)| binomial(c, i + 1)).sum()
}

/// Inverse of [`colex_rank`] for sets of size `k` with elements below `n`.
pub fn colex_unrank(mut r: u64, k: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    let mut hi = n;
    for i in (0..k).rev() {
        let mut c = hi;
        while c > 0 && binomial(c - 1, i + 1) > r {
            c -= 1;
        }
        // c - 1 is the largest value with C(c - 1, i + 1) <= r
        let v = c - 1;
        r -= binomial(v, i + 1);
        out[i] = v;
        hi = v;
    }
    out
}

/// Sign of the permutation sorting `seq` (distinct entries); `None` on repeats.
pub fn sort_sign(seq: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..seq.len() {
        let mut j = i;
        while j > 0 && seq[j - 1] > seq[j] {
            seq.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && seq[j - 1] == seq[j] {
            return None;
        }
    }
    Some(sign)
}

/// All permutations of `0..m` with their signs.
pub fn signed_permutations(m: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..m).collect();
    fn rec(k: usize, perm: &mut Vec<usize>, sign: i32, out: &mut Vec<(Vec<usize>, i32)>) {
        if k == perm.len() {
            out.push((perm.clone(), sign));
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(k + 1, perm, if i == k { sign } else { -sign }, out);
            perm.swap(k, i);
        }
    }
    rec(0, &mut perm, 1, &mut out);
    out
}

/// Weak compositions of `total` into `parts` nonnegative entries, in colex order.
pub fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    // colex: compare last entry first, smaller first
    for last in 0..=total {
        for mut head in weak_compositions(total - last, parts - 1) {
            head.push(last);
            out.push(head);
        }
    }
    out
}
