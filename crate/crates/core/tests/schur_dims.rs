use osculant_core::combinatorics::binomial;
use osculant_core::schur::{
    bottom_syzygy_dims_segre, cauchy_littlewood_dims, cauchy_littlewood_expected, green_lazarsfeld_ext_dims,
    green_lazarsfeld_sym_dims, lascoux_bottom_dims, schur_dim,
};
use osculant_core::Partition;

/// Counts semistandard tableaux of shape `λ` with entries below `n`, filling cells in
/// row-major order.
fn count_ssyt(lambda: &[usize], n: usize) -> u64 {
    fn fill(n: usize, grid: &mut Vec<Vec<usize>>, cell: usize, cells: &[(usize, usize)]) -> u64 {
        if cell == cells.len() {
            return 1;
        }
        let (i, j) = cells[cell];
        let left = if j > 0 { grid[i][j - 1] } else { 0 };
        let above = if i > 0 { grid[i - 1][j] + 1 } else { 0 };
        let mut total = 0;
        for v in left.max(above)..n {
            grid[i][j] = v;
            total += fill(n, grid, cell + 1, cells);
        }
        total
    }
    let cells: Vec<(usize, usize)> = lambda
        .iter()
        .enumerate()
        .flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
        .collect();
    let mut grid: Vec<Vec<usize>> = lambda.iter().map(|&r| vec![0; r]).collect();
    fill(n, &mut grid, 0, &cells)
}

#[test]
fn hook_content_matches_tableau_count() {
    for t in 1..=6 {
        for lambda in Partition::all_of(t) {
            for n in 1..=4 {
                assert_eq!(schur_dim(&lambda, n), count_ssyt(lambda.parts(), n), "{lambda} n={n}");
            }
        }
    }
}

#[test]
fn documented_values() {
    assert_eq!(schur_dim(&Partition::new(vec![2, 1]).unwrap(), 2), 2);
    assert_eq!(schur_dim(&Partition::new(vec![2, 1]).unwrap(), 3), 8);
    assert_eq!(schur_dim(&Partition::hook(3, 0), 4), binomial(6, 3));
    assert_eq!(schur_dim(&Partition::hook(1, 2), 4), binomial(4, 3));
    assert_eq!(cauchy_littlewood_dims(2, 2, 2), (6, 10));
    assert_eq!(cauchy_littlewood_dims(3, 2, 3).0, 20);
    assert_eq!(lascoux_bottom_dims(0, 1, 2, 3), 3);
    assert_eq!(lascoux_bottom_dims(1, 1, 2, 3), 2);
    assert_eq!(lascoux_bottom_dims(0, 2, 3, 3), 1);
    assert_eq!(bottom_syzygy_dims_segre(0, 1, &[2, 2, 2, 2]).total, 1);
    assert_eq!(bottom_syzygy_dims_segre(1, 1, &[3, 3, 3, 2]).total, 2);
    assert_eq!(bottom_syzygy_dims_segre(2, 1, &[2, 2, 2, 2]).total, 0);
    assert_eq!(bottom_syzygy_dims_segre(0, 1, &[3, 3, 3, 2]).total, 27);
}

#[test]
fn cauchy_littlewood_totals() {
    for t in 0..=5 {
        for nu in 1..=4 {
            for nw in 1..=4 {
                assert_eq!(
                    cauchy_littlewood_dims(t, nu, nw),
                    cauchy_littlewood_expected(t, nu, nw),
                    "t={t} {nu}x{nw}"
                );
            }
        }
    }
}

#[test]
fn two_factor_segre_is_lascoux() {
    for p in 0..=4 {
        for q in 0..=3 {
            for nu in 1..=5 {
                for nw in 1..=5 {
                    assert_eq!(
                        bottom_syzygy_dims_segre(p, q, &[nu, nw]).total,
                        lascoux_bottom_dims(p, q, nu, nw),
                        "p={p} q={q} dims ({nu},{nw})"
                    );
                    assert_eq!(
                        green_lazarsfeld_sym_dims(p, q, nu, nw),
                        lascoux_bottom_dims(p, q, nu, nw)
                    );
                }
            }
        }
    }
}

#[test]
fn exterior_sums_by_enumeration() {
    // dims (2,3), p=1, q=1: a=0,b=1 and a=1,b=0
    let direct: u64 = (0..=1)
        .map(|a| {
            let b = 1 - a;
            schur_dim(&Partition::hook(b + 2, a), 2) * schur_dim(&Partition::hook(b + 1, a + 1), 3)
        })
        .sum();
    assert_eq!(green_lazarsfeld_ext_dims(1, 1, 2, 3), direct);
}

#[test]
fn conjugation_is_an_involution() {
    for t in 0..=8 {
        for lambda in Partition::all_of(t) {
            assert_eq!(lambda.conjugate().conjugate(), lambda);
            assert_eq!(lambda.conjugate().weight(), t);
        }
    }
}
