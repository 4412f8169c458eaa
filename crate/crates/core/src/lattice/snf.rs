//! Smith normal form of integer matrices with transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `left · matrix · right = diag(diagonal)` with unimodular `left`, `right`
/// and `d_1 | d_2 | ...`, all nonnegative.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn smith_normal_form(matrix: &[Vec<BigInt>]) -> SmithForm {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a = matrix.to_vec();
    let mut left = identity(rows);
    let mut right = identity(cols);

    let add_row = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, k: &BigInt| {
        for c in 0..m[dst].len() {
            let delta = k * &m[src][c];
            m[dst][c] += delta;
        }
    };
    let add_col = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, k: &BigInt| {
        for row in m.iter_mut() {
            let delta = k * &row[src];
            row[dst] += delta;
        }
    };
    let swap_cols = |m: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };

    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                break;
            };
            a.swap(t, pi);
            left.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut right, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let k = -a[i][t].div_floor(&a[t][t]);
                if !k.is_zero() {
                    add_row(&mut a, i, t, &k);
                    add_row(&mut left, i, t, &k);
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let k = -a[t][j].div_floor(&a[t][t]);
                if !k.is_zero() {
                    add_col(&mut a, j, t, &k);
                    add_col(&mut right, j, t, &k);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    add_row(&mut a, t, i, &one);
                    add_row(&mut left, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for c in 0..cols {
                a[t][c] = -&a[t][c];
            }
            for c in 0..rows {
                left[t][c] = -&left[t][c];
            }
        }
    }
    let diagonal = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
    SmithForm {
        diagonal,
        left,
        right,
    }
}
