//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::Matrix;

/// Invariant factors `d_1 | d_2 | ... | d_r` followed by zeros, all nonnegative,
/// one per diagonal position (`min(rows, cols)` entries).
pub fn smith_normal_form(m: &Matrix<BigInt>) -> Vec<BigInt> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone().into_rows();
    let size = rows.min(cols);
    for t in 0..size {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return finish(a, size);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let d = &q * &a[i][t];
                        a[i][j] -= d;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            match offender {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
    }
    finish(a, size)
}

fn finish(a: Vec<Vec<BigInt>>, size: usize) -> Vec<BigInt> {
    let mut diag: Vec<BigInt> = (0..size).map(|i| a[i][i].abs()).collect();
    // nonzero factors first, keeping their divisibility order
    diag.sort_by(|x, y| match (x.is_zero(), y.is_zero()) {
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        _ => x.cmp(y),
    });
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn textbook_example() {
        let m = mat(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_normal_form(&m), ints(&[2, 6, 12]));
    }

    #[test]
    fn diagonal_is_sorted_into_a_divisibility_chain() {
        let m = mat(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m), ints(&[1, 6]));
        let m = mat(vec![vec![0, 0], vec![0, 2]]);
        assert_eq!(smith_normal_form(&m), ints(&[2, 0]));
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(smith_normal_form(&mat(vec![vec![0, 0]])), ints(&[0]));
    }
}
