//! Dense matrices and fraction-free determinants.

use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::polynomial::Polynomial;
use super::rational::{multiset_lcm, multiset_minus, product, DenominatorFactor, RationalFunction};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Matrix<T> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Matrix<T> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Matrix {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        let cols = self.cols;
        self.data.iter().enumerate().map(move |(k, x)| ((k / cols, k % cols), x))
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        let cols = self.cols;
        let mut out = Vec::with_capacity(self.rows);
        let mut it = self.data.into_iter();
        for _ in 0..self.rows {
            out.push(it.by_ref().take(cols).collect());
        }
        out
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix<RationalFunction> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                RationalFunction::one()
            } else {
                RationalFunction::zero()
            }
        })
    }

    /// Exact matrix product; entries are computed in parallel.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let (n, m, k) = (self.rows, rhs.cols, self.cols);
        let data: Vec<RationalFunction> = (0..n * m)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / m, idx % m);
                let mut acc = RationalFunction::zero();
                for l in 0..k {
                    let a = &self[(i, l)];
                    let b = &rhs[(l, j)];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                acc
            })
            .collect();
        Matrix { rows: n, cols: m, data }
    }
}

/// Determinant over `Z[x]` by Bareiss fraction-free elimination.
///
/// Every division is exact; a failing division means the arithmetic is broken
/// and panics.
pub fn bareiss_determinant(m: &Matrix<Polynomial>) -> Polynomial {
    assert!(m.is_square() && m.rows() > 0, "determinant needs a nonempty square matrix");
    let n = m.rows();
    let mut a = m.clone().into_rows();
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..n.saturating_sub(1) {
        // pick the sparsest nonzero pivot to keep intermediate sizes down
        let pivot = (k..n)
            .filter(|&r| !a[r][k].is_zero())
            .min_by_key(|&r| (a[r][k].num_terms(), r));
        let Some(p) = pivot else {
            return Polynomial::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let divisor = &prev;
        bottom.par_iter_mut().for_each(|row| {
            for j in k + 1..n {
                let num = &(&row[j] * &pivot_row[k]) - &(&row[k] * &pivot_row[j]);
                row[j] = num
                    .exact_div(divisor)
                    .expect("Bareiss step must divide exactly");
            }
            row[k] = Polynomial::zero();
        });
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Determinant of a matrix of rational functions.
///
/// Each row is cleared by the least common multiset of its denominator factors,
/// the cleared polynomial matrix goes through [`bareiss_determinant`], and the
/// result is divided by the product of the row denominators.
pub fn determinant(m: &Matrix<RationalFunction>) -> RationalFunction {
    assert!(m.is_square() && m.rows() > 0, "determinant needs a nonempty square matrix");
    let n = m.rows();
    let mut all_factors: Vec<DenominatorFactor> = Vec::new();
    let mut cleared_rows = Vec::with_capacity(n);
    for i in 0..n {
        let row = m.row(i);
        let lcm = row
            .iter()
            .fold(Vec::new(), |acc, r| multiset_lcm(&acc, r.denominator()));
        let cleared: Vec<Polynomial> = row
            .iter()
            .map(|r| {
                let missing = multiset_minus(&lcm, r.denominator());
                r.numerator() * &product(&missing)
            })
            .collect();
        all_factors.extend(lcm);
        cleared_rows.push(cleared);
    }
    let det = bareiss_determinant(&Matrix::from_rows(cleared_rows));
    RationalFunction::new(det, all_factors)
}

/// Integer matrix obtained by evaluating every entry at the all-ones point.
///
/// Returns `None` if some entry still has a denominator.
pub fn evaluate_at_ones(m: &Matrix<RationalFunction>) -> Option<Matrix<BigInt>> {
    let one = BigInt::from(1);
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for (_, r) in m.iter() {
        out.push(r.as_polynomial()?.evaluate_all(&one));
    }
    let cols = m.cols();
    Some(Matrix::from_fn(m.rows(), cols, |i, j| out[i * cols + j].clone()))
}
