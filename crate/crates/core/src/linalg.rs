//! Dense linear algebra over the [`Ring`]/[`Field`] traits.

use crate::error::{AlgebraError, Result};
use crate::ring::{Field, Ring};

pub type Matrix<T> = Vec<Vec<T>>;

pub fn transpose<T: Clone>(a: &Matrix<T>) -> Matrix<T> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul<T: Ring>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let zero = a[0][0].zero_like();
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b.iter()).fold(zero.clone(), |acc, (x, brow)| acc.plus(&x.times(&brow[j]))))
                .collect()
        })
        .collect()
}

pub fn mat_vec<T: Ring>(a: &Matrix<T>, v: &[T]) -> Vec<T> {
    a.iter().map(|row| row.iter().zip(v).fold(v[0].zero_like(), |acc, (x, y)| acc.plus(&x.times(y)))).collect()
}

pub fn identity<T: Ring>(n: usize, sample: &T) -> Matrix<T> {
    (0..n).map(|i| (0..n).map(|j| if i == j { sample.one_like() } else { sample.zero_like() }).collect()).collect()
}

/// Determinant by Gaussian elimination.
pub fn determinant<T: Field>(m: &Matrix<T>) -> T {
    let n = m.len();
    let mut a = m.clone();
    let mut det = a[0][0].one_like();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero_elem()) else {
            return det.zero_like();
        };
        if piv != k {
            a.swap(piv, k);
            det = det.negated();
        }
        det = det.times(&a[k][k]);
        let inv = a[k][k].inverse().expect("nonzero pivot is invertible");
        for i in k + 1..n {
            if a[i][k].is_zero_elem() {
                continue;
            }
            let f = a[i][k].times(&inv);
            for j in k..n {
                let t = f.times(&a[k][j]);
                a[i][j] = a[i][j].minus(&t);
            }
        }
    }
    det
}

/// Coefficients `[1, c_1, ..., c_n]` of `det(x I - M)`, computed without division.
pub fn charpoly<T: Ring>(m: &Matrix<T>) -> Vec<T> {
    let n = m.len();
    let one = m[0][0].one_like();
    let mut coeffs = vec![one.clone(), m[0][0].negated()];
    for r in 1..n {
        // first column of the Toeplitz factor: 1, -a_rr, -R S, -R M S, ..., -R M^{r-1} S
        let mut col = vec![one.clone(), m[r][r].negated()];
        let mut v: Vec<T> = (0..r).map(|i| m[i][r].clone()).collect();
        for _ in 0..r {
            let rv = (0..r).fold(one.zero_like(), |acc, j| acc.plus(&m[r][j].times(&v[j])));
            col.push(rv.negated());
            v = (0..r).map(|i| (0..r).fold(one.zero_like(), |acc, j| acc.plus(&m[i][j].times(&v[j])))).collect();
        }
        let next: Vec<T> = (0..r + 2)
            .map(|i| (0..=i.min(r)).fold(one.zero_like(), |acc, j| acc.plus(&col[i - j].times(&coeffs[j]))))
            .collect();
        coeffs = next;
    }
    coeffs
}

/// `transform^T * G * transform = diag(diagonal)`.
#[derive(Clone, Debug)]
pub struct Diagonalization<T> {
    pub transform: Matrix<T>,
    pub diagonal: Vec<T>,
}

/// Congruence diagonalization of a symmetric matrix; needs `2` invertible.
pub fn diagonalize_symmetric<T: Field>(g: &Matrix<T>) -> Result<Diagonalization<T>> {
    let n = g.len();
    if g.iter().any(|row| row.len() != n) {
        return Err(AlgebraError::InvalidArgument("Gram matrix must be square".into()));
    }
    if n == 0 {
        return Ok(Diagonalization { transform: Vec::new(), diagonal: Vec::new() });
    }
    let sample = g[0][0].clone();
    if sample.int_like(2).inverse().is_none() {
        return Err(AlgebraError::InvalidArgument("diagonalization needs characteristic != 2".into()));
    }
    let mut a = g.clone();
    let mut l = identity(n, &sample);
    for k in 0..n {
        if a[k][k].is_zero_elem() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero_elem()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
                for row in l.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero_elem()) {
                // e_k <- e_k + e_j turns a hyperbolic pair into a nonzero pivot
                for i in 0..n {
                    let t = a[i][j].clone();
                    a[i][k] = a[i][k].plus(&t);
                }
                for i in 0..n {
                    let t = a[j][i].clone();
                    a[k][i] = a[k][i].plus(&t);
                }
                for row in l.iter_mut() {
                    let t = row[j].clone();
                    row[k] = row[k].plus(&t);
                }
            } else {
                continue;
            }
        }
        let inv = a[k][k].inverse().expect("nonzero pivot is invertible");
        for j in k + 1..n {
            if a[k][j].is_zero_elem() {
                continue;
            }
            let f = a[k][j].times(&inv);
            for i in 0..n {
                let t = f.times(&a[i][k]);
                a[i][j] = a[i][j].minus(&t);
            }
            for i in 0..n {
                let t = f.times(&a[k][i]);
                a[j][i] = a[j][i].minus(&t);
            }
            for row in l.iter_mut() {
                let t = f.times(&row[k]);
                row[j] = row[j].minus(&t);
            }
        }
    }
    let diagonal = (0..n).map(|i| a[i][i].clone()).collect();
    Ok(Diagonalization { transform: l, diagonal })
}
