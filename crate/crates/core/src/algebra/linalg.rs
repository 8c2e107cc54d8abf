//! Small dense exact linear algebra.

use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use super::Rational;
use crate::error::{Error, Result};

/// Determinant of a square polynomial matrix by fraction-free (Bareiss)
/// elimination.
pub fn det_bareiss(matrix: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::Internal("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(Polynomial::one());
    }
    let mut a: Vec<Vec<Polynomial>> = matrix.to_vec();
    let mut sign = Rational::one();
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Polynomial::zero());
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .try_div_exact(&prev)
                    .ok_or_else(|| Error::Internal("inexact Bareiss division".into()))?;
            }
            a[i][k] = Polynomial::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(a[n - 1][n - 1].scale(&sign))
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn invert_rational(matrix: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Internal("singular rational matrix".into()))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let s = &a[col][j] * &f;
                    a[r][j] -= s;
                    let s = &inv[col][j] * &f;
                    inv[r][j] -= s;
                }
            }
        }
    }
    Ok(inv)
}
