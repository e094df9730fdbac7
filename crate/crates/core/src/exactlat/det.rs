use num_rational::Ratio;
use num_traits::Zero;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{ratio_to_int, IntScalar};

/// Determinant by Bareiss fraction-free elimination.
pub fn det_exact<T: IntScalar>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let n = m.rows();
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = -sign;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                a[(i, j)] = v / prev.clone();
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * a[(n - 1, n - 1)].clone())
}

/// Determinants of the leading principal submatrices, orders 1..=n.
pub fn leading_minors<T: IntScalar>(m: &Matrix<T>) -> Vec<T> {
    let n = m.rows().min(m.cols());
    (1..=n)
        .map(|k| {
            let sub = Matrix::from_fn(k, k, |i, j| m[(i, j)].clone());
            det_exact(&sub).expect("square")
        })
        .collect()
}

/// Exact inverse over the rationals.
pub fn inverse_rational<T: IntScalar>(m: &Matrix<T>) -> Result<Vec<Vec<Ratio<T>>>> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let n = m.rows();
    let mut a: Vec<Vec<Ratio<T>>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        Ratio::from_integer(m[(i, j)].clone())
                    } else if j - n == i {
                        Ratio::from_integer(T::one())
                    } else {
                        Ratio::from_integer(T::zero())
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::DivisionByZero)?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = v.clone() / p.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..2 * n {
                    let sub = f.clone() * a[col][j].clone();
                    a[r][j] = a[r][j].clone() - sub;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Inverse of a unimodular integer matrix.
pub fn inverse_unimodular<T: IntScalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let inv = inverse_rational(m)?;
    let n = m.rows();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = ratio_to_int(&inv[i][j])
                .ok_or_else(|| Error::NotIntegral("inverse is not integral".into()))?;
        }
    }
    Ok(out)
}
