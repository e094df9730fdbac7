//! LLL reduction of a positive definite Gram matrix with exact rational
//! Gram–Schmidt data.

use num_rational::Ratio;

use super::matrix::{GramMatrix, Matrix};
use crate::error::Result;
use crate::scalar::{round_ratio, IntScalar};

/// Gram–Schmidt coefficients computed from a Gram matrix alone:
/// `b_i = b*_i + Σ_{j<i} mu[i][j] b*_j` and `sq_norms[i] = |b*_i|²`.
#[derive(Clone, Debug)]
pub struct GramSchmidt<T: IntScalar> {
    pub mu: Vec<Vec<Ratio<T>>>,
    pub sq_norms: Vec<Ratio<T>>,
}

/// Requires positive definiteness (every `|b*_i|²` nonzero).
pub fn gram_schmidt<T: IntScalar>(g: &Matrix<T>) -> GramSchmidt<T> {
    let n = g.rows();
    let zero = Ratio::from_integer(T::zero());
    let mut mu = vec![vec![zero.clone(); n]; n];
    let mut sq_norms = vec![zero; n];
    for i in 0..n {
        for j in 0..i {
            let mut v = Ratio::from_integer(g[(i, j)].clone());
            for k in 0..j {
                v -= mu[j][k].clone() * mu[i][k].clone() * sq_norms[k].clone();
            }
            mu[i][j] = v / sq_norms[j].clone();
        }
        let mut b = Ratio::from_integer(g[(i, i)].clone());
        for k in 0..i {
            b -= mu[i][k].clone() * mu[i][k].clone() * sq_norms[k].clone();
        }
        mu[i][i] = Ratio::from_integer(T::one());
        sq_norms[i] = b;
    }
    GramSchmidt { mu, sq_norms }
}

/// Returns `(G', U)` with `Uᵀ G U = G'` and `G'` LLL-reduced for δ = 3/4.
pub fn lll_reduce<T: IntScalar>(g: &GramMatrix<T>) -> Result<(GramMatrix<T>, Matrix<T>)> {
    g.ensure_positive_definite()?;
    let n = g.rank();
    let mut gm = g.matrix().clone();
    let mut u = Matrix::identity(n);
    if n <= 1 {
        return Ok((g.clone(), u));
    }
    let delta = Ratio::new(T::from_i64_exact(3), T::from_i64_exact(4));
    let mut gso = gram_schmidt(&gm);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = round_ratio(&gso.mu[k][j]);
            if q.is_zero() {
                continue;
            }
            subtract_multiple(&mut gm, k, j, &q);
            let neg_q = -q.clone();
            u.add_column_multiple(k, j, &neg_q);
            let qr = Ratio::from_integer(q);
            for i in 0..j {
                let d = qr.clone() * gso.mu[j][i].clone();
                gso.mu[k][i] -= d;
            }
            gso.mu[k][j] -= qr;
        }
        let m = gso.mu[k][k - 1].clone();
        let rhs = (delta.clone() - m.clone() * m) * gso.sq_norms[k - 1].clone();
        if gso.sq_norms[k] >= rhs {
            k += 1;
        } else {
            gm.swap_rows(k, k - 1);
            gm.swap_columns(k, k - 1);
            u.swap_columns(k, k - 1);
            gso = gram_schmidt(&gm);
            k = (k - 1).max(1);
        }
    }
    Ok((GramMatrix::new(gm)?, u))
}

/// In-place Gram update for `b_k ← b_k − q·b_j`.
fn subtract_multiple<T: IntScalar>(g: &mut Matrix<T>, k: usize, j: usize, q: &T) {
    let n = g.rows();
    let gkk = g[(k, k)].clone() - (T::one() + T::one()) * q.clone() * g[(k, j)].clone()
        + q.clone() * q.clone() * g[(j, j)].clone();
    for i in 0..n {
        if i == k {
            continue;
        }
        let v = g[(k, i)].clone() - q.clone() * g[(j, i)].clone();
        g[(k, i)] = v.clone();
        g[(i, k)] = v;
    }
    g[(k, k)] = gkk;
}

/// Size-reduced and Lovász condition hold.
pub fn is_lll_reduced<T: IntScalar>(g: &Matrix<T>) -> bool {
    let gso = gram_schmidt(g);
    let half = Ratio::new(T::one(), T::one() + T::one());
    let delta = Ratio::new(T::from_i64_exact(3), T::from_i64_exact(4));
    let n = g.rows();
    for i in 1..n {
        for j in 0..i {
            if num_traits::Signed::abs(&gso.mu[i][j]) > half {
                return false;
            }
        }
        let m = gso.mu[i][i - 1].clone();
        if gso.sq_norms[i] < (delta.clone() - m.clone() * m) * gso.sq_norms[i - 1].clone() {
            return false;
        }
    }
    true
}
