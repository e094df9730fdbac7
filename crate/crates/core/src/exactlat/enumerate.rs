//! Fincke–Pohst enumeration of short lattice vectors, exact throughout.

use num_rational::Ratio;

use super::lll::{gram_schmidt, lll_reduce};
use super::matrix::GramMatrix;
use crate::error::Result;
use crate::scalar::IntScalar;

/// All `x ≠ 0` with `xᵀ G x ≤ bound`, one per `±` pair (first nonzero
/// coordinate positive), sorted lexicographically.
pub fn short_vectors<T: IntScalar>(g: &GramMatrix<T>, bound: &T) -> Result<Vec<Vec<T>>> {
    Ok(short_vectors_with_norms(g, bound)?
        .into_iter()
        .map(|(v, _)| v)
        .collect())
}

/// Same as [`short_vectors`], paired with each vector's norm.
pub fn short_vectors_with_norms<T: IntScalar>(
    g: &GramMatrix<T>,
    bound: &T,
) -> Result<Vec<(Vec<T>, T)>> {
    g.ensure_positive_definite()?;
    if bound.is_negative() || bound.is_zero() || g.rank() == 0 {
        return Ok(Vec::new());
    }
    let (reduced, u) = lll_reduce(g)?;
    let gso = gram_schmidt(reduced.matrix());
    let n = g.rank();
    let mut found = Vec::new();
    let mut x = vec![T::zero(); n];
    descend(&gso.mu, &gso.sq_norms, n - 1, Ratio::from_integer(bound.clone()), &mut x, &mut found);

    let mut out: Vec<(Vec<T>, T)> = found
        .into_iter()
        .map(|xr| {
            let mut y = u.mul_vec(&xr);
            normalize_sign(&mut y);
            let norm = g.norm(&y);
            (y, norm)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn descend<T: IntScalar>(
    mu: &[Vec<Ratio<T>>],
    sq_norms: &[Ratio<T>],
    i: usize,
    remaining: Ratio<T>,
    x: &mut Vec<T>,
    found: &mut Vec<Vec<T>>,
) {
    let n = x.len();
    let mut center = Ratio::from_integer(T::zero());
    for j in i + 1..n {
        center -= mu[j][i].clone() * Ratio::from_integer(x[j].clone());
    }
    let b = &sq_norms[i];
    let cost = |xi: &T| {
        let d = Ratio::from_integer(xi.clone()) - center.clone();
        b.clone() * d.clone() * d
    };
    let start = center.floor().to_integer();
    let visit = |xi: T, x: &mut Vec<T>, found: &mut Vec<Vec<T>>| -> bool {
        let c = cost(&xi);
        if c > remaining {
            return false;
        }
        x[i] = xi;
        if i == 0 {
            if x.iter().any(|v| !v.is_zero()) && is_sign_normalized(x) {
                found.push(x.clone());
            }
        } else {
            descend(mu, sq_norms, i - 1, remaining.clone() - c, x, found);
        }
        true
    };
    let mut down = start.clone();
    while visit(down.clone(), x, found) {
        down = down - T::one();
    }
    let mut up = start + T::one();
    while visit(up.clone(), x, found) {
        up = up + T::one();
    }
    x[i] = T::zero();
}

pub(crate) fn is_sign_normalized<T: IntScalar>(x: &[T]) -> bool {
    x.iter()
        .find(|v| !v.is_zero())
        .map_or(false, |v| v.is_positive())
}

pub(crate) fn normalize_sign<T: IntScalar>(x: &mut [T]) {
    if !is_sign_normalized(x) {
        for v in x.iter_mut() {
            *v = -v.clone();
        }
    }
}

/// Minimum nonzero norm of the lattice.
pub fn minimum<T: IntScalar>(g: &GramMatrix<T>) -> Result<T> {
    let bound = g
        .diagonal()
        .into_iter()
        .min()
        .unwrap_or_else(T::zero);
    Ok(short_vectors_with_norms(g, &bound)?
        .into_iter()
        .map(|(_, n)| n)
        .min()
        .unwrap_or(bound))
}
