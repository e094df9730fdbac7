//! `GL_n(Z)` equivalence of positive definite Gram matrices with explicit
//! witnesses.
//!
//! Cheap invariants (rank, determinant, minimum, norm counts) are compared
//! first. The search then reduces the second Gram matrix, and assigns images
//! to its basis vectors one at a time from the short vectors of the first
//! lattice, pruning on inner products with the images already fixed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::det::{det_exact, inverse_unimodular};
use super::enumerate::short_vectors_with_norms;
use super::lll::lll_reduce;
use super::matrix::{dot, GramMatrix, Matrix};
use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// Unimodular `U` with `Uᵀ G₁ U = G₂`; column `j` holds the coordinates of
/// the second lattice's `j`-th basis vector in the first lattice's basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: IntScalar",
    deserialize = "T: IntScalar, <T as std::str::FromStr>::Err: std::fmt::Display"
))]
pub struct IsometryWitness<T: IntScalar> {
    pub matrix: Matrix<T>,
}

impl<T: IntScalar> IsometryWitness<T> {
    pub fn verify(&self, g1: &GramMatrix<T>, g2: &GramMatrix<T>) -> bool {
        self.matrix.rows() == g1.rank()
            && self.matrix.cols() == g2.rank()
            && det_exact(&self.matrix).map_or(false, |d| d.abs().is_one())
            && g1.transform(&self.matrix).map_or(false, |g| &g == g2)
    }

    /// Witness for the reversed pair.
    pub fn inverse(&self) -> Result<Self> {
        Ok(IsometryWitness {
            matrix: inverse_unimodular(&self.matrix)?,
        })
    }
}

/// Returns a witness iff the two lattices are isometric.
pub fn is_isometric<T: IntScalar>(
    g1: &GramMatrix<T>,
    g2: &GramMatrix<T>,
) -> Result<Option<IsometryWitness<T>>> {
    if g1.rank() != g2.rank() {
        return Err(Error::RankMismatch(g1.rank(), g2.rank()));
    }
    g1.ensure_positive_definite()?;
    g2.ensure_positive_definite()?;
    let n = g1.rank();
    if n == 0 {
        return Ok(Some(IsometryWitness {
            matrix: Matrix::identity(0),
        }));
    }
    if g1.det() != g2.det() {
        return Ok(None);
    }

    let (r2, v) = lll_reduce(g2)?;
    let (r1, _) = lll_reduce(g1)?;
    let bound = r2
        .diagonal()
        .into_iter()
        .chain(r1.diagonal())
        .max()
        .expect("rank > 0");
    let short1 = short_vectors_with_norms(g1, &bound)?;
    let short2 = short_vectors_with_norms(&r2, &bound)?;
    if norm_counts(&short1) != norm_counts(&short2) {
        return Ok(None);
    }

    // candidates ordered by norm, then lexicographically, both signs
    let mut candidates: Vec<(T, Vec<T>)> = Vec::with_capacity(2 * short1.len());
    for (x, norm) in &short1 {
        candidates.push((norm.clone(), x.clone()));
        candidates.push((norm.clone(), x.iter().map(|c| -c.clone()).collect()));
    }
    candidates.sort();
    let images: Vec<Vec<T>> = candidates
        .iter()
        .map(|(_, x)| g1.matrix().mul_vec(x))
        .collect();

    let targets = r2.diagonal();
    let per_column: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            let mut idx: Vec<usize> = (0..candidates.len())
                .filter(|&c| candidates[c].0 == targets[j])
                .collect();
            if j == 0 {
                // W and −W are both solutions
                idx.retain(|&c| super::enumerate::is_sign_normalized(&candidates[c].1));
            }
            idx
        })
        .collect();

    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    if !search(&candidates, &images, &per_column, &r2, &mut chosen) {
        return Ok(None);
    }
    let columns: Vec<Vec<T>> = chosen.iter().map(|&c| candidates[c].1.clone()).collect();
    let w = Matrix::from_columns(n, &columns)?;
    let u = w.mul(&inverse_unimodular(&v)?)?;
    let witness = IsometryWitness { matrix: u };
    if !witness.verify(g1, g2) {
        return Err(Error::CertificationFailed(
            "isometry witness failed re-verification".into(),
        ));
    }
    Ok(Some(witness))
}

fn search<T: IntScalar>(
    candidates: &[(T, Vec<T>)],
    images: &[Vec<T>],
    per_column: &[Vec<usize>],
    target: &GramMatrix<T>,
    chosen: &mut Vec<usize>,
) -> bool {
    let j = chosen.len();
    if j == per_column.len() {
        return true;
    }
    for &c in &per_column[j] {
        let ok = chosen
            .iter()
            .enumerate()
            .all(|(i, &prev)| dot(&candidates[c].1, &images[prev]) == target[(i, j)]);
        if !ok {
            continue;
        }
        chosen.push(c);
        if search(candidates, images, per_column, target, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn norm_counts<T: IntScalar>(vs: &[(Vec<T>, T)]) -> BTreeMap<T, usize> {
    let mut out = BTreeMap::new();
    for (_, n) in vs {
        *out.entry(n.clone()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideallat::root_gram_an;
    use num_bigint::BigInt;
    use num_traits::{One, Signed};

    #[test]
    fn sign_flip() {
        let a = GramMatrix::<BigInt>::from_i64_rows(&[&[2, -1], &[-1, 2]]).unwrap();
        let b = GramMatrix::<BigInt>::from_i64_rows(&[&[2, 1], &[1, 2]]).unwrap();
        let w = is_isometric(&a, &b).unwrap().expect("isometric");
        assert!(w.verify(&a, &b));
        assert!(w.inverse().unwrap().verify(&b, &a));
    }

    #[test]
    fn determinant_mismatch() {
        let a = GramMatrix::<BigInt>::from_i64_rows(&[&[2, 0], &[0, 2]]).unwrap();
        let b = GramMatrix::<BigInt>::from_i64_rows(&[&[2, -1], &[-1, 2]]).unwrap();
        assert!(is_isometric(&a, &b).unwrap().is_none());
    }

    #[test]
    fn same_det_different_lattices() {
        // det 4: 2I_2 vs the non-isometric [[1,0],[0,4]]
        let a = GramMatrix::<BigInt>::from_i64_rows(&[&[2, 0], &[0, 2]]).unwrap();
        let b = GramMatrix::<BigInt>::from_i64_rows(&[&[1, 0], &[0, 4]]).unwrap();
        assert!(is_isometric(&a, &b).unwrap().is_none());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = root_gram_an::<BigInt>(2);
        let b = root_gram_an::<BigInt>(3);
        assert_eq!(is_isometric(&a, &b), Err(Error::RankMismatch(2, 3)));
    }

    #[test]
    fn conjugated_a4() {
        let a4 = root_gram_an::<BigInt>(4);
        let u = Matrix::<BigInt>::from_i64_rows(&[
            &[1, 2, 0, -1],
            &[0, 1, 3, 0],
            &[0, 0, 1, 5],
            &[1, 2, 0, 0],
        ]);
        assert!(det_exact(&u).unwrap().abs().is_one());
        let g = a4.transform(&u).unwrap();
        let w = is_isometric(&a4, &g).unwrap().expect("isometric");
        assert!(w.verify(&a4, &g));
    }
}
