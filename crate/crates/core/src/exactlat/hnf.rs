//! Column-style Hermite normal form and what falls out of it: integer kernels,
//! lattice bases of column spans, Smith invariants.
//!
//! Convention: `H = M·U` with `U` unimodular. `H` is in lower column-echelon
//! form: each nonzero column has a strictly positive pivot in a row strictly
//! below the previous column's pivot, all entries above a pivot are zero, and
//! the entries to the left of a pivot (same row, earlier columns) lie in
//! `[0, pivot)`. Zero columns are moved to the end.

use super::matrix::Matrix;
use crate::scalar::IntScalar;

pub fn hnf<T: IntScalar>(m: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let mut h = m.clone();
    let mut u = Matrix::identity(m.cols());
    let n = m.cols();
    let mut k = 0;
    for i in 0..m.rows() {
        if k == n {
            break;
        }
        loop {
            // smallest nonzero |entry| among columns k.. moves to column k
            let Some(best) = (k..n)
                .filter(|&j| !h[(i, j)].is_zero())
                .min_by(|&a, &b| h[(i, a)].abs().cmp(&h[(i, b)].abs()))
            else {
                break;
            };
            h.swap_columns(k, best);
            u.swap_columns(k, best);
            let mut done = true;
            for j in k + 1..n {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_floor(&h[(i, k)]);
                let neg_q = -q;
                h.add_column_multiple(j, k, &neg_q);
                u.add_column_multiple(j, k, &neg_q);
                if !h[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(i, k)].is_zero() {
            continue;
        }
        if h[(i, k)].is_negative() {
            h.negate_column(k);
            u.negate_column(k);
        }
        for j in 0..k {
            let q = h[(i, j)].div_floor(&h[(i, k)]);
            if !q.is_zero() {
                let neg_q = -q;
                h.add_column_multiple(j, k, &neg_q);
                u.add_column_multiple(j, k, &neg_q);
            }
        }
        k += 1;
    }
    (h, u)
}

/// Number of nonzero columns of the HNF, i.e. the rank of `m`.
pub fn rank<T: IntScalar>(m: &Matrix<T>) -> usize {
    let (h, _) = hnf(m);
    (0..h.cols())
        .filter(|&j| (0..h.rows()).any(|i| !h[(i, j)].is_zero()))
        .count()
}

/// Basis of the column span of `m` (the nonzero HNF columns).
pub fn column_basis<T: IntScalar>(m: &Matrix<T>) -> Matrix<T> {
    let (h, _) = hnf(m);
    let r = rank_of_hnf(&h);
    h.select_columns(&(0..r).collect::<Vec<_>>())
}

fn rank_of_hnf<T: IntScalar>(h: &Matrix<T>) -> usize {
    (0..h.cols())
        .take_while(|&j| (0..h.rows()).any(|i| !h[(i, j)].is_zero()))
        .count()
}

/// Two matrices span the same lattice in `Z^rows`.
pub fn same_column_lattice<T: IntScalar>(a: &Matrix<T>, b: &Matrix<T>) -> bool {
    a.rows() == b.rows() && column_basis(a) == column_basis(b)
}

/// Saturated `Z`-basis (as columns) of `{x ∈ Z^cols : M x = 0}`.
pub fn int_kernel<T: IntScalar>(m: &Matrix<T>) -> Matrix<T> {
    let (h, u) = hnf(m);
    let r = rank_of_hnf(&h);
    u.select_columns(&(r..m.cols()).collect::<Vec<_>>())
}

/// Nonzero Smith invariants `d_1 | d_2 | ...`, all positive.
pub fn elementary_divisors<T: IntScalar>(m: &Matrix<T>) -> Vec<T> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut pivot = None;
        for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero()
                    && pivot.map_or(true, |(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        a.swap_columns(t, pj);
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[(i, t)].div_floor(&a[(t, t)]);
            for j in t..cols {
                let v = a[(i, j)].clone() - q.clone() * a[(t, j)].clone();
                a[(i, j)] = v;
            }
            if !a[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = a[(t, j)].div_floor(&a[(t, t)]);
            let neg_q = -q;
            a.add_column_multiple(j, t, &neg_q);
            if !a[(t, j)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility of the remaining block by the pivot
        let p = a[(t, t)].clone();
        let offending = (t + 1..rows)
            .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
        if let Some(i) = offending {
            for j in t..cols {
                let v = a[(t, j)].clone() + a[(i, j)].clone();
                a[(t, j)] = v;
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}
