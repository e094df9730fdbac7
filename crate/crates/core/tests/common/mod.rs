#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use trace_shape::exactlat::{inverse_rational, GramMatrix, Matrix};

/// Product of random elementary column operations, swaps and sign flips.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Matrix<BigInt> {
    let mut u = Matrix::<BigInt>::identity(n);
    if n < 2 {
        if rng.gen_bool(0.5) {
            u.negate_column(0);
        }
        return u;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..4) {
            0 => u.swap_columns(i, j),
            1 => u.negate_column(i),
            _ => {
                let c = BigInt::from(rng.gen_range(-2i64..=2));
                u.add_column_multiple(i, j, &c);
            }
        }
    }
    u
}

/// Nonzero `x` with first nonzero entry positive and `xᵀGx ≤ bound`, by
/// scanning the box `|x_i| ≤ ⌊√(bound·(G⁻¹)_ii)⌋`.
pub fn box_search(g: &GramMatrix<BigInt>, bound: i64) -> Vec<Vec<BigInt>> {
    let n = g.rank();
    let inv = inverse_rational(g.matrix()).unwrap();
    let radius: Vec<i64> = (0..n)
        .map(|i| {
            let lim = inv[i][i].clone() * Ratio::from_integer(BigInt::from(bound));
            let mut r = 0i64;
            while Ratio::from_integer(BigInt::from((r + 1) * (r + 1))) <= lim {
                r += 1;
            }
            r
        })
        .collect();
    let mut out = Vec::new();
    let mut x: Vec<i64> = radius.iter().map(|r| -r).collect();
    loop {
        let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        let first = xb.iter().find(|v| !v.is_zero());
        if first.is_some_and(|v| v.is_positive()) && g.norm(&xb) <= BigInt::from(bound) {
            out.push(xb);
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort();
                return out;
            }
            x[k] += 1;
            if x[k] <= radius[k] {
                break;
            }
            x[k] = -radius[k];
            k += 1;
        }
    }
}

/// Random positive definite Gram `BᵀB` with `B` a nonsingular small matrix.
pub fn random_gram<R: Rng>(rng: &mut R, n: usize) -> GramMatrix<BigInt> {
    loop {
        let b = Matrix::<BigInt>::from_fn(n, n, |_, _| BigInt::from(rng.gen_range(-2i64..=2)));
        let g = GramMatrix::new(b.transpose().mul(&b).unwrap()).unwrap();
        if g.is_positive_definite() {
            return g;
        }
    }
}

pub fn one() -> BigInt {
    BigInt::one()
}
