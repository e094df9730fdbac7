use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matrix::{GramMatrix, Matrix};
use crate::error::{Error, Result};
use crate::scalar::{gcd_all, IntScalar};

/// Integral quadratic form `Q(x) = Σ_{i≤j} a_ij x_i x_j`, stored as an upper
/// triangular coefficient matrix.
///
/// The doubled Gram matrix `D` (with `Q(x) = xᵀ D x / 2`) is the only bridge
/// to [`GramMatrix`], so half-integers never appear.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    try_from = "QuadFormRepr<T>",
    into = "QuadFormRepr<T>",
    bound(
        serialize = "T: IntScalar",
        deserialize = "T: IntScalar, <T as FromStr>::Err: fmt::Display"
    )
)]
pub struct QuadForm<T: IntScalar> {
    coeffs: Matrix<T>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: IntScalar",
    deserialize = "T: IntScalar, <T as FromStr>::Err: fmt::Display"
))]
struct QuadFormRepr<T: IntScalar> {
    coefficients: Matrix<T>,
    #[serde(default)]
    polynomial: String,
}

impl<T: IntScalar> TryFrom<QuadFormRepr<T>> for QuadForm<T> {
    type Error = Error;
    fn try_from(r: QuadFormRepr<T>) -> Result<Self> {
        QuadForm::from_upper(r.coefficients)
    }
}

impl<T: IntScalar> From<QuadForm<T>> for QuadFormRepr<T> {
    fn from(q: QuadForm<T>) -> Self {
        QuadFormRepr {
            polynomial: q.to_string(),
            coefficients: q.coeffs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: IntScalar",
    deserialize = "T: IntScalar, <T as FromStr>::Err: fmt::Display"
))]
pub struct FormClass<T: IntScalar> {
    pub integral: bool,
    pub primitive: bool,
    pub even_lattice: bool,
    #[serde(with = "crate::serde_dec")]
    pub det_doubled: T,
}

impl<T: IntScalar> QuadForm<T> {
    pub fn from_upper(coeffs: Matrix<T>) -> Result<Self> {
        if !coeffs.is_square() {
            return Err(Error::NotSquare);
        }
        let n = coeffs.rows();
        if (0..n).any(|i| (0..i).any(|j| !coeffs[(i, j)].is_zero())) {
            return Err(Error::Dimension("coefficients must be upper triangular".into()));
        }
        Ok(QuadForm { coeffs })
    }

    pub fn zero(rank: usize) -> Self {
        QuadForm {
            coeffs: Matrix::zeros(rank, rank),
        }
    }

    /// Form whose doubled Gram is `d`; needs an even diagonal.
    pub fn from_doubled_gram(d: &GramMatrix<T>) -> Result<Self> {
        if !d.is_even() {
            return Err(Error::NotIntegral(
                "doubled Gram matrix has an odd diagonal entry".into(),
            ));
        }
        let n = d.rank();
        let two = T::one() + T::one();
        Ok(QuadForm {
            coeffs: Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => d[(i, i)].clone() / two.clone(),
                std::cmp::Ordering::Less => d[(i, j)].clone(),
                std::cmp::Ordering::Greater => T::zero(),
            }),
        })
    }

    /// The primitive form proportional to `x ↦ xᵀ G x`, together with the
    /// positive content that was divided out.
    pub fn primitive_of_gram(g: &GramMatrix<T>) -> (Self, T) {
        let n = g.rank();
        let two = T::one() + T::one();
        let full = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => g[(i, i)].clone(),
            std::cmp::Ordering::Less => two.clone() * g[(i, j)].clone(),
            std::cmp::Ordering::Greater => T::zero(),
        });
        let c = gcd_all(full.entries());
        if c.is_zero() {
            return (QuadForm { coeffs: full }, c);
        }
        let coeffs = full.div_exact(&c).expect("content divides");
        (QuadForm { coeffs }, c)
    }

    pub fn rank(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn coefficients(&self) -> &Matrix<T> {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize, j: usize) -> &T {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        &self.coeffs[(a, b)]
    }

    pub fn doubled_gram(&self) -> GramMatrix<T> {
        let n = self.rank();
        let two = T::one() + T::one();
        let m = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => two.clone() * self.coeffs[(i, i)].clone(),
            std::cmp::Ordering::Less => self.coeffs[(i, j)].clone(),
            std::cmp::Ordering::Greater => self.coeffs[(j, i)].clone(),
        });
        GramMatrix::new(m).expect("symmetric by construction")
    }

    pub fn evaluate(&self, x: &[T]) -> T {
        let n = self.rank();
        let mut acc = T::zero();
        for i in 0..n {
            for j in i..n {
                acc = acc + self.coeffs[(i, j)].clone() * x[i].clone() * x[j].clone();
            }
        }
        acc
    }

    pub fn content(&self) -> T {
        gcd_all(self.coeffs.entries())
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }
}

pub fn classify_form<T: IntScalar>(q: &QuadForm<T>) -> FormClass<T> {
    let two = T::one() + T::one();
    FormClass {
        integral: true,
        primitive: q.is_primitive(),
        even_lattice: (0..q.rank()).all(|i| q.coeffs[(i, i)].is_multiple_of(&two)),
        det_doubled: q.doubled_gram().det(),
    }
}

fn variable(i: usize, n: usize) -> String {
    if n <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl<T: IntScalar> fmt::Display for QuadForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank();
        let mut first = true;
        for i in 0..n {
            for j in i..n {
                let c = &self.coeffs[(i, j)];
                if c.is_zero() {
                    continue;
                }
                let mono = if i == j {
                    format!("{}^2", variable(i, n))
                } else {
                    format!("{}*{}", variable(i, n), variable(j, n))
                };
                let mag = c.abs();
                let body = if mag.is_one() {
                    mono
                } else {
                    format!("{mag}*{mono}")
                };
                match (first, c.is_negative()) {
                    (true, true) => write!(f, "-{body}")?,
                    (true, false) => write!(f, "{body}")?,
                    (false, true) => write!(f, " - {body}")?,
                    (false, false) => write!(f, " + {body}")?,
                }
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<T: IntScalar> fmt::Debug for QuadForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadForm({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn binary(a: i64, b: i64, c: i64) -> QuadForm<BigInt> {
        QuadForm::from_upper(Matrix::from_i64_rows(&[&[a, b], &[0, c]])).unwrap()
    }

    #[test]
    fn hexagonal_form() {
        let q = binary(1, -1, 1);
        let c = classify_form(&q);
        assert!(c.primitive && c.integral);
        assert!(!c.even_lattice);
        assert_eq!(c.det_doubled, BigInt::from(3));
        assert_eq!(q.to_string(), "x^2 - x*y + y^2");
        assert_eq!(q.doubled_gram(), GramMatrix::from_i64_rows(&[&[2, -1], &[-1, 2]]).unwrap());
    }

    #[test]
    fn doubled_form_is_not_primitive() {
        let c = classify_form(&binary(2, -2, 2));
        assert!(!c.primitive);
        assert!(c.even_lattice);
        assert_eq!(c.det_doubled, BigInt::from(12));
    }

    #[test]
    fn zero_form() {
        let c = classify_form(&QuadForm::<BigInt>::zero(1));
        assert!(c.integral);
        assert!(!c.primitive);
    }

    #[test]
    fn primitive_of_trace_gram() {
        let g = GramMatrix::<BigInt>::from_i64_rows(&[&[14, -7], &[-7, 14]]).unwrap();
        let (q, c) = QuadForm::primitive_of_gram(&g);
        assert_eq!(c, BigInt::from(14));
        assert_eq!(q, binary(1, -1, 1));
    }

    #[test]
    fn doubled_gram_round_trip_and_json() {
        let q = binary(2, -1, 3);
        assert_eq!(QuadForm::from_doubled_gram(&q.doubled_gram()).unwrap(), q);
        assert_eq!(q.evaluate(&[BigInt::from(1), BigInt::from(1)]), BigInt::from(4));
        let s = serde_json::to_string(&q).unwrap();
        assert!(s.contains("2*x^2 - x*y + 3*y^2"));
        let back: QuadForm<BigInt> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        let odd = GramMatrix::<BigInt>::from_i64_rows(&[&[1, 0], &[0, 2]]).unwrap();
        assert!(QuadForm::from_doubled_gram(&odd).is_err());
    }
}
