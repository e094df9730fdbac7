use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntScalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from small literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_i64_exact(v)).collect())
                .collect(),
        )
        .expect("ragged literal")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("column length".into()));
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
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

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    /// `Uᵀ · self · U`.
    pub fn congruence(&self, u: &Self) -> Result<Self> {
        u.transpose().mul(&self.mul(u)?)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entry-wise exact division; `None` if any entry is not divisible.
    pub fn div_exact(&self, d: &T) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let mut data = Vec::with_capacity(self.data.len());
        for v in &self.data {
            let (q, r) = v.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            data.push(q);
        }
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::Dimension("hstack row count".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `col[dst] += c * col[src]`.
    pub fn add_column_multiple(&mut self, dst: usize, src: usize, c: &T) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self[(i, src)].clone() * c.clone();
            self[(i, dst)] = self[(i, dst)].clone() + v;
        }
    }

    pub fn negate_column(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    /// Re-encode in another integer scalar.
    pub fn convert<S: IntScalar>(&self) -> Option<Matrix<S>>
    where
        S: FromStr,
    {
        let data = self
            .data
            .iter()
            .map(|v| v.to_string().parse::<S>().ok())
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

pub(crate) fn dot<T: IntScalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// JSON form: array of rows, each an array of decimal strings.
impl<T: fmt::Display> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(ToString::to_string)
                .collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de, T> Deserialize<'de> for Matrix<T>
where
    T: IntScalar,
    <T as FromStr>::Err: fmt::Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Cell(#[serde(with = "crate::serde_dec")] String);
        let raw = Vec::<Vec<Cell>>::deserialize(d)?;
        let rows = raw
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| crate::serde_dec::parse::<T>(&c.0))
                    .collect::<Result<Vec<T>, String>>()
            })
            .collect::<Result<Vec<_>, String>>()
            .map_err(D::Error::custom)?;
        Matrix::from_rows(rows).map_err(D::Error::custom)
    }
}

/// Symmetric integer matrix of a bilinear pairing.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(
    try_from = "Matrix<T>",
    into = "Matrix<T>",
    bound(
        serialize = "T: IntScalar",
        deserialize = "T: IntScalar, <T as FromStr>::Err: fmt::Display"
    )
)]
pub struct GramMatrix<T: IntScalar>(Matrix<T>);

impl<T: IntScalar> TryFrom<Matrix<T>> for GramMatrix<T> {
    type Error = Error;
    fn try_from(m: Matrix<T>) -> Result<Self> {
        GramMatrix::new(m)
    }
}

impl<T: IntScalar> From<GramMatrix<T>> for Matrix<T> {
    fn from(g: GramMatrix<T>) -> Self {
        g.0
    }
}

impl<T: IntScalar> GramMatrix<T> {
    pub fn new(m: Matrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare);
        }
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(GramMatrix(m))
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(Matrix::from_i64_rows(rows))
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rows()
    }

    pub fn det(&self) -> T {
        super::det::det_exact(&self.0).expect("Gram matrices are square")
    }

    /// Leading principal minors all positive.
    pub fn is_positive_definite(&self) -> bool {
        super::det::leading_minors(&self.0)
            .iter()
            .all(|m| m.is_positive())
    }

    pub fn ensure_positive_definite(&self) -> Result<()> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite)
        }
    }

    pub fn is_even(&self) -> bool {
        let two = T::one() + T::one();
        (0..self.rank()).all(|i| self.0[(i, i)].is_multiple_of(&two))
    }

    /// `Uᵀ G U`.
    pub fn transform(&self, u: &Matrix<T>) -> Result<Self> {
        GramMatrix::new(self.0.congruence(u)?)
    }

    pub fn scale(&self, c: &T) -> Self {
        GramMatrix(self.0.scale(c))
    }

    pub fn div_exact(&self, d: &T) -> Option<Self> {
        self.0.div_exact(d).map(GramMatrix)
    }

    /// Norm `xᵀ G x`.
    pub fn norm(&self, x: &[T]) -> T {
        dot(x, &self.0.mul_vec(x))
    }

    pub fn inner(&self, x: &[T], y: &[T]) -> T {
        dot(x, &self.0.mul_vec(y))
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rank()).map(|i| self.0[(i, i)].clone()).collect()
    }

    /// gcd of all entries.
    pub fn content(&self) -> T {
        crate::scalar::gcd_all(self.0.entries())
    }
}

impl<T: IntScalar> Index<(usize, usize)> for GramMatrix<T> {
    type Output = T;
    fn index(&self, idx: (usize, usize)) -> &T {
        &self.0[idx]
    }
}

impl<T: IntScalar> fmt::Display for GramMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl<T: IntScalar> fmt::Debug for GramMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gram{}", self.0)
    }
}
