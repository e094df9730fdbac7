//! Exact integer linear algebra and lattice algorithms.

mod det;
mod enumerate;
mod form;
mod hnf;
mod isometry;
mod lll;
mod matrix;

pub use det::{det_exact, inverse_rational, inverse_unimodular, leading_minors};
pub use enumerate::{minimum, short_vectors, short_vectors_with_norms};
pub use form::{classify_form, FormClass, QuadForm};
pub use hnf::{column_basis, elementary_divisors, hnf, int_kernel, rank, same_column_lattice};
pub use isometry::{is_isometric, IsometryWitness};
pub use lll::{gram_schmidt, is_lll_reduced, lll_reduce, GramSchmidt};
pub use matrix::{GramMatrix, Matrix};
