//! Exact computation of integral trace forms and shapes of cyclic number
//! fields of odd prime degree, with the lattice and cyclotomic machinery they
//! rest on.
//!
//! Everything is generic over an exact integer scalar ([`scalar::IntScalar`]);
//! the aliases below fix it to [`num_bigint::BigInt`].

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod exactlat;
pub mod fieldkit;
pub mod ideallat;
pub mod scalar;
mod serde_dec;
pub mod shapelab;

pub use error::{Error, Result};

pub type Int = num_bigint::BigInt;
pub type Rational = num_rational::Ratio<Int>;
pub type IntMatrix = exactlat::Matrix<Int>;
pub type Gram = exactlat::GramMatrix<Int>;
pub type Form = exactlat::QuadForm<Int>;
pub type Witness = exactlat::IsometryWitness<Int>;
pub type Cyc = cyclotomic::CycElem<Int>;
pub type Basis = fieldkit::IntegralBasis<Int>;
pub type TraceLattice = fieldkit::TraceLattice<Int>;
pub type Embedding = ideallat::EmbeddingCertificate<Int>;
pub type Report = shapelab::ShapeReport<Int>;

pub use fieldkit::FieldSpec;
