use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix dimensions do not match: {0}")]
    Dimension(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("cyclotomic moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("residue {a} is not coprime to modulus {m}")]
    NotCoprime { a: i64, m: u64 },
    #[error("element is not fixed by the subgroup")]
    NotInSubfield,
    #[error("element is not integral: {0}")]
    NotIntegral(String),
    #[error("element is not totally real")]
    NotTotallyReal,
    #[error("bad subgroup: {0}")]
    BadSubgroup(String),
    #[error("prime {0} is not congruent to 1 modulo the degree")]
    BadPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("invalid conductor {0}: {1}")]
    InvalidConductor(u64, String),
    #[error("wild field with composite conductor has no direct integral basis here")]
    WildCompositeUnsupported,
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("multiplier does not preserve the pairing")]
    NotAMorphism,
    #[error("image does not lie in the target module")]
    NotInTarget,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Internal consistency failures, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::CertificationFailed(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
