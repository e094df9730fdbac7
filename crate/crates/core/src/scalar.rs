//! Integer scalar abstraction.
//!
//! Every algorithm in this crate is exact, so the scalar is an integer ring
//! element; rationals are always `Ratio<T>` over the same scalar. `BigInt` is
//! the production choice (see the aliases at the crate root); machine integers
//! work for small inputs and are handy in tests.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, NumAssign, Signed, ToPrimitive};

pub trait IntScalar:
    Clone
    + Integer
    + Signed
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + FromStr
    + Hash
    + Send
    + Sync
    + 'static
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("scalar type cannot represent i64 value")
    }

    fn from_u64_exact(v: u64) -> Self {
        Self::from_u64(v).expect("scalar type cannot represent u64 value")
    }
}

impl<T> IntScalar for T where
    T: Clone
        + Integer
        + Signed
        + NumAssign
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + FromStr
        + Hash
        + Send
        + Sync
        + 'static
{
}

/// Nearest integer, ties rounded up.
pub fn round_ratio<T: IntScalar>(q: &Ratio<T>) -> T {
    let half = Ratio::new(T::one(), T::one() + T::one());
    (q + half).floor().to_integer()
}

/// Exact integer value of a rational, if it has one.
pub fn ratio_to_int<T: IntScalar>(q: &Ratio<T>) -> Option<T> {
    if q.is_integer() {
        Some(q.to_integer())
    } else {
        None
    }
}

pub fn gcd_all<'a, T: IntScalar>(values: impl IntoIterator<Item = &'a T>) -> T {
    values
        .into_iter()
        .fold(T::zero(), |acc, v| acc.gcd(v))
}
