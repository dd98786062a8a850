use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{FromPrimitive, One, Zero};

/// Exact coefficient ring for polynomials and linear combinations.
///
/// Implemented for every type with the usual ring operations, e.g.
/// `BigInt`, `i64`, `i128` and `BigRational`.
pub trait Coeff:
    Clone
    + Eq
    + Debug
    + Display
    + FromStr
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
    + Send
    + Sync
    + 'static
{
    /// True for `±1`, the only scalars whose inverse is always in the ring.
    fn is_unit(&self) -> bool {
        self.is_one() || (-self.clone()).is_one()
    }
}

impl<T> Coeff for T where
    T: Clone
        + Eq
        + Debug
        + Display
        + FromStr
        + Zero
        + One
        + FromPrimitive
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + AddAssign
        + Send
        + Sync
        + 'static
{
}

pub(crate) fn coeff<R: Coeff>(x: i64) -> R {
    R::from_i64(x).expect("coefficient out of range")
}
