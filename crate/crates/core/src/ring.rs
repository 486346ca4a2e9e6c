//! The coefficient-ring contract shared by [`Series`](crate::Series) and
//! the finite-size recursion.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// A commutative ring containing a copy of the scalar field `Self::Scalar`.
///
/// Integer division inside `exp`/`log` is done by scaling with the exact
/// reciprocal, so every implementor must accept [`Ring::scale`] by any
/// nonzero scalar.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + Send
    + Sync
{
    type Scalar: Scalar;

    fn mul_ref(&self, rhs: &Self) -> Self;

    fn scale(&self, c: &Self::Scalar) -> Self;

    fn from_scalar(c: Self::Scalar) -> Self;

    /// Multiplicative inverse when `self` is a unit, `None` otherwise.
    fn try_inverse(&self) -> Option<Self>;
}

impl<T> Ring for Ratio<T>
where
    Ratio<T>: Scalar,
    T: Clone + num_integer::Integer,
{
    type Scalar = Ratio<T>;

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn scale(&self, c: &Self) -> Self {
        self * c
    }

    fn from_scalar(c: Self) -> Self {
        c
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}
