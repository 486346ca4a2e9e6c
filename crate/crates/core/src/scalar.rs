//! Scalar fields for polynomial coefficients.
//!
//! Every coefficient in the crate lives in an exact fraction field `Ratio<T>`
//! over some integer type. [`Rational`](crate::Rational) (big integers) is
//! the one used by the pipelines; fixed-width ratios such as `Ratio<i64>`
//! work for small hand-sized inputs but overflow quickly.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{AddAssign, MulAssign, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, NumAssign, Signed, Zero};

pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + NumAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Signed
    + FromStr
    + Send
    + Sync
    + 'static
{
    fn from_int(n: i64) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn is_integer(&self) -> bool;

    /// gcd of numerators over lcm of denominators; zero only if both are zero.
    fn content_gcd(&self, other: &Self) -> Self;

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    fn powi(&self, exp: i32) -> Self {
        let base = if exp < 0 { self.recip() } else { self.clone() };
        num_traits::pow(base, exp.unsigned_abs() as usize)
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Integer
        + Signed
        + NumAssign
        + Clone
        + FromPrimitive
        + Display
        + Debug
        + Hash
        + FromStr
        + Send
        + Sync
        + 'static,
    Ratio<T>: FromStr,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer fits in scalar type"))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(
            T::from_i64(numer).expect("integer fits in scalar type"),
            T::from_i64(denom).expect("integer fits in scalar type"),
        )
    }

    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn content_gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.abs();
        }
        if other.is_zero() {
            return self.abs();
        }
        let numer = self.numer().gcd(other.numer());
        let denom = self.denom().lcm(other.denom());
        Ratio::new(numer, denom)
    }
}

/// n! in the scalar field.
pub fn factorial<F: Scalar>(n: usize) -> F {
    (1..=n as i64).fold(F::one(), |acc, k| acc * F::from_int(k))
}
