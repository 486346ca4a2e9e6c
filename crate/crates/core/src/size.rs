//! Exact arithmetic in the auxiliary size parameter `L`.
//!
//! Values have the controlled form `N(L) / (L^a (L-1)^b)` with `N` a
//! polynomial in `L` over [`MultiPoly`]. Since the only denominators are
//! powers of the two coprime linear factors `L` and `L-1`, no polynomial gcd
//! is ever needed: after every operation the representation is reduced by
//! cancelling `L` while `N(0) = 0` and `L-1` while `N(1) = 0` (synthetic
//! division by a monic factor is exact over any coefficient ring).

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ring::Ring;
use crate::scalar::Scalar;

/// Dense polynomial in `L`; index = power of `L`. No trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPoly<F> {
    coeffs: Vec<MultiPoly<F>>,
}

impl<F: Scalar> LPoly<F> {
    pub fn new(coeffs: Vec<MultiPoly<F>>) -> Self {
        let mut p = LPoly { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: MultiPoly<F>) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `L`.
    pub fn size() -> Self {
        Self::new(vec![MultiPoly::zero(), MultiPoly::one()])
    }

    /// `L - c` for an integer `c`.
    pub fn size_minus(c: i64) -> Self {
        Self::new(vec![MultiPoly::integer(-c), MultiPoly::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(MultiPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[MultiPoly<F>] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> MultiPoly<F> {
        self.coeffs.last().cloned().unwrap_or_else(MultiPoly::zero)
    }

    pub fn coeff(&self, k: usize) -> MultiPoly<F> {
        self.coeffs.get(k).cloned().unwrap_or_else(MultiPoly::zero)
    }

    /// Value at `L = at`.
    pub fn eval(&self, at: &F) -> MultiPoly<F> {
        let mut acc = MultiPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(at);
            acc += c;
        }
        acc
    }

    /// Multiplies by `L^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![MultiPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        LPoly { coeffs }
    }

    pub fn scale_poly(&self, c: &MultiPoly<F>) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly<F>) -> MultiPoly<F>) -> Self {
        Self::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Divides by `L` if the constant coefficient vanishes.
    fn div_size_exact(&self) -> Option<Self> {
        if self.coeffs.first().is_some_and(|c| !c.is_zero()) {
            return None;
        }
        Some(LPoly {
            coeffs: self.coeffs.iter().skip(1).cloned().collect(),
        })
    }

    /// Divides by `L - 1` if `L = 1` is a root (synthetic division).
    fn div_size_minus_one_exact(&self) -> Option<Self> {
        let n = self.coeffs.len();
        if n == 0 {
            return Some(self.clone());
        }
        let mut quotient = vec![MultiPoly::zero(); n - 1];
        let mut carry = MultiPoly::zero();
        for k in (1..n).rev() {
            carry += &self.coeffs[k];
            quotient[k - 1] = carry.clone();
        }
        carry += &self.coeffs[0];
        carry.is_zero().then(|| LPoly::new(quotient))
    }
}

impl<F: Scalar> Zero for LPoly<F> {
    fn zero() -> Self {
        LPoly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Scalar> One for LPoly<F> {
    fn one() -> Self {
        Self::constant(MultiPoly::one())
    }
}

impl<F: Scalar> Add for LPoly<F> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<F: Scalar> Add for &LPoly<F> {
    type Output = LPoly<F>;

    fn add(self, rhs: Self) -> LPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<F: Scalar> Sub for &LPoly<F> {
    type Output = LPoly<F>;

    fn sub(self, rhs: Self) -> LPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LPoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<F: Scalar> Neg for &LPoly<F> {
    type Output = LPoly<F>;

    fn neg(self) -> LPoly<F> {
        LPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<F: Scalar> Mul for &LPoly<F> {
    type Output = LPoly<F>;

    fn mul(self, rhs: Self) -> LPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return LPoly::zero();
        }
        let mut coeffs = vec![MultiPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        LPoly::new(coeffs)
    }
}

impl<F: Scalar> Mul for LPoly<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

/// `(L - 2p)! / (L - 2r)! = Π_{j=0}^{2(r-p)-1} (L - 2r + 1 + j)`, monic of
/// degree `2(r - p)`.
pub fn falling_factorial<F: Scalar>(r: usize, p: usize) -> Result<LPoly<F>> {
    if p > r {
        return Err(Error::Usage(format!(
            "falling factorial needs p <= r, got p = {p}, r = {r}"
        )));
    }
    let r = r as i64;
    let len = 2 * (r - p as i64);
    Ok((0..len).fold(LPoly::one(), |acc, j| {
        &acc * &LPoly::size_minus(2 * r - 1 - j)
    }))
}

/// `num(L) / (L^l_pow (L-1)^lm1_pow)`.
#[derive(Clone, Debug)]
pub struct LControlled<F> {
    num: LPoly<F>,
    l_pow: u32,
    lm1_pow: u32,
}

impl<F: Scalar> LControlled<F> {
    pub fn new(num: LPoly<F>, l_pow: u32, lm1_pow: u32) -> Self {
        let mut v = LControlled {
            num,
            l_pow,
            lm1_pow,
        };
        v.reduce();
        v
    }

    pub fn from_lpoly(num: LPoly<F>) -> Self {
        Self::new(num, 0, 0)
    }

    pub fn constant(c: MultiPoly<F>) -> Self {
        Self::from_lpoly(LPoly::constant(c))
    }

    pub fn size() -> Self {
        Self::from_lpoly(LPoly::size())
    }

    pub fn numerator(&self) -> &LPoly<F> {
        &self.num
    }

    /// Powers of `L` and `L - 1` in the denominator.
    pub fn denominator_powers(&self) -> (u32, u32) {
        (self.l_pow, self.lm1_pow)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.l_pow = 0;
            self.lm1_pow = 0;
            return;
        }
        while self.l_pow > 0 {
            match self.num.div_size_exact() {
                Some(q) => {
                    self.num = q;
                    self.l_pow -= 1;
                }
                None => break,
            }
        }
        while self.lm1_pow > 0 {
            match self.num.div_size_minus_one_exact() {
                Some(q) => {
                    self.num = q;
                    self.lm1_pow -= 1;
                }
                None => break,
            }
        }
    }

    fn denominator(&self) -> LPoly<F> {
        &LPoly::size().pow(self.l_pow) * &LPoly::size_minus(1).pow(self.lm1_pow)
    }

    pub fn div_size(&self) -> Self {
        Self::new(self.num.clone(), self.l_pow + 1, self.lm1_pow)
    }

    pub fn div_size_minus_one(&self) -> Self {
        Self::new(self.num.clone(), self.l_pow, self.lm1_pow + 1)
    }

    /// Value at a concrete `L`; fails when `L` hits a denominator root.
    pub fn eval(&self, at: &F) -> Result<MultiPoly<F>> {
        let den = at.powi(self.l_pow as i32) * (at.clone() - F::one()).powi(self.lm1_pow as i32);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(at).scale(&den.recip()))
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly<F>) -> MultiPoly<F>) -> Self {
        Self::new(self.num.map_coeffs(f), self.l_pow, self.lm1_pow)
    }

    /// Brings both operands to the common denominator `L^max (L-1)^max`.
    fn aligned(&self, other: &Self) -> (LPoly<F>, LPoly<F>, u32, u32) {
        let a = self.l_pow.max(other.l_pow);
        let b = self.lm1_pow.max(other.lm1_pow);
        let lift = |v: &Self| {
            let extra = LPoly::size_minus(1).pow(b - v.lm1_pow);
            (&v.num * &extra).shift((a - v.l_pow) as usize)
        };
        (lift(self), lift(other), a, b)
    }
}

/// The exact limit as `L → ∞`: zero when the numerator degree is below the
/// denominator degree, the leading numerator coefficient when they are equal.
pub fn limit_at_infinity<F: Scalar>(v: &LControlled<F>) -> Result<MultiPoly<F>> {
    limit_with_context(v, "")
}

pub(crate) fn limit_with_context<F: Scalar>(
    v: &LControlled<F>,
    context: &str,
) -> Result<MultiPoly<F>> {
    let den_degree = (v.l_pow + v.lm1_pow) as usize;
    match v.num.degree() {
        None => Ok(MultiPoly::zero()),
        Some(n) if n < den_degree => Ok(MultiPoly::zero()),
        Some(n) if n == den_degree => Ok(v.num.leading()),
        Some(n) => Err(Error::Divergence {
            context: context.to_string(),
            num_degree: n,
            den_degree,
        }),
    }
}

impl<F: Scalar> PartialEq for LControlled<F> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.denominator() == &other.num * &self.denominator()
    }
}

impl<F: Scalar> Zero for LControlled<F> {
    fn zero() -> Self {
        Self::from_lpoly(LPoly::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Scalar> One for LControlled<F> {
    fn one() -> Self {
        Self::from_lpoly(LPoly::one())
    }
}

impl<F: Scalar> AddAssign<&LControlled<F>> for LControlled<F> {
    fn add_assign(&mut self, rhs: &LControlled<F>) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        let (a, b, l, m) = self.aligned(rhs);
        *self = Self::new(&a + &b, l, m);
    }
}

impl<F: Scalar> SubAssign<&LControlled<F>> for LControlled<F> {
    fn sub_assign(&mut self, rhs: &LControlled<F>) {
        *self += &(-rhs.clone());
    }
}

impl<F: Scalar> Add for LControlled<F> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<F: Scalar> Sub for LControlled<F> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<F: Scalar> Neg for LControlled<F> {
    type Output = Self;

    fn neg(self) -> Self {
        LControlled {
            num: -&self.num,
            l_pow: self.l_pow,
            lm1_pow: self.lm1_pow,
        }
    }
}

impl<F: Scalar> Mul for LControlled<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<F: Scalar> Ring for LControlled<F> {
    type Scalar = F;

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::new(
            &self.num * &rhs.num,
            self.l_pow + rhs.l_pow,
            self.lm1_pow + rhs.lm1_pow,
        )
    }

    fn scale(&self, c: &F) -> Self {
        self.map_coeffs(|x| x.scale(c))
    }

    fn from_scalar(c: F) -> Self {
        Self::constant(MultiPoly::constant(c))
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.num.degree() != Some(0) {
            return None;
        }
        let inv = self.num.leading().unit_inverse()?;
        Some(Self::from_lpoly(self.denominator().scale_poly(&inv)))
    }
}

impl<F: Scalar> fmt::Display for LControlled<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        let mut first = true;
        for (k, c) in self.num.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*L")?,
                _ => write!(f, "({c})*L^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, ") / (L^{} * (L-1)^{})", self.l_pow, self.lm1_pow)
    }
}

/// Coefficient rings in which the finite-size recursion can run: either the
/// symbolic [`LControlled`] or a concrete size fixed up front.
pub trait SizeRing: Ring {
    fn from_lpoly(p: &LPoly<Self::Scalar>) -> Self;

    fn lift(c: MultiPoly<Self::Scalar>) -> Self {
        Self::from_lpoly(&LPoly::constant(c))
    }

    fn div_size(&self) -> Result<Self>;

    fn div_size_minus_one(&self) -> Result<Self>;
}

impl<F: Scalar> SizeRing for LControlled<F> {
    fn from_lpoly(p: &LPoly<F>) -> Self {
        Self::from_lpoly(p.clone())
    }

    fn div_size(&self) -> Result<Self> {
        Ok(LControlled::div_size(self))
    }

    fn div_size_minus_one(&self) -> Result<Self> {
        Ok(LControlled::div_size_minus_one(self))
    }
}

/// A [`MultiPoly`] computed with `L` fixed to the integer `SIZE`.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedSize<F, const SIZE: i64> {
    pub value: MultiPoly<F>,
    _marker: PhantomData<F>,
}

impl<F: Scalar, const SIZE: i64> FixedSize<F, SIZE> {
    pub fn new(value: MultiPoly<F>) -> Self {
        FixedSize {
            value,
            _marker: PhantomData,
        }
    }

    pub fn size_value() -> F {
        F::from_int(SIZE)
    }
}

impl<F: Scalar, const SIZE: i64> Zero for FixedSize<F, SIZE> {
    fn zero() -> Self {
        Self::new(MultiPoly::zero())
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl<F: Scalar, const SIZE: i64> One for FixedSize<F, SIZE> {
    fn one() -> Self {
        Self::new(MultiPoly::one())
    }
}

impl<F: Scalar, const SIZE: i64> Add for FixedSize<F, SIZE> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.value + rhs.value)
    }
}

impl<F: Scalar, const SIZE: i64> Sub for FixedSize<F, SIZE> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.value - rhs.value)
    }
}

impl<F: Scalar, const SIZE: i64> Mul for FixedSize<F, SIZE> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::new(&self.value * &rhs.value)
    }
}

impl<F: Scalar, const SIZE: i64> Neg for FixedSize<F, SIZE> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.value)
    }
}

impl<F: Scalar, const SIZE: i64> AddAssign<&FixedSize<F, SIZE>> for FixedSize<F, SIZE> {
    fn add_assign(&mut self, rhs: &Self) {
        self.value += &rhs.value;
    }
}

impl<F: Scalar, const SIZE: i64> SubAssign<&FixedSize<F, SIZE>> for FixedSize<F, SIZE> {
    fn sub_assign(&mut self, rhs: &Self) {
        self.value -= &rhs.value;
    }
}

impl<F: Scalar, const SIZE: i64> Ring for FixedSize<F, SIZE> {
    type Scalar = F;

    fn mul_ref(&self, rhs: &Self) -> Self {
        Self::new(&self.value * &rhs.value)
    }

    fn scale(&self, c: &F) -> Self {
        Self::new(self.value.scale(c))
    }

    fn from_scalar(c: F) -> Self {
        Self::new(MultiPoly::constant(c))
    }

    fn try_inverse(&self) -> Option<Self> {
        self.value.unit_inverse().map(Self::new)
    }
}

impl<F: Scalar, const SIZE: i64> SizeRing for FixedSize<F, SIZE> {
    fn from_lpoly(p: &LPoly<F>) -> Self {
        Self::new(p.eval(&Self::size_value()))
    }

    fn div_size(&self) -> Result<Self> {
        if SIZE == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(self.value.scale(&Self::size_value().recip())))
    }

    fn div_size_minus_one(&self) -> Result<Self> {
        if SIZE == 1 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(
            self.value.scale(&(Self::size_value() - F::one()).recip()),
        ))
    }
}
