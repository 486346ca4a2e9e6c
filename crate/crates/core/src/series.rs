//! Truncated formal power series in one variable over any [`Ring`].
//!
//! A series of order `N` stores exactly the coefficients of `v^0 .. v^N`.
//! Binary operations require equal variable and order; there is no implicit
//! coercion. Dividing by `v^m` lowers the order by `m` (the dropped tail is
//! genuinely unknown) and multiplying by `v^m` raises it by `m`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalar::Scalar;

/// The formal variable a series is expanded in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormalVar {
    X,
    Z,
    P,
}

impl fmt::Display for FormalVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormalVar::X => "x",
            FormalVar::Z => "z",
            FormalVar::P => "p",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series<R> {
    var: FormalVar,
    coeffs: Vec<R>,
}

impl<R: Ring> Series<R> {
    pub fn zero(var: FormalVar, order: usize) -> Self {
        Series {
            var,
            coeffs: vec![R::zero(); order + 1],
        }
    }

    pub fn one(var: FormalVar, order: usize) -> Self {
        Self::constant(var, order, R::one())
    }

    pub fn constant(var: FormalVar, order: usize, c: R) -> Self {
        let mut s = Self::zero(var, order);
        s.coeffs[0] = c;
        s
    }

    /// `c * var^k`, which is zero when `k > order`.
    pub fn monomial(var: FormalVar, order: usize, k: usize, c: R) -> Self {
        let mut s = Self::zero(var, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Series from leading coefficients; missing ones are zero and extra
    /// ones are dropped.
    pub fn from_coeffs(var: FormalVar, order: usize, coeffs: impl IntoIterator<Item = R>) -> Self {
        let mut s = Self::zero(var, order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn var(&self) -> FormalVar {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// The coefficient of `var^j`.
    pub fn coeff(&self, j: usize) -> Result<&R> {
        self.coeffs.get(j).ok_or(Error::IndexOutOfRange {
            index: j,
            order: self.order(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VarMismatch(self.var, other.var));
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order();
        let mut out = Self::zero(self.var, n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &a.mul_ref(b);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R::Scalar) -> Self {
        self.map(|x| x.scale(c))
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale_ring(&self, c: &R) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn map(&self, f: impl Fn(&R) -> R) -> Self {
        Series {
            var: self.var,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Keeps coefficients up to `order`; `order` must not exceed the current one.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::Usage(format!(
                "cannot extend a series of order {} to order {order}",
                self.order()
            )));
        }
        Ok(Series {
            var: self.var,
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// Divides by `var^m`; requires the first `m` coefficients to vanish.
    /// The result has order `N - m`.
    pub fn shift_div(&self, m: usize) -> Result<Self> {
        if m > self.order() {
            return Err(Error::Usage(format!(
                "cannot divide a series of order {} by {}^{m}",
                self.order(),
                self.var
            )));
        }
        if let Some(index) = self.coeffs[..m].iter().position(|c| !c.is_zero()) {
            return Err(Error::LowOrderNonZero {
                var: self.var,
                shift: m,
                index,
            });
        }
        Ok(Series {
            var: self.var,
            coeffs: self.coeffs[m..].to_vec(),
        })
    }

    /// Multiplies by `var^m`; the result has order `N + m` and is exact.
    pub fn shift_mul(&self, m: usize) -> Self {
        let mut coeffs = vec![R::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Series {
            var: self.var,
            coeffs,
        }
    }

    /// `exp(s)` for `s` with zero constant term, via
    /// `n e_n = Σ_{k=1..n} k s_k e_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let n = self.order();
        let mut e = Vec::with_capacity(n + 1);
        e.push(R::one());
        for m in 1..=n {
            let mut acc = R::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    let weighted = self.coeffs[k].scale(&scalar_int::<R>(k));
                    acc += &weighted.mul_ref(&e[m - k]);
                }
            }
            e.push(acc.scale(&scalar_recip::<R>(m)));
        }
        Ok(Series {
            var: self.var,
            coeffs: e,
        })
    }

    /// `log(1 + s)` for `s` with zero constant term, via
    /// `n g_n = n s_n - Σ_{k=1..n-1} k g_k s_{n-k}`.
    pub fn log1p(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let n = self.order();
        let mut g: Vec<R> = Vec::with_capacity(n + 1);
        g.push(R::zero());
        for m in 1..=n {
            let mut acc = self.coeffs[m].scale(&scalar_int::<R>(m));
            for (k, gk) in g.iter().enumerate().skip(1) {
                if !gk.is_zero() && !self.coeffs[m - k].is_zero() {
                    acc -= &gk.scale(&scalar_int::<R>(k)).mul_ref(&self.coeffs[m - k]);
                }
            }
            g.push(acc.scale(&scalar_recip::<R>(m)));
        }
        Ok(Series {
            var: self.var,
            coeffs: g,
        })
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].try_inverse().ok_or(Error::NotAUnit)?;
        let n = self.order();
        let mut inv: Vec<R> = Vec::with_capacity(n + 1);
        inv.push(c0_inv.clone());
        for m in 1..=n {
            let mut acc = R::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k].mul_ref(&inv[m - k]);
                }
            }
            inv.push(-acc.mul_ref(&c0_inv));
        }
        Ok(Series {
            var: self.var,
            coeffs: inv,
        })
    }

    /// `s^k`; negative `k` inverts first and needs a unit constant term.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut result = Self::one(self.var, self.order());
        let mut square = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&square)?;
            }
            e >>= 1;
            if e > 0 {
                square = square.mul(&square)?;
            }
        }
        Ok(result)
    }

    /// `Σ_n c_n s^n` for a polynomial given by its coefficients `c_0, c_1, …`;
    /// requires `s` to have zero constant term unless the polynomial is finite,
    /// which it always is here.
    pub fn eval_poly(&self, poly: &[R]) -> Result<Self> {
        let mut acc = Self::zero(self.var, self.order());
        let mut power = Self::one(self.var, self.order());
        for (n, c) in poly.iter().enumerate() {
            if n > 0 {
                power = power.mul(self)?;
            }
            if !c.is_zero() {
                acc = acc.add(&power.scale_ring(c))?;
            }
        }
        Ok(acc)
    }
}

fn scalar_int<R: Ring>(k: usize) -> R::Scalar {
    R::Scalar::from_int(k as i64)
}

fn scalar_recip<R: Ring>(k: usize) -> R::Scalar {
    R::Scalar::from_ratio(1, k as i64)
}

impl<R: Ring + fmt::Display> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{k}", self.var)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::{Poly, Rational};
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn rs(order: usize, cs: &[(i64, i64)]) -> Series<Rational> {
        Series::from_coeffs(FormalVar::X, order, cs.iter().map(|&(n, d)| q(n, d)))
    }

    #[test]
    fn products_and_truncation() {
        let a = rs(2, &[(1, 1), (1, 1)]);
        let b = rs(2, &[(1, 1), (-1, 1)]);
        assert_eq!(a.mul(&b).unwrap(), rs(2, &[(1, 1), (0, 1), (-1, 1)]));
        let x = rs(1, &[(0, 1), (1, 1)]);
        assert!(x.mul(&x).unwrap().is_zero());

        let half_inv_d: Poly = parse_poly("1/2*d^-1").unwrap();
        let s = Series::monomial(FormalVar::P, 2, 1, half_inv_d);
        let sq = s.mul(&s).unwrap();
        assert_eq!(
            sq.coeff(2).unwrap(),
            &parse_poly::<Rational>("1/4*d^-2").unwrap()
        );
    }

    #[test]
    fn mismatches_are_errors() {
        let a = rs(2, &[(1, 1)]);
        let b = rs(3, &[(1, 1)]);
        assert_eq!(a.mul(&b), Err(Error::OrderMismatch(2, 3)));
        let c = Series::from_coeffs(FormalVar::P, 2, [q(1, 1)]);
        assert_eq!(
            a.add(&c),
            Err(Error::VarMismatch(FormalVar::X, FormalVar::P))
        );
    }

    #[test]
    fn exponential() {
        let x = rs(4, &[(0, 1), (1, 1)]);
        let e = x.exp().unwrap();
        assert_eq!(e.coeff(2).unwrap(), &q(1, 2));
        assert_eq!(e.coeff(3).unwrap(), &q(1, 6));
        assert_eq!(
            Series::<Rational>::zero(FormalVar::X, 3).exp().unwrap(),
            Series::one(FormalVar::X, 3)
        );
        assert_eq!(rs(2, &[(1, 1)]).exp(), Err(Error::NonZeroConstant));
    }

    #[test]
    fn logarithm() {
        let minus_p = rs(6, &[(0, 1), (-1, 1)]);
        let l = minus_p.log1p().unwrap();
        for k in 1..=6 {
            assert_eq!(l.coeff(k).unwrap(), &q(-1, k as i64));
        }
        assert!(Series::<Rational>::zero(FormalVar::X, 3)
            .log1p()
            .unwrap()
            .is_zero());
    }

    #[test]
    fn powers() {
        let one_minus_p = rs(5, &[(1, 1), (-1, 1)]);
        let geo = one_minus_p.pow(-1).unwrap();
        assert!(geo.coeffs().iter().all(|c| c.is_one()));
        let sq = one_minus_p.pow(-2).unwrap();
        for k in 0..=5 {
            assert_eq!(sq.coeff(k).unwrap(), &q(k as i64 + 1, 1));
        }
        assert_eq!(one_minus_p.pow(0).unwrap(), Series::one(FormalVar::X, 5));
        assert_eq!(rs(3, &[(0, 1), (1, 1)]).pow(-1), Err(Error::NotAUnit));
    }

    #[test]
    fn shifts() {
        let p2 = rs(3, &[(0, 1), (0, 1), (1, 1)]);
        let p1 = p2.shift_div(1).unwrap();
        assert_eq!(p1, rs(2, &[(0, 1), (1, 1)]));
        assert_eq!(p1.shift_mul(1), p2);
        assert_eq!(
            rs(3, &[(1, 1), (1, 1)]).shift_div(1),
            Err(Error::LowOrderNonZero {
                var: FormalVar::X,
                shift: 1,
                index: 0
            })
        );
    }

    #[test]
    fn extraction() {
        let e = rs(3, &[(0, 1), (1, 1)]).exp().unwrap();
        assert_eq!(e.coeff(3).unwrap(), &q(1, 6));
        assert_eq!(
            e.coeff(4),
            Err(Error::IndexOutOfRange { index: 4, order: 3 })
        );
        assert!(Rational::zero().is_zero());
    }
}
