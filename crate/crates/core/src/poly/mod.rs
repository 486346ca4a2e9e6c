//! Multivariate Laurent polynomials over an exact scalar field.
//!
//! The symbol `d` may carry any integer exponent; the indexed symbols
//! `b_i`, `J_i` (and the internal scratch symbols `t_i`) carry only
//! non-negative exponents. Terms are kept in a `BTreeMap` keyed by
//! [`Monomial`], with no zero coefficient ever stored, so structural
//! equality is mathematical equality.

mod parse;
mod render;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalar::Scalar;

pub use parse::parse_poly;

/// Kind of an indexed symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    /// Mayer coefficient `b_i`.
    B,
    /// Cluster kernel `J_i` (the barred J).
    J,
    /// Scratch symbol used while solving for an unknown; never escapes a
    /// public pipeline result.
    Aux,
}

/// An indexed symbol such as `b_3` or `J_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub kind: VarKind,
    pub index: u32,
}

impl Var {
    pub const fn b(index: u32) -> Self {
        Var {
            kind: VarKind::B,
            index,
        }
    }

    pub const fn j(index: u32) -> Self {
        Var {
            kind: VarKind::J,
            index,
        }
    }

    pub const fn aux(index: u32) -> Self {
        Var {
            kind: VarKind::Aux,
            index,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.kind {
            VarKind::B => "b",
            VarKind::J => "J",
            VarKind::Aux => "t",
        };
        write!(f, "{prefix}{}", self.index)
    }
}

/// A power product `d^e * Π v^k`.
///
/// Ordering (the canonical term order): by exponent of `d`, then the list of
/// `(symbol, exponent)` pairs compared lexicographically, where symbols sort
/// `b` before `J` before `t` and then by index.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    d: i32,
    vars: SmallVec<[(Var, u32); 4]>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn d_pow(exp: i32) -> Self {
        Monomial {
            d: exp,
            vars: SmallVec::new(),
        }
    }

    pub fn var_pow(var: Var, exp: u32) -> Self {
        let mut vars = SmallVec::new();
        if exp > 0 {
            vars.push((var, exp));
        }
        Monomial { d: 0, vars }
    }

    /// Builds a monomial from arbitrary (possibly repeated, possibly zero)
    /// exponent pairs.
    pub fn new(d: i32, pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        pairs.into_iter().fold(Monomial::d_pow(d), |m, (v, e)| {
            m.mul(&Monomial::var_pow(v, e))
        })
    }

    pub fn d_exp(&self) -> i32 {
        self.d
    }

    pub fn exp(&self, var: Var) -> u32 {
        self.vars
            .iter()
            .find(|(v, _)| *v == var)
            .map_or(0, |&(_, e)| e)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.vars.iter().copied()
    }

    pub fn is_one(&self) -> bool {
        self.d == 0 && self.vars.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut vars = SmallVec::with_capacity(self.vars.len() + other.vars.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            let (a, ea) = self.vars[i];
            let (b, eb) = other.vars[j];
            match a.cmp(&b) {
                std::cmp::Ordering::Less => {
                    vars.push((a, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    vars.push((b, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    vars.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        vars.extend_from_slice(&self.vars[i..]);
        vars.extend_from_slice(&other.vars[j..]);
        Monomial {
            d: self.d + other.d,
            vars,
        }
    }

    /// The monomial with `var` removed.
    pub fn without(&self, var: Var) -> Monomial {
        Monomial {
            d: self.d,
            vars: self
                .vars
                .iter()
                .copied()
                .filter(|(v, _)| *v != var)
                .collect(),
        }
    }

    fn is_canonical(&self) -> bool {
        self.vars.iter().all(|&(_, e)| e > 0) && self.vars.windows(2).all(|w| w[0].0 < w[1].0)
    }
}

/// Multivariate Laurent polynomial in `d` with indexed symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> MultiPoly<F> {
    pub fn constant(c: F) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(F::from_int(n))
    }

    pub fn term(c: F, m: Monomial) -> Self {
        debug_assert!(m.is_canonical());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn d() -> Self {
        Self::d_pow(1)
    }

    pub fn d_pow(exp: i32) -> Self {
        Self::term(F::one(), Monomial::d_pow(exp))
    }

    pub fn var(v: Var) -> Self {
        Self::term(F::one(), Monomial::var_pow(v, 1))
    }

    pub fn b(index: u32) -> Self {
        Self::var(Var::b(index))
    }

    pub fn j(index: u32) -> Self {
        Self::var(Var::j(index))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<F> {
        self.is_constant().then(|| self.constant_term())
    }

    /// True if no term carries a nonzero power of `d`.
    pub fn is_d_free(&self) -> bool {
        self.terms.keys().all(|m| m.d == 0)
    }

    pub fn symbols(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.vars().map(|(v, _)| v))
            .collect()
    }

    /// Largest index among symbols of the given kind, if any occurs.
    pub fn max_index(&self, kind: VarKind) -> Option<u32> {
        self.symbols()
            .into_iter()
            .filter(|v| v.kind == kind)
            .map(|v| v.index)
            .max()
    }

    pub fn degree_in(&self, var: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    /// Coefficient of `var^exp`, as a polynomial in the remaining symbols.
    pub fn coeff_of(&self, var: Var, exp: u32) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(var) == exp)
                .map(|(m, c)| (m.without(var), c.clone()))
                .collect(),
        }
    }

    /// Sum of all coefficients, i.e. the value with every symbol and `d` set to 1.
    pub fn coeff_sum(&self) -> F {
        self.terms
            .values()
            .fold(F::zero(), |acc, c| acc + c.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(mono), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Inverse within the Laurent ring: exists exactly for `c * d^k`, c ≠ 0.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        m.vars
            .is_empty()
            .then(|| Self::term(c.recip(), Monomial::d_pow(-m.d)))
    }

    /// Homomorphic substitution of symbols by polynomials. Symbols without a
    /// binding are left in place.
    pub fn substitute(&self, bindings: &BTreeMap<Var, MultiPoly<F>>) -> Self {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut powers: HashMap<(Var, u32), MultiPoly<F>> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::d_pow(m.d);
            let mut factor = Self::constant(c.clone());
            for (v, e) in m.vars() {
                match bindings.get(&v) {
                    Some(value) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| value.pow(e));
                        factor = &factor * pw;
                    }
                    None => kept = kept.mul(&Monomial::var_pow(v, e)),
                }
            }
            out += &factor.mul_monomial(&kept, &F::one());
        }
        out
    }

    /// Substitution that must leave no symbol of the given kinds unbound.
    pub fn substitute_grounded(
        &self,
        bindings: &BTreeMap<Var, MultiPoly<F>>,
        kinds: &[VarKind],
    ) -> Result<Self> {
        if let Some(v) = self
            .symbols()
            .into_iter()
            .find(|v| kinds.contains(&v.kind) && !bindings.contains_key(v))
        {
            return Err(Error::UnboundSymbol(v.to_string()));
        }
        Ok(self.substitute(bindings))
    }

    /// Sets `d` to a scalar value.
    pub fn substitute_d(&self, d: &F) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if d.is_zero() && m.d < 0 {
                return Err(Error::DivisionByZero);
            }
            let value = c.clone() * d.powi(m.d);
            out.add_term(
                Monomial {
                    d: 0,
                    vars: m.vars.clone(),
                },
                value,
            );
        }
        Ok(out)
    }

    /// Exact value at a point. Every occurring symbol must be bound.
    pub fn eval(&self, d: &F, values: &BTreeMap<Var, F>) -> Result<F> {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            if d.is_zero() && m.d < 0 {
                return Err(Error::DivisionByZero);
            }
            let mut t = c.clone() * d.powi(m.d);
            for (v, e) in m.vars() {
                let x = values
                    .get(&v)
                    .ok_or_else(|| Error::UnboundSymbol(v.to_string()))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        debug_assert!(m.is_canonical());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl<F: Scalar> Zero for MultiPoly<F> {
    fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Scalar> One for MultiPoly<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Scalar> AddAssign<&MultiPoly<F>> for MultiPoly<F> {
    fn add_assign(&mut self, rhs: &MultiPoly<F>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<F: Scalar> SubAssign<&MultiPoly<F>> for MultiPoly<F> {
    fn sub_assign(&mut self, rhs: &MultiPoly<F>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<F: Scalar> std::iter::Sum for MultiPoly<F> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<F: Scalar> Add for MultiPoly<F> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<F: Scalar> Add for &MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn add(self, rhs: Self) -> MultiPoly<F> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<F: Scalar> Sub for MultiPoly<F> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<F: Scalar> Sub for &MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn sub(self, rhs: Self) -> MultiPoly<F> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<F: Scalar> Neg for MultiPoly<F> {
    type Output = Self;

    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<F: Scalar> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn neg(self) -> MultiPoly<F> {
        -self.clone()
    }
}

impl<F: Scalar> Mul for &MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn mul(self, rhs: Self) -> MultiPoly<F> {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Scalar> Mul for MultiPoly<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<F: Scalar> MulAssign<&MultiPoly<F>> for MultiPoly<F> {
    fn mul_assign(&mut self, rhs: &MultiPoly<F>) {
        *self = &*self * rhs;
    }
}

impl<F: Scalar> Ring for MultiPoly<F> {
    type Scalar = F;

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn scale(&self, c: &F) -> Self {
        MultiPoly::scale(self, c)
    }

    fn from_scalar(c: F) -> Self {
        Self::constant(c)
    }

    fn try_inverse(&self) -> Option<Self> {
        self.unit_inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Rational};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn additive_inverse_and_like_terms() {
        let two_d2 = p("2*d^2");
        assert!((&two_d2 + &p("-2*d^2")).is_zero());
        assert_eq!((&two_d2 + &p("-2*d^2")).to_string(), "0");
        assert_eq!(&Poly::b(2) + &Poly::b(2), Poly::b(2).scale(&q(2, 1)));
        assert_eq!(&p("2*d^2 + b2") + &p("-b2"), two_d2);
    }

    #[test]
    fn laurent_products() {
        assert_eq!(&Poly::d_pow(-2) * &Poly::d_pow(2), Poly::one());
        let lhs = &p("4*J2 - 2") * &p("d^2");
        assert_eq!(lhs, p("4*d^2*J2 - 2*d^2"));
        assert_eq!(p("4*J2 - 2").pow(2), p("16*J2^2 - 16*J2 + 4"));
    }

    #[test]
    fn substitution_of_b2_into_second_expression() {
        // a'_2 with b_2 := d^2 (4 J_2 - 2) collapses to J_2.
        let a2 = p("1/4*d^-2*(2*d^2 + b2)");
        let mut sigma = BTreeMap::new();
        sigma.insert(Var::b(2), p("d^2*(4*J2 - 2)"));
        assert_eq!(a2.substitute(&sigma), Poly::j(2));
        assert_eq!(a2.substitute(&BTreeMap::new()), a2);
    }

    #[test]
    fn substitution_into_a3() {
        let a3 = p("-1/24*d^-4*(-4*d^4 - 3*b3*d + 6*b2^2)");
        let mut sigma = BTreeMap::new();
        sigma.insert(Var::b(2), p("d^2*(4*J2 - 2)"));
        sigma.insert(Var::b(3), p("4/3*d^3*(5 - 24*J2 + 6*J3)"));
        assert_eq!(a3.substitute(&sigma), p("J3 - 4*J2^2"));
    }

    #[test]
    fn grounded_substitution_reports_unbound() {
        let e = p("b2 + b3").substitute_grounded(&BTreeMap::new(), &[VarKind::B]);
        assert_eq!(e, Err(Error::UnboundSymbol("b2".into())));
    }

    #[test]
    fn evaluation() {
        let vals = BTreeMap::new();
        assert_eq!(p("2*d^2").eval(&q(3, 1), &vals).unwrap(), q(18, 1));
        let mut at_catalan = BTreeMap::new();
        at_catalan.insert(Var::b(2), q(-2, 1));
        let jbar2 = p("1/4*d^-2*(2*d^2 + b2)");
        assert_eq!(jbar2.eval(&q(1, 1), &at_catalan).unwrap(), q(0, 1));
        assert_eq!(
            jbar2.eval(&q(0, 1), &at_catalan),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            p("b2").eval(&q(1, 1), &vals),
            Err(Error::UnboundSymbol("b2".into()))
        );
    }

    #[test]
    fn coefficient_extraction() {
        let f = p("3*b2^2*d + b2*J3 - 7");
        assert_eq!(f.degree_in(Var::b(2)), 2);
        assert_eq!(f.coeff_of(Var::b(2), 1), Poly::j(3));
        assert_eq!(f.coeff_of(Var::b(2), 0), p("-7"));
        assert_eq!(f.max_index(VarKind::J), Some(3));
        assert_eq!(f.max_index(VarKind::Aux), None);
        assert!(!f.is_d_free());
    }

    #[test]
    fn units() {
        assert_eq!(p("2*d^3").unit_inverse(), Some(p("1/2*d^-3")));
        assert_eq!(p("d + 1").unit_inverse(), None);
        assert_eq!(p("b2").unit_inverse(), None);
    }
}
