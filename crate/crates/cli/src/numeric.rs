//! Numeric evaluation of `λ = Q_1 + Q_2` at rational `d`, `p`.
//!
//! `Q_2` is summed exactly; only the logarithms in `Q_1` are approximated,
//! at a binary precision comfortably above the requested decimal digits, and
//! the float is turned back into an exact rational before printing.

use std::collections::BTreeMap;

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use mdseries_core::expression_one::{a_coeffs, ASequence};
use mdseries_core::expression_two::a_prime_coeffs;
use mdseries_core::transforms::{jbar_from_b, BSequence, JSequence};
use mdseries_core::{Error, Rational, Result, Var};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

const RM: RoundingMode = RoundingMode::ToEven;
const WORD_BITS: usize = Word::BITS as usize;

fn bits_for(digits: usize) -> usize {
    // log2(10) < 3.33
    digits * 10 / 3 + 128
}

fn consts() -> Result<Consts> {
    Consts::new().map_err(|e| Error::Consistency(format!("float constants: {e:?}")))
}

fn int_to_float(n: &BigInt) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_word(0, WORD_BITS);
    }
    let words: Vec<Word> = n
        .magnitude()
        .iter_u64_digits()
        .flat_map(|d| {
            let bytes = d.to_le_bytes();
            bytes
                .chunks(WORD_BITS / 8)
                .map(|c| {
                    let mut w = [0u8; std::mem::size_of::<Word>()];
                    w.copy_from_slice(c);
                    Word::from_le_bytes(w)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let sign = if n.is_negative() {
        Sign::Neg
    } else {
        Sign::Pos
    };
    BigFloat::from_words(&words, sign, (words.len() * WORD_BITS) as i32)
}

fn to_float(r: &Rational, bits: usize) -> BigFloat {
    int_to_float(r.numer()).div(&int_to_float(r.denom()), bits, RM)
}

/// The exact rational value of a finite float.
fn to_rational(x: &BigFloat) -> Result<Rational> {
    if x.is_zero() {
        return Ok(Rational::zero());
    }
    let (words, _, sign, exp, _) = x
        .as_raw_parts()
        .ok_or_else(|| Error::Consistency("non-finite intermediate value".into()))?;
    let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
    let mantissa = BigInt::from(BigUint::from_bytes_le(&bytes));
    let shift = exp as i64 - (words.len() * WORD_BITS) as i64;
    let two = BigInt::from(2);
    let mut value = if shift >= 0 {
        Rational::from_integer(mantissa * two.pow(shift as u32))
    } else {
        Rational::new(mantissa, two.pow((-shift) as u32))
    };
    if sign == Sign::Neg {
        value = -value;
    }
    Ok(value)
}

fn ln(x: &Rational, bits: usize, cc: &mut Consts) -> BigFloat {
    to_float(x, bits).ln(bits, RM, cc)
}

/// `Q_1 = (1/2)(p ln(2d) - p ln p - 2(1-p) ln(1-p) - p)` to within
/// `10^-(digits+10)`; `p = 0` gives exactly 0.
pub fn q1_eval(d: &Rational, p: &Rational, digits: usize) -> Result<Rational> {
    if p.is_negative() || *p >= Rational::one() {
        return Err(Error::Usage(format!("p must satisfy 0 <= p < 1, got {p}")));
    }
    if !d.is_positive() {
        return Err(Error::Usage(format!("d must be positive, got {d}")));
    }
    if p.is_zero() {
        return Ok(Rational::zero());
    }
    let bits = bits_for(digits + 10);
    let mut cc = consts()?;
    let two = Rational::from_integer(2.into());
    let one_minus_p = Rational::one() - p;
    let ln_2d = ln(&(&two * d), bits, &mut cc);
    let ln_p = ln(p, bits, &mut cc);
    let ln_q = ln(&one_minus_p, bits, &mut cc);
    let pf = to_float(p, bits);
    let qf = to_float(&one_minus_p, bits);
    let two_f = to_float(&two, bits);
    let sum = pf
        .mul(&ln_2d, bits, RM)
        .sub(&pf.mul(&ln_p, bits, RM), bits, RM)
        .sub(&two_f.mul(&qf, bits, RM).mul(&ln_q, bits, RM), bits, RM)
        .sub(&pf, bits, RM);
    Ok(to_rational(&sum)? / two)
}

/// `Σ_{k=2}^{N} a_k p^k` for numeric coefficients.
pub fn series_value(a: &[Rational], p: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut power = Rational::one();
    for (i, c) in a.iter().enumerate() {
        power *= p;
        if i >= 1 {
            acc += c * &power;
        }
    }
    acc
}

/// Decimal rendering with `digits` places, rounded half away from zero.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (r * Rational::from_integer(scale.clone()))
        .round()
        .to_integer();
    let negative = scaled.is_negative();
    let magnitude = scaled.abs().to_string();
    let padded = format!("{:0>width$}", magnitude, width = digits + 1);
    let (int, frac) = padded.split_at(padded.len() - digits);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaEstimate {
    pub order: usize,
    pub q1: Rational,
    pub q2_first: Rational,
    pub q2_second: Rational,
}

impl LambdaEstimate {
    pub fn lambda_first(&self) -> Rational {
        &self.q1 + &self.q2_first
    }

    pub fn lambda_second(&self) -> Rational {
        &self.q1 + &self.q2_second
    }
}

fn eval_all(
    a: &ASequence<Rational>,
    d: &Rational,
    values: &BTreeMap<Var, Rational>,
) -> Result<Vec<Rational>> {
    a.values().iter().map(|c| c.eval(d, values)).collect()
}

/// Both routes at numeric `d`, `p`: the symbolic `a_k(J)` at `J = f(b)`, and
/// the symbolic `a'_k(b)` at `b`. `b` may carry `d` symbolically.
pub fn lambda_eval(
    b: &BSequence<Rational>,
    d: &Rational,
    p: &Rational,
    order: usize,
    digits: usize,
) -> Result<LambdaEstimate> {
    if order < 2 {
        return Err(Error::Usage(format!(
            "order must be at least 2, got {order}"
        )));
    }
    let q1 = q1_eval(d, p, digits)?;
    let b = b.truncated(order);
    let mut b_values = BTreeMap::new();
    for i in 2..=order {
        b_values.insert(Var::b(i as u32), b.get(i).eval(d, &BTreeMap::new())?);
    }
    let j = jbar_from_b(&b)?;
    let mut j_values = BTreeMap::new();
    for k in 2..=order {
        j_values.insert(Var::j(k as u32), j.get(k).eval(d, &BTreeMap::new())?);
    }

    let a = a_coeffs(&JSequence::<Rational>::symbolic(order), order)?;
    let a_prime = a_prime_coeffs(&BSequence::<Rational>::symbolic(order), order)?;
    let first = eval_all(&a, d, &j_values)?;
    let second = eval_all(&a_prime, d, &b_values)?;
    Ok(LambdaEstimate {
        order,
        q1,
        q2_first: series_value(&first, p),
        q2_second: series_value(&second, p),
    })
}
