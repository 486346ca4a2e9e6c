//! Parsing of command-line rationals and b-sequence files.

use std::collections::BTreeMap;
use std::str::FromStr;

use mdseries_core::transforms::BSequence;
use mdseries_core::verification::catalan_b;
use mdseries_core::{Error, Poly, Rational, Result};
use num_traits::Signed;

pub fn parse_rational(what: &str, s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| {
        Error::Usage(format!(
            "{what}: expected a rational like 3 or 1/10, got {s:?}"
        ))
    })
}

/// `k:delta`.
pub fn parse_perturbation(s: &str) -> Result<(usize, Rational)> {
    let (k, delta) = s
        .split_once(':')
        .ok_or_else(|| Error::Usage(format!("--perturb expects k:delta, got {s:?}")))?;
    let k = k
        .trim()
        .parse()
        .map_err(|_| Error::Usage(format!("--perturb: bad index {k:?}")))?;
    Ok((k, parse_rational("--perturb", delta)?))
}

/// Where the Mayer coefficients come from.
#[derive(Clone, Debug, PartialEq)]
pub enum BInput {
    Symbolic,
    Catalan,
    /// `b_i` for `i >= 2`; `b_1 = d` always.
    Values(BTreeMap<usize, Rational>),
}

impl BInput {
    /// Parses a b-file. A line `1 x` is accepted only if `x` equals `d`.
    pub fn parse(text: &str, d: Option<&Rational>) -> Result<Self> {
        let lines: Vec<&str> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .collect();
        if lines == ["catalan"] {
            return Ok(BInput::Catalan);
        }
        let mut values = BTreeMap::new();
        for line in lines {
            let mut parts = line.split_whitespace();
            let (Some(i), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Usage(format!(
                    "b-file: expected `i n/m`, got {line:?}"
                )));
            };
            let i: usize = i
                .parse()
                .map_err(|_| Error::Usage(format!("b-file: bad index {i:?}")))?;
            let v = parse_rational("b-file", v)?;
            if i == 0 {
                return Err(Error::Usage("b-file: indices start at 1".into()));
            }
            if i == 1 {
                match d {
                    Some(d) if *d == v => continue,
                    Some(d) => {
                        return Err(Error::Usage(format!(
                            "b-file: b_1 must equal d = {d}, got {v}"
                        )))
                    }
                    None => {
                        return Err(Error::Usage(
                            "b-file: b_1 is fixed to d; omit it or pass --d".into(),
                        ))
                    }
                }
            }
            if values.insert(i, v).is_some() {
                return Err(Error::Usage(format!("b-file: b_{i} given twice")));
            }
        }
        Ok(BInput::Values(values))
    }

    pub fn sequence(&self, order: usize) -> Result<BSequence<Rational>> {
        match self {
            BInput::Symbolic => Ok(BSequence::symbolic(order)),
            BInput::Catalan => Ok(catalan_b(order)?.btilde().clone()),
            BInput::Values(values) => {
                let tail = (2..=order)
                    .map(|i| {
                        values.get(&i).cloned().map(Poly::constant).ok_or_else(|| {
                            Error::Usage(format!("b-file has no b_{i}, needed for order {order}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(BSequence::from_tail(tail))
            }
        }
    }
}

/// `d` must be a positive rational.
pub fn check_dimension(d: &Rational) -> Result<()> {
    if d.is_positive() {
        Ok(())
    } else {
        Err(Error::Usage(format!("d must be positive, got {d}")))
    }
}
