//! Recursive-descent reader for polynomial text.
//!
//! Accepts the rendered grammar plus parentheses, `^` on any parenthesised
//! or atomic base, and division by units (`c*d^k`). Symbols may be written
//! `b2` or `b_2`.

use super::{MultiPoly, Var};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn parse_poly<F: Scalar>(input: &str) -> Result<MultiPoly<F>> {
    let mut parser = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("integer too large"))
    }

    fn expr<F: Scalar>(&mut self) -> Result<MultiPoly<F>> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc += &self.term()?;
            } else if self.eat(b'-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<F: Scalar>(&mut self) -> Result<MultiPoly<F>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let divisor = self.unary()?;
                let inv = divisor.unit_inverse().ok_or(Error::Parse {
                    pos: at,
                    msg: "division is only defined by c*d^k with c nonzero".into(),
                })?;
                acc = &acc * &inv;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<F: Scalar>(&mut self) -> Result<MultiPoly<F>> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power<F: Scalar>(&mut self) -> Result<MultiPoly<F>> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        let e = u32::try_from(self.uint()?).map_err(|_| self.error("exponent too large"))?;
        if negative {
            let inv = base
                .unit_inverse()
                .ok_or_else(|| self.error("negative exponent on a non-unit"))?;
            Ok(inv.pow(e))
        } else {
            Ok(base.pow(e))
        }
    }

    fn atom<F: Scalar>(&mut self) -> Result<MultiPoly<F>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                let n = i64::try_from(n).map_err(|_| self.error("integer too large"))?;
                Ok(MultiPoly::integer(n))
            }
            Some(b'd') => {
                self.pos += 1;
                Ok(MultiPoly::d())
            }
            Some(c @ (b'b' | b'J' | b't')) => {
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b'_') {
                    self.pos += 1;
                }
                let index =
                    u32::try_from(self.uint()?).map_err(|_| self.error("index too large"))?;
                if index == 0 {
                    return Err(self.error("symbol indices start at 1"));
                }
                let var = match c {
                    b'b' => Var::b(index),
                    b'J' => Var::j(index),
                    _ => Var::aux(index),
                };
                Ok(MultiPoly::var(var))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Rational};
    use num_traits::Zero;

    #[test]
    fn reads_paper_style_expressions() {
        let p: Poly = parse_poly("-1/4 * 1/d^2 * (-2*d^2 - b_2)").unwrap();
        assert_eq!(p.to_string(), "1/4*d^-2*b2 + 1/2");
        let q: Poly = parse_poly("(J2 + 1)^2").unwrap();
        assert_eq!(q, parse_poly("J2^2 + 2*J2 + 1").unwrap());
        let c: Poly = parse_poly("0").unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_poly::<Rational>("b0"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_poly::<Rational>("1/(d+1)"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_poly::<Rational>("b2^-1"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_poly::<Rational>("2 +"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_poly::<Rational>("x"),
            Err(Error::Parse { .. })
        ));
    }
}
