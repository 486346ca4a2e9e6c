//! Text and LaTeX rendering.
//!
//! Flat text grammar (what `Display` produces and [`parse_poly`] reads):
//!
//! ```text
//! poly    := "0" | ["-"] term ((" + " | " - ") term)*
//! term    := coeff | [coeff "*"] factor ("*" factor)*
//! coeff   := uint ["/" uint]            (omitted when it is 1 and a factor follows)
//! factor  := "d" ["^" int] | ("b" | "J" | "t") uint ["^" uint]
//! ```
//!
//! Terms appear in canonical term order; inside a term `d` comes first, then
//! `b` symbols, then `J` symbols, by index. An exponent of 1 is omitted.
//!
//! The factored form pulls the rational content and the lowest power of `d`
//! out front, e.g. `1/4*d^-2*(2*d^2 + b2)`; it parses back to the same
//! polynomial.
//!
//! [`parse_poly`]: super::parse_poly

use std::fmt;

use num_traits::Zero;

use super::{Monomial, MultiPoly, VarKind};
use crate::scalar::Scalar;

fn text_factors(m: &Monomial) -> Vec<String> {
    let mut out = Vec::new();
    match m.d_exp() {
        0 => {}
        1 => out.push("d".to_string()),
        e => out.push(format!("d^{e}")),
    }
    for (v, e) in m.vars() {
        if e == 1 {
            out.push(v.to_string());
        } else {
            out.push(format!("{v}^{e}"));
        }
    }
    out
}

fn write_flat<F: Scalar>(p: &MultiPoly<F>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (i, (m, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let magnitude = c.abs();
        let factors = text_factors(m);
        if factors.is_empty() {
            write!(f, "{magnitude}")?;
        } else if magnitude.is_one() {
            f.write_str(&factors.join("*"))?;
        } else {
            write!(f, "{magnitude}*{}", factors.join("*"))?;
        }
    }
    Ok(())
}

impl<F: Scalar> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_flat(self, f)
    }
}

/// Content (with the sign of the first term), lowest `d` exponent, and the
/// primitive remainder.
fn factor_out<F: Scalar>(p: &MultiPoly<F>) -> (F, i32, MultiPoly<F>) {
    let mut content = F::zero();
    for (_, c) in p.terms() {
        content = content.content_gcd(c);
    }
    if let Some((_, first)) = p.terms().next() {
        if first.is_negative() {
            content = -content;
        }
    }
    let dmin = p.terms().map(|(m, _)| m.d_exp()).min().unwrap_or(0);
    let inner = p.mul_monomial(&Monomial::d_pow(-dmin), &content.recip());
    (content, dmin, inner)
}

struct Flat<'a, F>(&'a MultiPoly<F>);

impl<F: Scalar> fmt::Display for Flat<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_flat(self.0, f)
    }
}

impl<F: Scalar> MultiPoly<F> {
    /// Content and lowest power of `d` pulled out front.
    pub fn render_factored(&self) -> String {
        if self.len() <= 1 {
            return self.to_string();
        }
        let (content, dmin, inner) = factor_out(self);
        let mut prefix = Vec::new();
        if content == -F::one() {
            prefix.push("-1".to_string());
        } else if !content.is_one() {
            prefix.push(content.to_string());
        }
        if dmin != 0 {
            prefix.push(if dmin == 1 {
                "d".to_string()
            } else {
                format!("d^{dmin}")
            });
        }
        if prefix.is_empty() {
            return inner.to_string();
        }
        format!("{}*({})", prefix.join("*"), Flat(&inner))
    }

    /// LaTeX in the factored layout, e.g.
    /// `\frac{1}{4}\frac{1}{d^{2}}\left(2 d^{2} + b_{2}\right)`.
    pub fn to_latex(&self) -> String {
        if self.len() <= 1 {
            return latex_flat(self);
        }
        let (content, dmin, inner) = factor_out(self);
        let mut out = String::new();
        if content == -F::one() {
            out.push('-');
        } else if !content.is_one() {
            out.push_str(&latex_scalar(&content));
        }
        match dmin {
            0 => {}
            e if e < 0 => out.push_str(&format!("\\frac{{1}}{{{}}}", latex_d(-e))),
            e => out.push_str(&latex_d(e)),
        }
        if out.is_empty() || out == "-" {
            return latex_flat(self);
        }
        out.push_str(&format!("\\left({}\\right)", latex_flat(&inner)));
        out
    }
}

fn latex_d(e: i32) -> String {
    if e == 1 {
        "d".to_string()
    } else {
        format!("d^{{{e}}}")
    }
}

fn latex_scalar<F: Scalar>(c: &F) -> String {
    let s = c.abs().to_string();
    let body = match s.split_once('/') {
        Some((n, d)) => format!("\\frac{{{n}}}{{{d}}}"),
        None => s,
    };
    if c.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}

fn latex_flat<F: Scalar>(p: &MultiPoly<F>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut factors = Vec::new();
        match m.d_exp() {
            0 => {}
            e if e < 0 => factors.push(format!("\\frac{{1}}{{{}}}", latex_d(-e))),
            e => factors.push(latex_d(e)),
        }
        for (v, e) in m.vars() {
            let base = match v.kind {
                VarKind::B => format!("b_{{{}}}", v.index),
                VarKind::J => format!("\\bar{{J}}_{{{}}}", v.index),
                VarKind::Aux => format!("t_{{{}}}", v.index),
            };
            factors.push(if e == 1 {
                base
            } else {
                format!("{base}^{{{e}}}")
            });
        }
        let magnitude = c.abs();
        if factors.is_empty() {
            out.push_str(&latex_scalar(&magnitude));
        } else {
            if !magnitude.is_one() {
                out.push_str(&latex_scalar(&magnitude));
            }
            out.push_str(&factors.join(" "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use crate::poly::parse_poly;
    use crate::Poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn flat_rendering() {
        assert_eq!(p("b2 + 2*d^2").to_string(), "b2 + 2*d^2");
        assert_eq!(p("-1/4*d^-2*b2 - 1/2").to_string(), "-1/4*d^-2*b2 - 1/2");
        assert_eq!(p("d*J3^2").to_string(), "d*J3^2");
    }

    #[test]
    fn factored_rendering_parses_back() {
        let q = p("1/4*d^-2*(2*d^2 + b2)");
        assert_eq!(q.render_factored(), "1/4*d^-2*(b2 + 2*d^2)");
        assert_eq!(p(&q.render_factored()), q);
        let r = p("-1/24*d^-4*(-4*d^4 - 3*b3*d + 6*b2^2)");
        assert_eq!(p(&r.render_factored()), r);
    }

    #[test]
    fn latex_layout() {
        let q = p("1/4*d^-2*(2*d^2 + b2)");
        assert_eq!(
            q.to_latex(),
            "\\frac{1}{4}\\frac{1}{d^{2}}\\left(b_{2} + 2d^{2}\\right)"
        );
        assert_eq!(p("J2^2 - 4").to_latex(), "-4 + \\bar{J}_{2}^{2}");
        assert_eq!(p("-3/2*J3").to_latex(), "-\\frac{3}{2}\\bar{J}_{3}");
    }
}
