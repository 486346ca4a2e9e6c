//! Finite-order verdicts for the Catalan special case and the master claim.
//!
//! Every check here is an exact identity between polynomials truncated at
//! some order. A `Verified` verdict says nothing beyond that order; for the
//! conjectured statements ([`Claim::is_conjecture`]) it is evidence, not a
//! proof.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expression_one::a_coeffs;
use crate::expression_two::{a_prime_coeffs, invert_mayer};
use crate::poly::{MultiPoly, VarKind};
use crate::scalar::Scalar;
use crate::series::{FormalVar, Series};
use crate::transforms::{b_from_jbar, bindings, jbar_from_b, BSequence, JSequence};

type PSeries<F> = Series<MultiPoly<F>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    Master,
    CatalanPart1,
    CatalanPart2,
    CatalanPart3,
    EClosedForm,
    Triangularity,
}

impl Claim {
    pub const ALL: [Claim; 6] = [
        Claim::Master,
        Claim::CatalanPart1,
        Claim::CatalanPart2,
        Claim::CatalanPart3,
        Claim::EClosedForm,
        Claim::Triangularity,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Claim::Master => "master",
            Claim::CatalanPart1 => "catalan-part1",
            Claim::CatalanPart2 => "catalan-part2",
            Claim::CatalanPart3 => "catalan-part3",
            Claim::EClosedForm => "e-closed-form",
            Claim::Triangularity => "triangularity",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Claim> {
        Claim::ALL.into_iter().find(|c| c.tag() == tag)
    }

    /// Claims that are open statements, so a pass is only finite-order evidence.
    pub fn is_conjecture(self) -> bool {
        matches!(self, Claim::Master | Claim::CatalanPart3)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Verified,
    Refuted,
    Divergence,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Divergence => "divergence",
        }
    }
}

/// The first failing order and what failed there.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<F> {
    pub k: usize,
    pub residual: MultiPoly<F>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict<F> {
    claim: Claim,
    order: usize,
    status: Status,
    witness: Option<Witness<F>>,
    note: Option<String>,
}

impl<F: Scalar> Verdict<F> {
    pub fn verified(claim: Claim, order: usize) -> Self {
        Verdict {
            claim,
            order,
            status: Status::Verified,
            witness: None,
            note: None,
        }
    }

    pub fn refuted(claim: Claim, order: usize, witness: Witness<F>) -> Self {
        Verdict {
            claim,
            order,
            status: Status::Refuted,
            witness: Some(witness),
            note: None,
        }
    }

    pub fn divergence(claim: Claim, order: usize, note: String) -> Self {
        Verdict {
            claim,
            order,
            status: Status::Divergence,
            witness: None,
            note: Some(note),
        }
    }

    fn from_witness(claim: Claim, order: usize, witness: Option<Witness<F>>) -> Self {
        match witness {
            Some(w) => Self::refuted(claim, order, w),
            None => Self::verified(claim, order),
        }
    }

    pub fn claim(&self) -> Claim {
        self.claim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn witness(&self) -> Option<&Witness<F>> {
        self.witness.as_ref()
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }
}

/// First `k >= start` where `lhs[k-1] != rhs[k-1]`, with the difference.
pub fn first_residual<F: Scalar>(
    lhs: &[MultiPoly<F>],
    rhs: &[MultiPoly<F>],
    start: usize,
    detail: &str,
) -> Option<Witness<F>> {
    lhs.iter()
        .zip(rhs)
        .enumerate()
        .skip(start.saturating_sub(1))
        .find_map(|(i, (l, r))| {
            let residual = l - r;
            (!residual.is_zero()).then(|| Witness {
                k: i + 1,
                residual,
                detail: detail.to_string(),
            })
        })
}

fn series_residual<F: Scalar>(
    lhs: &PSeries<F>,
    rhs: &PSeries<F>,
    start: usize,
    detail: &str,
) -> Option<Witness<F>> {
    // series index k sits at slice position k, i.e. "1-based" k + 1
    first_residual(lhs.coeffs(), rhs.coeffs(), start + 1, detail).map(|mut w| {
        w.k -= 1;
        w
    })
}

/// Catalan numbers `C_0..C_N` and the matching Mayer sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalanData<F> {
    order: usize,
    catalans: Vec<F>,
    btilde: BSequence<F>,
}

impl<F: Scalar> CatalanData<F> {
    pub fn order(&self) -> usize {
        self.order
    }

    /// `C_0..C_N`.
    pub fn catalans(&self) -> &[F] {
        &self.catalans
    }

    pub fn btilde(&self) -> &BSequence<F> {
        &self.btilde
    }
}

/// `b̃_n = -(-1)^n 2^(n-1) C_n d^n / n`, built from `C_{n+1} = 2(2n+1)/(n+2) C_n`.
pub fn catalan_b<F: Scalar>(order: usize) -> Result<CatalanData<F>> {
    if order < 1 {
        return Err(Error::Usage("order must be at least 1".into()));
    }
    let mut catalans = vec![F::one()];
    for n in 0..order as i64 {
        let next = catalans[n as usize].clone() * F::from_ratio(2 * (2 * n + 1), n + 2);
        catalans.push(next);
    }
    let values = (1..=order)
        .map(|n| {
            let sign = if n % 2 == 0 { -1 } else { 1 };
            let c = catalans[n].clone() * F::from_int(sign) * F::from_int(2).powi(n as i32 - 1)
                / F::from_int(n as i64);
            MultiPoly::d_pow(n as i32).scale(&c)
        })
        .collect();
    Ok(CatalanData {
        order,
        catalans,
        btilde: BSequence::new(values)?,
    })
}

/// `(1 + c x)^(1/2)` through `x^N` by the binomial series.
pub fn sqrt_one_plus<F: Scalar>(c: &F, var: FormalVar, order: usize) -> PSeries<F> {
    let mut coeff = F::one();
    let mut coeffs = vec![MultiPoly::one()];
    for n in 1..=order as i64 {
        coeff = coeff * F::from_ratio(3 - 2 * n, 2 * n) * c.clone();
        coeffs.push(MultiPoly::constant(coeff.clone()));
    }
    Series::from_coeffs(var, order, coeffs)
}

/// `Σ_i b̃_i (x/2d)^i` through `x^N`; the powers of `d` cancel.
pub fn e_series<F: Scalar>(order: usize) -> Result<PSeries<F>> {
    let data = catalan_b::<F>(order)?;
    let mut coeffs = vec![MultiPoly::zero()];
    for i in 1..=order {
        let scale = F::from_int(2).powi(-(i as i32));
        let c = data
            .btilde
            .get(i)
            .mul_monomial(&crate::poly::Monomial::d_pow(-(i as i32)), &scale);
        if !c.is_d_free() {
            return Err(Error::Consistency(format!(
                "coefficient {i} of the exponent sum still depends on d: {c}"
            )));
        }
        coeffs.push(c);
    }
    Ok(Series::from_coeffs(FormalVar::X, order, coeffs))
}

/// `1/(1 + s) + ln(1 + s) - 1/2 - ln 2` with `s = (1 + 4x)^(1/2)`, written as
/// `(1/2)(1 + w/2)^(-1) + ln(1 + w/2) - 1/2` with `w = s - 1`.
pub fn e_closed_form<F: Scalar>(order: usize) -> Result<PSeries<F>> {
    let one = Series::one(FormalVar::X, order);
    let half_w = sqrt_one_plus(&F::from_int(4), FormalVar::X, order)
        .sub(&one)?
        .scale(&F::from_ratio(1, 2));
    one.add(&half_w)?
        .inverse()?
        .sub(&one)?
        .scale(&F::from_ratio(1, 2))
        .add(&half_w.log1p()?)
}

/// `Σ C_n x^n` against `2/(1 + (1 - 4x)^(1/2))`.
pub fn verify_catalan_gf<F: Scalar>(order: usize) -> Result<Verdict<F>> {
    let data = catalan_b::<F>(order)?;
    let lhs = Series::from_coeffs(
        FormalVar::X,
        order,
        data.catalans.iter().cloned().map(MultiPoly::constant),
    );
    let one = Series::one(FormalVar::X, order);
    let s = sqrt_one_plus(&F::from_int(-4), FormalVar::X, order);
    let rhs = one.add(&s)?.scale(&F::from_ratio(1, 2)).inverse()?;
    Ok(Verdict::from_witness(
        Claim::EClosedForm,
        order,
        series_residual(&lhs, &rhs, 0, "Catalan generating function"),
    ))
}

/// The exponent sum of the Catalan sequence against its closed form.
pub fn verify_e_closed_form<F: Scalar>(order: usize) -> Result<Verdict<F>> {
    let lhs = e_series::<F>(order)?;
    let rhs = e_closed_form::<F>(order)?;
    Ok(Verdict::from_witness(
        Claim::EClosedForm,
        order,
        series_residual(&lhs, &rhs, 0, "exponent sum closed form"),
    ))
}

/// Part 1: vanishing kernels give `a_k = 0`. `perturb` adds `delta` to `J_k`.
pub fn verify_catalan_part1<F: Scalar>(
    order: usize,
    perturb: Option<(usize, F)>,
) -> Result<Verdict<F>> {
    let mut j = JSequence::zero(order);
    if let Some((k, delta)) = perturb {
        j = j.perturbed(k, &delta)?;
    }
    let a = a_coeffs(&j, order)?;
    let zeros = vec![MultiPoly::zero(); order];
    Ok(Verdict::from_witness(
        Claim::CatalanPart1,
        order,
        first_residual(a.values(), &zeros, 2, "a_k at vanishing kernels"),
    ))
}

/// Part 2: `a'_k(b̃) = 0`, together with the closed forms
/// `z = p/(2d(1-p)^2)`, `P = -p/2 - ln(1-p)` and `1 + F = (1-p)^-2`.
/// `perturb` adds `delta` to `b̃_k`.
pub fn verify_catalan_part2<F: Scalar>(
    order: usize,
    perturb: Option<(usize, F)>,
) -> Result<Verdict<F>> {
    if order < 2 {
        return Err(Error::Usage(format!(
            "order must be at least 2, got {order}"
        )));
    }
    let mut b = catalan_b::<F>(order)?.btilde;
    if let Some((k, delta)) = &perturb {
        b = b.perturbed(*k, delta)?;
    }
    let a = a_prime_coeffs(&b, order)?;
    let zeros = vec![MultiPoly::zero(); order];
    if let Some(w) = first_residual(a.values(), &zeros, 2, "a'_k at the Catalan sequence") {
        return Ok(Verdict::refuted(Claim::CatalanPart2, order, w));
    }

    // F through p^N needs one more coefficient
    let mut longer = catalan_b::<F>(order + 1)?.btilde;
    if let Some((k, delta)) = &perturb {
        longer = longer.perturbed(*k, delta)?;
    }
    let inv = invert_mayer(&longer, order)?;
    let half_d_inv = MultiPoly::d_pow(-1).scale(&F::from_ratio(1, 2));
    let z = Series::from_coeffs(
        FormalVar::P,
        order,
        (0..=order).map(|n| half_d_inv.scale(&F::from_int(n as i64))),
    );
    let pressure = Series::from_coeffs(
        FormalVar::P,
        order,
        (0..=order).map(|n| match n {
            0 => MultiPoly::zero(),
            1 => MultiPoly::constant(F::from_ratio(1, 2)),
            n => MultiPoly::constant(F::from_ratio(1, n as i64)),
        }),
    );
    let f_factor = Series::from_coeffs(
        FormalVar::P,
        order,
        (0..=order).map(|n| match n {
            0 => MultiPoly::zero(),
            n => MultiPoly::integer(n as i64 + 1),
        }),
    );
    let witness = series_residual(inv.z_of_p(), &z, 1, "z(p) closed form")
        .or_else(|| series_residual(inv.pressure(), &pressure, 1, "P(p) closed form"))
        .or_else(|| series_residual(inv.f_factor(), &f_factor, 1, "1 + F(p) closed form"));
    Ok(Verdict::from_witness(Claim::CatalanPart2, order, witness))
}

/// Parts 1 and 2 together; the first failing part decides.
pub fn verify_catalan<F: Scalar>(order: usize) -> Result<Vec<Verdict<F>>> {
    Ok(vec![
        verify_catalan_part1(order, None)?,
        verify_catalan_part2(order, None)?,
    ])
}

/// Part 3: `J_r(b̃) = 0` for `r <= R`. Finite-order evidence only.
pub fn verify_part3<F: Scalar>(order: usize, perturb: Option<(usize, F)>) -> Result<Verdict<F>> {
    if order < 2 {
        return Err(Error::Usage(format!(
            "order must be at least 2, got {order}"
        )));
    }
    let mut b = catalan_b::<F>(order)?.btilde;
    if let Some((k, delta)) = perturb {
        b = b.perturbed(k, &delta)?;
    }
    let j = match jbar_from_b(&b) {
        Ok(j) => j,
        Err(e @ Error::Divergence { .. }) => {
            return Ok(Verdict::divergence(
                Claim::CatalanPart3,
                order,
                e.to_string(),
            ))
        }
        Err(e) => return Err(e),
    };
    let zeros = vec![MultiPoly::zero(); order];
    Ok(Verdict::from_witness(
        Claim::CatalanPart3,
        order,
        first_residual(j.values(), &zeros, 2, "J_r at the Catalan sequence"),
    ))
}

/// The master identity through order `N`, checked along both composition
/// routes:
///
/// * `a_k(J(b)) = a'_k(b)` with `J = f(b)` substituted into the `a_k`;
/// * `a'_k(b(J)) = a_k(J)` with `b = f⁻¹(J)` substituted into the `a'_k`,
///   whose result must also be free of `d`.
///
/// `perturb` adds `delta` to `b_k` on the Mayer side only.
pub fn verify_master<F: Scalar>(order: usize, perturb: Option<(usize, F)>) -> Result<Verdict<F>> {
    if order < 2 {
        return Err(Error::Usage(format!(
            "order must be at least 2, got {order}"
        )));
    }
    let b_sym = BSequence::<F>::symbolic(order);
    let j_sym = JSequence::<F>::symbolic(order);
    let mayer_input = match perturb {
        Some((k, delta)) => b_sym.perturbed(k, &delta)?,
        None => b_sym.clone(),
    };

    let a = a_coeffs(&j_sym, order)?;
    let a_prime = a_prime_coeffs(&mayer_input, order)?;

    let j_of_b = jbar_from_b(&b_sym)?;
    let j_binding = bindings(VarKind::J, j_of_b.values());
    let a_of_b: Vec<_> = a
        .values()
        .iter()
        .map(|p| p.substitute(&j_binding))
        .collect();
    if let Some(w) = first_residual(&a_of_b, a_prime.values(), 2, "a_k(J(b)) - a'_k(b)") {
        return Ok(Verdict::refuted(Claim::Master, order, w));
    }

    let b_of_j = b_from_jbar(&j_sym)?;
    let b_binding = bindings(VarKind::B, b_of_j.values());
    let a_prime_of_j: Vec<_> = a_prime
        .values()
        .iter()
        .map(|p| p.substitute(&b_binding))
        .collect();
    if let Some(k) = a_prime_of_j.iter().position(|p| !p.is_d_free()) {
        let residual = &a_prime_of_j[k] - a.get(k + 1);
        return Ok(Verdict::refuted(
            Claim::Master,
            order,
            Witness {
                k: k + 1,
                residual,
                detail: "a'_k(b(J)) depends on d".into(),
            },
        ));
    }
    Ok(Verdict::from_witness(
        Claim::Master,
        order,
        first_residual(&a_prime_of_j, a.values(), 2, "a'_k(b(J)) - a_k(J)"),
    ))
}

/// Component `i` (1-based) may only involve symbols of `kind` with index `<= i`.
pub fn triangular_witness<F: Scalar>(
    name: &str,
    outputs: &[MultiPoly<F>],
    kind: VarKind,
) -> Option<Witness<F>> {
    outputs.iter().enumerate().find_map(|(i, p)| {
        let k = i + 1;
        let top = p.max_index(kind)?;
        (top as usize > k).then(|| Witness {
            k,
            residual: p.clone(),
            detail: format!("{name}: component {k} involves index {top}"),
        })
    })
}

/// Triangularity of `f`, `f⁻¹`, `g` and `h` at order `N`.
pub fn triangularity_check<F: Scalar>(order: usize) -> Result<Verdict<F>> {
    if order < 2 {
        return Err(Error::Usage(format!(
            "order must be at least 2, got {order}"
        )));
    }
    let b = BSequence::<F>::symbolic(order);
    let j = JSequence::<F>::symbolic(order);
    let f = jbar_from_b(&b)?;
    let f_inv = b_from_jbar(&j)?;
    let g = a_coeffs(&j, order)?;
    let h = a_prime_coeffs(&b, order)?;
    let witness = triangular_witness("f", f.values(), VarKind::B)
        .or_else(|| triangular_witness("f^-1", f_inv.values(), VarKind::J))
        .or_else(|| triangular_witness("g", g.values(), VarKind::J))
        .or_else(|| triangular_witness("h", h.values(), VarKind::B));
    Ok(Verdict::from_witness(Claim::Triangularity, order, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::{Poly, Rational};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn catalan_table() {
        let data = catalan_b::<Rational>(5).unwrap();
        let c: Vec<_> = [1, 1, 2, 5, 14, 42].iter().map(|&n| r(n, 1)).collect();
        assert_eq!(data.catalans(), &c[..]);
        assert_eq!(data.btilde().get(1), &p("d"));
        assert_eq!(data.btilde().get(2), &p("-2*d^2"));
        assert_eq!(data.btilde().get(3), &p("20/3*d^3"));
        assert_eq!(data.btilde().get(5), &p("672/5*d^5"));
    }

    #[test]
    fn exponent_sum_low_orders() {
        let e = e_series::<Rational>(3).unwrap();
        assert_eq!(e.coeff(1).unwrap(), &p("1/2"));
        // b̃_2 / (2d)^2 = -2d^2 / 4d^2
        assert_eq!(e.coeff(2).unwrap(), &p("-1/2"));
    }

    #[test]
    fn binomial_square_root() {
        let s = sqrt_one_plus(&r(4, 1), FormalVar::X, 6);
        let squared = s.mul(&s).unwrap();
        let expected = Series::from_coeffs(
            FormalVar::X,
            6,
            [Poly::one(), Poly::integer(4)]
                .into_iter()
                .chain(std::iter::repeat_n(Poly::zero(), 5)),
        );
        assert_eq!(squared, expected);
    }

    #[test]
    fn part3_low_orders() {
        assert!(verify_part3::<Rational>(4, None).unwrap().is_verified());
        let bad = verify_part3(4, Some((3, r(1, 1)))).unwrap();
        assert_eq!(bad.status(), Status::Refuted);
        assert_eq!(bad.witness().unwrap().k, 3);
    }

    #[test]
    fn master_low_orders() {
        assert!(verify_master::<Rational>(2, None).unwrap().is_verified());
        assert!(verify_master::<Rational>(3, None).unwrap().is_verified());
    }

    #[test]
    fn residual_location() {
        let lhs = vec![p("0"), p("J2"), p("J3")];
        let rhs = vec![p("0"), p("J2"), p("J3 + 1")];
        let w = first_residual(&lhs, &rhs, 2, "x").unwrap();
        assert_eq!(w.k, 3);
        assert_eq!(w.residual, p("-1"));
        assert!(first_residual(&lhs, &lhs, 1, "x").is_none());
    }

    #[test]
    fn triangular_negative_control() {
        let outputs = vec![p("0"), p("b2 + b3"), p("b3")];
        let w = triangular_witness("synthetic", &outputs, VarKind::B).unwrap();
        assert_eq!(w.k, 2);
    }

    #[test]
    fn claim_tags_round_trip() {
        for c in Claim::ALL {
            assert_eq!(Claim::from_tag(c.tag()), Some(c));
        }
    }
}
