//! The Mayer-side expression: `a'_k` from the Mayer coefficients `b_i`.
//!
//! The density relation `p = 2 Σ_n n b_n z^n` is reverted by iterating
//! `z ← p/(2 b_1) - Σ_{n≥2} (n b_n / b_1) z^n` from `z = 0`; the pressure is
//! `P(p) = Σ_n b_n z(p)^n`, the factor `F` is defined by
//! `z = p/(2 b_1) (1 + F)`, and
//!
//! ```text
//! Q_2 = (1/2)(2 (1-p) ln(1-p) + p) + P(p) - (p/2) ln(1 + F(p)).
//! ```
//!
//! `β` is fixed to 1 throughout.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expression_one::{a_sequence_from, ASequence};
use crate::poly::MultiPoly;
use crate::scalar::Scalar;
use crate::series::{FormalVar, Series};
use crate::transforms::BSequence;

type PSeries<F> = Series<MultiPoly<F>>;

/// `a'_1..a'_N`; same shape as the kernel-side sequence.
pub type APrimeSequence<F> = ASequence<F>;

/// `z(p)` and `P(p)` through `p^N`, `F(p)` as far as it is determined.
///
/// The `p^N` coefficient of `F` involves `b_{N+1}`, so `F` runs through `p^N`
/// only when the b-sequence is longer than `N`, otherwise through `p^(N-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MayerInversion<F> {
    order: usize,
    z_of_p: PSeries<F>,
    pressure: PSeries<F>,
    f_factor: PSeries<F>,
}

impl<F: Scalar> MayerInversion<F> {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn z_of_p(&self) -> &PSeries<F> {
        &self.z_of_p
    }

    pub fn pressure(&self) -> &PSeries<F> {
        &self.pressure
    }

    pub fn f_factor(&self) -> &PSeries<F> {
        &self.f_factor
    }
}

/// `Σ_{n=1}^{N} c_n b_n z^n` for a weight `c_n`.
fn mayer_sum<F: Scalar>(
    b: &BSequence<F>,
    z: &PSeries<F>,
    weight: impl Fn(usize) -> F,
) -> Result<PSeries<F>> {
    let order = z.order();
    let mut acc = Series::zero(FormalVar::P, order);
    let mut power = Series::one(FormalVar::P, order);
    for n in 1..=order.min(b.order()) {
        power = power.mul(z)?;
        acc = acc.add(&power.scale_ring(&b.get(n).scale(&weight(n))))?;
    }
    Ok(acc)
}

fn revert<F: Scalar>(b: &BSequence<F>, order: usize) -> Result<PSeries<F>> {
    let inv_b1 = b
        .get(1)
        .unit_inverse()
        .ok_or_else(|| Error::Consistency("b_1 is not invertible".into()))?;
    let leading = Series::monomial(FormalVar::P, order, 1, inv_b1.scale(&F::from_ratio(1, 2)));
    let mut z = Series::zero(FormalVar::P, order);
    for _ in 0..order {
        let mut correction = Series::zero(FormalVar::P, order);
        let mut power = z.clone();
        for n in 2..=order.min(b.order()) {
            power = power.mul(&z)?;
            let c = (b.get(n) * &inv_b1).scale(&F::from_int(n as i64));
            correction = correction.add(&power.scale_ring(&c))?;
        }
        z = leading.sub(&correction)?;
    }
    Ok(z)
}

/// Reverts the density relation through `p^N` and checks the result.
pub fn invert_mayer<F: Scalar>(b: &BSequence<F>, order: usize) -> Result<MayerInversion<F>> {
    if order < 1 {
        return Err(Error::Usage("order must be at least 1".into()));
    }
    // F needs z one order further than the public truncation.
    let z_ext = revert(b, order + 1)?;
    let density = mayer_sum(b, &z_ext, |n| F::from_int(2 * n as i64))?;
    if density != Series::monomial(FormalVar::P, order + 1, 1, MultiPoly::one()) {
        return Err(Error::Consistency(
            "reverted z(p) does not satisfy p = 2 Σ n b_n z^n".into(),
        ));
    }
    let two_b1 = b.get(1).scale(&F::from_int(2));
    let f_order = if b.order() > order { order } else { order - 1 };
    let f_factor = z_ext
        .shift_div(1)?
        .scale_ring(&two_b1)
        .sub(&Series::one(FormalVar::P, order))?
        .truncate(f_order)?;
    if !f_factor.coeff(0)?.is_zero() {
        return Err(Error::Consistency(
            "F(p) has a nonzero constant term".into(),
        ));
    }
    let z_of_p = z_ext.truncate(order)?;
    let pressure = pressure_series(b, &z_of_p)?;
    Ok(MayerInversion {
        order,
        z_of_p,
        pressure,
        f_factor,
    })
}

/// `P(p) = Σ b_n z(p)^n` through the order of `z`.
pub fn pressure_series<F: Scalar>(b: &BSequence<F>, z_of_p: &PSeries<F>) -> Result<PSeries<F>> {
    mayer_sum(b, z_of_p, |_| F::one())
}

/// `(1/2)(2 (1-p) ln(1-p) + p)` through `p^N`, rational coefficients.
fn entropy_part<F: Scalar>(order: usize) -> Result<PSeries<F>> {
    let p: PSeries<F> = Series::monomial(FormalVar::P, order, 1, MultiPoly::one());
    let one_minus_p = Series::one(FormalVar::P, order).sub(&p)?;
    let log = p.neg().log1p()?;
    one_minus_p
        .mul(&log)?
        .scale(&F::from_int(2))
        .add(&p)
        .map(|s| s.scale(&F::from_ratio(1, 2)))
}

/// `Q_2` from the Mayer side, through `p^N`.
pub fn q2_second<F: Scalar>(b: &BSequence<F>, order: usize) -> Result<PSeries<F>> {
    let inv = invert_mayer(b, order)?;
    let log_f = inv
        .f_factor
        .truncate(order - 1)?
        .log1p()?
        .shift_mul(1)
        .scale(&F::from_ratio(1, 2));
    entropy_part(order)?.add(&inv.pressure)?.sub(&log_f)
}

/// `a'_k` for `k = 1..N`; `a'_1 = 0` is checked, not assumed.
pub fn a_prime_coeffs<F: Scalar>(b: &BSequence<F>, order: usize) -> Result<APrimeSequence<F>> {
    if order < 2 {
        return Err(Error::Usage(format!(
            "order must be at least 2, got {order}"
        )));
    }
    if b.order() < order {
        return Err(Error::Usage(format!(
            "b-sequence has order {}, need {order}",
            b.order()
        )));
    }
    let q2 = q2_second(b, order)?;
    for k in 0..2 {
        if !q2.coeff(k)?.is_zero() {
            return Err(Error::Consistency(format!(
                "second expression has a nonzero p^{k} coefficient: {}",
                q2.coeff(k)?
            )));
        }
    }
    let mut values = vec![MultiPoly::zero()];
    values.extend(q2.into_coeffs().into_iter().skip(2));
    Ok(a_sequence_from(values))
}
