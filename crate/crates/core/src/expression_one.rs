//! The kernel-side expression: `a_k` from the cluster kernels `J_i`.
//!
//! With `u = 2 Σ_i i α_i` the `α_k` solve
//!
//! ```text
//! α_k = J_k p^k (1 - u)^(-2k) (1 - u/p)^k
//! ```
//!
//! by plain sweeps from `α = 0`, and
//!
//! ```text
//! Q_2 = Σ α_i - Σ_{k≥2} u^k / k + (p/2) Σ_{k≥2} (u/p)^k / k
//! ```
//!
//! where both tails are `-log(1 - w) - w`. Since `J_1 = 0`, `α_1 = 0` and the
//! sums over `i` start at 2. Each sweep fixes at least one more order of `p`,
//! so `N` sweeps settle everything through `p^N`; one extra sweep is run
//! and must change nothing.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::Scalar;
use crate::series::{FormalVar, Series};
use crate::transforms::JSequence;

/// The stabilised `α_2..α_N` as series in `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaSystem<F> {
    order: usize,
    alphas: Vec<Series<MultiPoly<F>>>,
}

impl<F: Scalar> AlphaSystem<F> {
    pub fn order(&self) -> usize {
        self.order
    }

    /// `α_k` for `2 <= k <= N`.
    pub fn alpha(&self, k: usize) -> &Series<MultiPoly<F>> {
        &self.alphas[k - 2]
    }

    pub fn alphas(&self) -> &[Series<MultiPoly<F>>] {
        &self.alphas
    }

    /// `u = 2 Σ_i i α_i`.
    pub fn weighted_sum(&self) -> Result<Series<MultiPoly<F>>> {
        weighted_sum(&self.alphas, self.order)
    }
}

/// `a_1..a_N` of the kernel-side expression.
#[derive(Clone, Debug, PartialEq)]
pub struct ASequence<F> {
    values: Vec<MultiPoly<F>>,
}

impl<F: Scalar> ASequence<F> {
    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `a_k`, 1-based.
    pub fn get(&self, k: usize) -> &MultiPoly<F> {
        &self.values[k - 1]
    }

    pub fn values(&self) -> &[MultiPoly<F>] {
        &self.values
    }
}

fn weighted_sum<F: Scalar>(
    alphas: &[Series<MultiPoly<F>>],
    order: usize,
) -> Result<Series<MultiPoly<F>>> {
    let mut u = Series::zero(FormalVar::P, order);
    for (offset, alpha) in alphas.iter().enumerate() {
        let i = offset as i64 + 2;
        u = u.add(&alpha.scale(&F::from_int(2 * i)))?;
    }
    Ok(u)
}

fn sweep<F: Scalar>(
    j: &JSequence<F>,
    alphas: &[Series<MultiPoly<F>>],
    order: usize,
) -> Result<Vec<Series<MultiPoly<F>>>> {
    let one = Series::one(FormalVar::P, order);
    let u = weighted_sum(alphas, order)?;
    let one_minus_u = one.sub(&u)?;
    // u/p is only known through p^(N-1); every use below is multiplied by
    // p^k with k >= 2, so that is enough.
    let v = u.shift_div(1)?;
    let one_minus_v = Series::one(FormalVar::P, order - 1).sub(&v)?;
    // factor^k = (1 - u)^(-2k) (1 - u/p)^k, built up one k at a time
    let factor = one_minus_u
        .pow(-2)?
        .truncate(order - 1)?
        .mul(&one_minus_v)?;
    let mut power = factor.clone();
    let mut out = Vec::with_capacity(order - 1);
    for k in 2..=order {
        power = power.mul(&factor)?;
        let j_k = j.get(k);
        if j_k.is_zero() {
            out.push(Series::zero(FormalVar::P, order));
            continue;
        }
        out.push(power.shift_mul(k).truncate(order)?.scale_ring(j_k));
    }
    Ok(out)
}

/// Solves the `α` system through `p^N`.
pub fn alpha_fixed_point<F: Scalar>(j: &JSequence<F>, order: usize) -> Result<AlphaSystem<F>> {
    if order < 2 {
        return Err(Error::Usage(format!(
            "order must be at least 2, got {order}"
        )));
    }
    if j.order() < order {
        return Err(Error::Usage(format!(
            "J-sequence has order {}, need {order}",
            j.order()
        )));
    }
    let mut alphas = vec![Series::zero(FormalVar::P, order); order - 1];
    for _ in 0..order {
        alphas = sweep(j, &alphas, order)?;
    }
    let again = sweep(j, &alphas, order)?;
    if again != alphas {
        return Err(Error::Consistency(format!(
            "alpha iteration did not stabilise after {order} sweeps"
        )));
    }
    Ok(AlphaSystem { order, alphas })
}

/// `-log(1 - w) - w = Σ_{k≥2} w^k / k`.
fn log_tail<F: Scalar>(w: &Series<MultiPoly<F>>) -> Result<Series<MultiPoly<F>>> {
    w.neg().log1p()?.neg().sub(w)
}

/// `Q_2` as a series in `p` through `p^N`.
pub fn q2_first<F: Scalar>(system: &AlphaSystem<F>) -> Result<Series<MultiPoly<F>>> {
    let order = system.order;
    let mut q2 = Series::zero(FormalVar::P, order);
    for alpha in &system.alphas {
        q2 = q2.add(alpha)?;
    }
    let u = system.weighted_sum()?;
    q2 = q2.sub(&log_tail(&u)?)?;
    let v = u.shift_div(1)?;
    let third = log_tail(&v)?.shift_mul(1).scale(&F::from_ratio(1, 2));
    q2.add(&third)
}

/// `a_k` for `k = 1..N`; `a_1 = 0`.
pub fn a_coeffs<F: Scalar>(j: &JSequence<F>, order: usize) -> Result<ASequence<F>> {
    let q2 = q2_first(&alpha_fixed_point(j, order)?)?;
    for k in 0..2 {
        if !q2.coeff(k)?.is_zero() {
            return Err(Error::Consistency(format!(
                "Q_2 has a nonzero p^{k} coefficient: {}",
                q2.coeff(k)?
            )));
        }
    }
    let mut values = vec![MultiPoly::zero()];
    values.extend(q2.into_coeffs().into_iter().skip(2));
    Ok(ASequence { values })
}

impl<F: Scalar> From<ASequence<F>> for Vec<MultiPoly<F>> {
    fn from(a: ASequence<F>) -> Self {
        a.values
    }
}

pub(crate) fn a_sequence_from<F: Scalar>(values: Vec<MultiPoly<F>>) -> ASequence<F> {
    ASequence { values }
}
