//! The maps between Mayer coefficients `b_i` and cluster kernels `J_i`.
//!
//! The forward map runs a finite-size recursion in the auxiliary size `L`:
//!
//! ```text
//! J^L_r = (1/L) * ( S_r - [exp(L Σ_{i<r} J^L_i x^i)]_r )
//! S_r   = Σ_{q=0}^{r} [exp(L Σ_i b_i (x/2d)^i)]_q
//!             * 1/(r-q)! * (-1/(2(L-1)))^{r-q} * (L-2q)!/(L-2r)!
//! ```
//!
//! and takes `J_r = lim_{L→∞} J^L_r`. (The summation index `q` is called `p`
//! in the usual statement of the formula; it has nothing to do with the
//! dimer density `p`.) The inverse map re-runs the same recursion with the
//! unknown `b_r` as a scratch symbol, checks that the limit is linear in it
//! with coefficient `(2d)^-r`, and solves.
//!
//! Component `r` of either map only looks at inputs `1..=r`, and the
//! exponential sums are cut at index `r` accordingly.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Var, VarKind};
use crate::ring::Ring;
use crate::scalar::{factorial, Scalar};
use crate::series::{FormalVar, Series};
use crate::size::{falling_factorial, limit_with_context, LControlled, SizeRing};

/// Mayer coefficients `b_1..b_N` with `b_1 = d`.
#[derive(Clone, Debug, PartialEq)]
pub struct BSequence<F> {
    values: Vec<MultiPoly<F>>,
}

impl<F: Scalar> BSequence<F> {
    /// `values[i]` is `b_{i+1}`; the first entry must be exactly `d`.
    pub fn new(values: Vec<MultiPoly<F>>) -> Result<Self> {
        match values.first() {
            None => Err(Error::Usage("a b-sequence needs at least b_1".into())),
            Some(b1) if *b1 != MultiPoly::d() => {
                Err(Error::Usage(format!("b_1 must equal d, got {b1}")))
            }
            Some(_) => Ok(BSequence { values }),
        }
    }

    /// `b_1 = d` followed by the given `b_2, b_3, …`.
    pub fn from_tail(tail: impl IntoIterator<Item = MultiPoly<F>>) -> Self {
        let mut values = vec![MultiPoly::d()];
        values.extend(tail);
        BSequence { values }
    }

    /// `d, b2, b3, …, bN` as free symbols.
    pub fn symbolic(order: usize) -> Self {
        Self::from_tail((2..=order as u32).map(MultiPoly::b))
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `b_i`, 1-based.
    pub fn get(&self, i: usize) -> &MultiPoly<F> {
        &self.values[i - 1]
    }

    pub fn values(&self) -> &[MultiPoly<F>] {
        &self.values
    }

    pub fn truncated(&self, order: usize) -> Self {
        BSequence {
            values: self.values[..order.min(self.values.len())].to_vec(),
        }
    }

    /// Adds `delta` to `b_k` (negative controls). `k = 1` is rejected.
    pub fn perturbed(&self, k: usize, delta: &F) -> Result<Self> {
        if k < 2 || k > self.order() {
            return Err(Error::Usage(format!(
                "perturbation index must lie in 2..={}, got {k}",
                self.order()
            )));
        }
        let mut values = self.values.clone();
        values[k - 1] += &MultiPoly::constant(delta.clone());
        Ok(BSequence { values })
    }
}

/// Cluster kernels `J_1..J_N` with `J_1 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct JSequence<F> {
    values: Vec<MultiPoly<F>>,
}

impl<F: Scalar> JSequence<F> {
    /// `values[i]` is `J_{i+1}`; the first entry must be zero.
    pub fn new(values: Vec<MultiPoly<F>>) -> Result<Self> {
        match values.first() {
            None => Err(Error::Usage("a J-sequence needs at least J_1".into())),
            Some(j1) if !j1.is_zero() => Err(Error::Usage(format!("J_1 must be 0, got {j1}"))),
            Some(_) => Ok(JSequence { values }),
        }
    }

    pub fn from_tail(tail: impl IntoIterator<Item = MultiPoly<F>>) -> Self {
        let mut values = vec![MultiPoly::zero()];
        values.extend(tail);
        JSequence { values }
    }

    /// `0, J2, J3, …, JN` as free symbols.
    pub fn symbolic(order: usize) -> Self {
        Self::from_tail((2..=order as u32).map(MultiPoly::j))
    }

    pub fn zero(order: usize) -> Self {
        JSequence {
            values: vec![MultiPoly::zero(); order.max(1)],
        }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `J_i`, 1-based.
    pub fn get(&self, i: usize) -> &MultiPoly<F> {
        &self.values[i - 1]
    }

    pub fn values(&self) -> &[MultiPoly<F>] {
        &self.values
    }

    /// Adds `delta` to `J_k` (negative controls). `k = 1` is rejected.
    pub fn perturbed(&self, k: usize, delta: &F) -> Result<Self> {
        if k < 2 || k > self.order() {
            return Err(Error::Usage(format!(
                "perturbation index must lie in 2..={}, got {k}",
                self.order()
            )));
        }
        let mut values = self.values.clone();
        values[k - 1] += &MultiPoly::constant(delta.clone());
        Ok(JSequence { values })
    }
}

/// `(2d)^-r` as a polynomial.
fn inv_two_d_pow<F: Scalar>(r: usize) -> MultiPoly<F> {
    MultiPoly::d_pow(-(r as i32)).scale(&F::from_ratio(1, 2).powi(r as i32))
}

/// Weight of `[exp(...)]_q` inside `S_r`:
/// `(L-2q)!/(L-2r)! / (r-q)! * (-1/2)^(r-q) / (L-1)^(r-q)`.
fn s_weight<R: SizeRing>(r: usize, q: usize) -> Result<R> {
    let k = r - q;
    let c = R::Scalar::from_ratio(-1, 2).powi(k as i32) * factorial::<R::Scalar>(k).recip();
    let ff = falling_factorial::<R::Scalar>(r, q)?;
    let mut w = R::from_lpoly(&ff).scale(&c);
    for _ in 0..k {
        w = w.div_size_minus_one()?;
    }
    Ok(w)
}

fn assemble_s<R: SizeRing>(r: usize, b_exp: &[R]) -> Result<R> {
    let mut s = R::zero();
    for (q, e) in b_exp.iter().enumerate().take(r + 1) {
        if !e.is_zero() {
            s += &e.mul_ref(&s_weight::<R>(r, q)?);
        }
    }
    Ok(s)
}

/// `S_r` as a function of the symbolic size, computed directly from a
/// truncated exponential series.
pub fn s_r<F: Scalar>(r: usize, b: &BSequence<F>) -> Result<LControlled<F>> {
    if r > b.order() {
        return Err(Error::Usage(format!(
            "S_{r} needs b_1..b_{r}, sequence has order {}",
            b.order()
        )));
    }
    let size = LControlled::size();
    let exponent = Series::from_coeffs(
        FormalVar::X,
        r,
        std::iter::once(LControlled::zero())
            .chain((1..=r).map(|i| LControlled::lift(b.get(i) * &inv_two_d_pow(i)).mul_ref(&size))),
    );
    assemble_s(r, exponent.exp()?.coeffs())
}

/// The finite-size recursion for `J^L_1, J^L_2, …`, fed one `b_r` at a time.
///
/// Both exponentials are maintained incrementally with
/// `n e_n = Σ_{k=1..n} k t_k e_{n-k}`, which is valid because adding the
/// term `t_r x^r` to an exponent leaves all coefficients below `r` alone.
#[derive(Clone, Debug)]
pub struct FiniteSizeRecursion<R> {
    b_terms: Vec<R>,
    b_exp: Vec<R>,
    j_terms: Vec<R>,
    j_exp: Vec<R>,
    finite: Vec<R>,
}

impl<R: SizeRing> Default for FiniteSizeRecursion<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: SizeRing> FiniteSizeRecursion<R> {
    pub fn new() -> Self {
        FiniteSizeRecursion {
            b_terms: vec![R::zero()],
            b_exp: vec![R::one()],
            j_terms: vec![R::zero()],
            j_exp: vec![R::one()],
            finite: vec![R::zero()],
        }
    }

    /// Number of `b` values consumed so far.
    pub fn len(&self) -> usize {
        self.finite.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `J^L_1..J^L_r` computed so far.
    pub fn finite_values(&self) -> &[R] {
        &self.finite[1..]
    }

    fn exp_step(terms: &[R], exp: &[R], n: usize, upto: usize) -> R {
        let mut acc = R::zero();
        for k in 1..=upto {
            if !terms[k].is_zero() {
                let t = terms[k].scale(&R::Scalar::from_int(k as i64));
                acc += &t.mul_ref(&exp[n - k]);
            }
        }
        acc.scale(&R::Scalar::from_ratio(1, n as i64))
    }

    /// Feeds `b_r` (for the next `r`) and returns `J^L_r`.
    pub fn push(&mut self, b_r: MultiPoly<R::Scalar>) -> Result<&R> {
        let r = self.len() + 1;
        let size = R::from_lpoly(&crate::size::LPoly::size());

        self.b_terms
            .push(R::lift(&b_r * &inv_two_d_pow(r)).mul_ref(&size));
        let e_r = Self::exp_step(&self.b_terms, &self.b_exp, r, r);
        self.b_exp.push(e_r);

        let s = assemble_s(r, &self.b_exp)?;
        // Coefficient r of exp(L Σ_{i<r} J^L_i x^i): the k = r term is absent.
        let x = Self::exp_step(&self.j_terms, &self.j_exp, r, r - 1);
        let jl = (s - x.clone()).div_size()?;
        let u = jl.mul_ref(&size);
        self.j_exp.push(x + u.clone());
        self.j_terms.push(u);
        self.finite.push(jl);
        Ok(&self.finite[r])
    }

    /// Undoes the last [`push`](Self::push).
    pub fn pop(&mut self) {
        if self.is_empty() {
            return;
        }
        self.b_terms.pop();
        self.b_exp.pop();
        self.j_terms.pop();
        self.j_exp.pop();
        self.finite.pop();
    }
}

fn check_first_step<R: SizeRing>(jl1: &R) -> Result<()> {
    if jl1.is_zero() {
        Ok(())
    } else {
        Err(Error::Consistency(format!(
            "J^L_1 must vanish identically when b_1 = d, got {jl1:?}"
        )))
    }
}

/// The forward map: `J_r = lim_{L→∞} J^L_r(b)` for `r = 1..N`.
pub fn jbar_from_b<F: Scalar>(b: &BSequence<F>) -> Result<JSequence<F>> {
    let mut rec = FiniteSizeRecursion::<LControlled<F>>::new();
    check_first_step(rec.push(b.get(1).clone())?)?;
    let mut out = vec![MultiPoly::zero()];
    for r in 2..=b.order() {
        let jl = rec.push(b.get(r).clone())?;
        out.push(limit_with_context(jl, &format!(" at step r = {r}"))?);
    }
    JSequence::new(out)
}

/// The inverse map: solves the step-`r` relation for `b_r`, `r = 2..N`.
pub fn b_from_jbar<F: Scalar>(j: &JSequence<F>) -> Result<BSequence<F>> {
    if j.values()
        .iter()
        .any(|v| v.max_index(VarKind::Aux).is_some())
    {
        return Err(Error::Usage(
            "input J-sequence may not contain scratch symbols t_i".into(),
        ));
    }
    let mut rec = FiniteSizeRecursion::<LControlled<F>>::new();
    check_first_step(rec.push(MultiPoly::d())?)?;
    let mut out = vec![MultiPoly::d()];
    for r in 2..=j.order() {
        let unknown = Var::aux(r as u32);
        let jl = rec.push(MultiPoly::var(unknown))?;
        let lim = limit_with_context(jl, &format!(" at step r = {r}"))?;
        if lim.degree_in(unknown) > 1 {
            return Err(Error::Consistency(format!(
                "step {r} is not linear in b_{r}"
            )));
        }
        let diagonal = lim.coeff_of(unknown, 1);
        if diagonal != inv_two_d_pow(r) {
            return Err(Error::Consistency(format!(
                "step {r}: coefficient of b_{r} is {diagonal}, expected (2d)^-{r}"
            )));
        }
        let rest = lim.coeff_of(unknown, 0);
        let two_d_pow = MultiPoly::d_pow(r as i32).scale(&F::from_int(2).powi(r as i32));
        let b_r = &(j.get(r) - &rest) * &two_d_pow;
        rec.pop();
        rec.push(b_r.clone())?;
        out.push(b_r);
    }
    BSequence::new(out)
}

/// Rewrites a polynomial in `b` into one in `J` (or the reverse) by
/// substituting a computed sequence.
pub(crate) fn bindings<F: Scalar>(
    kind: VarKind,
    values: &[MultiPoly<F>],
) -> std::collections::BTreeMap<Var, MultiPoly<F>> {
    values
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, v)| {
            (
                Var {
                    kind,
                    index: i as u32 + 1,
                },
                v.clone(),
            )
        })
        .collect()
}
