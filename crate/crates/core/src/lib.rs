//! Exact formal power series for the monomer-dimer free energy.
//!
//! The crate computes, in exact rational arithmetic, the two series
//! expressions for the free-energy correction `Q_2 = Σ a_k p^k`: one built
//! from cluster-expansion kernels `J_i` ([`expression_one`]), one from the
//! Mayer coefficients `b_i` of the dimer gas ([`expression_two`]), together
//! with the maps between the two coefficient families ([`transforms`]) and
//! finite-order verifiers for their conjectured agreement ([`verification`]).
//!
//! Everything is generic over an exact scalar field (see [`Scalar`]); the
//! aliases below fix it to big rationals, which is what the pipelines use in
//! practice.

pub mod error;
pub mod expression_one;
pub mod expression_two;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod series;
pub mod size;
pub mod transforms;
pub mod verification;

pub use error::{Error, Result};
pub use poly::{parse_poly, Monomial, MultiPoly, Var, VarKind};
pub use ring::Ring;
pub use scalar::Scalar;
pub use series::{FormalVar, Series};
pub use size::{falling_factorial, limit_at_infinity, FixedSize, LControlled, LPoly, SizeRing};

/// Arbitrary-precision exact fraction.
pub type Rational = num_rational::BigRational;
/// Laurent polynomial in `d`, `b_i`, `J_i` over [`Rational`].
pub type Poly = MultiPoly<Rational>;
/// Controlled rational function of `L` over [`Poly`].
pub type LFrac = LControlled<Rational>;
/// Power series with [`Poly`] coefficients.
pub type PolySeries = Series<Poly>;
