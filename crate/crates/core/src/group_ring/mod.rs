//! Laurent polynomial rings `Z[F] ⊂ Q[F]` over a free abelian group `F` of
//! finite rank, the bar involution, monomial units, bounded factorization and
//! the fraction field `Q(F)`.
//!
//! Coefficients are arbitrary-precision rationals everywhere; integrality is
//! a predicate ([`LaurentPoly::is_integral`]) rather than a separate type.

pub(crate) mod factor;
mod parse;
mod poly;
mod ratfun;
mod unit;

pub use factor::{factor_bounded_univariate, Factorization, MAX_FACTOR_DEGREE};
pub use parse::{parse_monomial_unit, parse_poly, parse_ratfun};
pub use poly::{Exponent, LaurentPoly, PolyDisplay};
pub use ratfun::RationalFunction;
pub use unit::MonomialUnit;

pub type Rational = num_rational::BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
