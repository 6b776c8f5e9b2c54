use std::fmt;

use super::{Exponent, LaurentPoly, Rational};
use crate::error::{Error, Result};

/// A formal quotient in `Q(F)`.
///
/// Fractions are not reduced to lowest terms; equality is decided by
/// cross-multiplication. Cheap exact simplifications (monomial or exactly
/// dividing denominators) are applied after each operation to limit growth.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.rank() != den.rank() {
            return Err(Error::RankMismatch { left: num.rank(), right: den.rank() });
        }
        Ok(RationalFunction { num, den }.tidy())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let rank = p.rank();
        RationalFunction { num: p, den: LaurentPoly::one(rank) }
    }

    pub fn zero(rank: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(rank))
    }

    pub fn one(rank: usize) -> Self {
        Self::from_poly(LaurentPoly::one(rank))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn tidy(self) -> Self {
        let rank = self.num.rank();
        if self.num.is_zero() {
            return Self::zero(rank);
        }
        if self.den.is_one() {
            return self;
        }
        if let Ok(Some(q)) = self.num.div_exact_q(&self.den) {
            return Self::from_poly(q);
        }
        self
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let num = self.num.try_mul(&other.den)?.try_add(&self.den.try_mul(&other.num)?)?;
        Self::new(num, self.den.try_mul(&other.den)?)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        Self::new(self.num.try_mul(&other.num)?, self.den.try_mul(&other.den)?)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn try_eq(&self, other: &Self) -> Result<bool> {
        Ok(self.num.try_mul(&other.den)? == other.num.try_mul(&self.den)?)
    }

    /// `Some((c, e))` if this equals the single term `c·e`, `c ∈ Q^×`.
    ///
    /// Such elements lie in the norm subgroup `N(F)`.
    pub fn monomial_ratio(&self) -> Option<(Rational, Exponent)> {
        self.num.div_exact_q(&self.den).ok().flatten().and_then(|q| q.as_monomial())
    }

    /// Equality up to a sign.
    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        self.try_eq(other).unwrap_or(false) || self.try_eq(&other.neg()).unwrap_or(false)
    }

    pub fn involute(&self) -> Self {
        RationalFunction { num: self.num.involute(), den: self.den.involute() }
    }

    pub fn to_string_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        if self.den.is_one() {
            self.num.to_string_with(names)
        } else {
            format!("({})/({})", self.num.to_string_with(names), self.den.to_string_with(names))
        }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.try_eq(other).unwrap_or(false)
    }
}

impl Eq for RationalFunction {}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
