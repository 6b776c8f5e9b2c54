use std::fmt;

use super::poly::write_monomial;
use super::{Exponent, LaurentPoly, Rational};

/// A unit `±f` of `Z[F]`, `f ∈ F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialUnit {
    negative: bool,
    exponent: Exponent,
}

impl MonomialUnit {
    pub fn new(negative: bool, exponent: Exponent) -> Self {
        MonomialUnit { negative, exponent }
    }

    pub fn positive(exponent: Exponent) -> Self {
        Self::new(false, exponent)
    }

    /// The constant `-1` (when `negative`) or `+1` in rank `rank`.
    pub fn constant(rank: usize, negative: bool) -> Self {
        Self::new(negative, Exponent::zero(rank))
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, false)
    }

    pub fn rank(&self) -> usize {
        self.exponent.rank()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn sign(&self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn exponent(&self) -> &Exponent {
        &self.exponent
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.exponent.is_zero()
    }

    pub fn mul(&self, other: &MonomialUnit) -> MonomialUnit {
        MonomialUnit { negative: self.negative ^ other.negative, exponent: self.exponent.add(&other.exponent) }
    }

    pub fn inverse(&self) -> MonomialUnit {
        MonomialUnit { negative: self.negative, exponent: self.exponent.neg() }
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::monomial(Rational::from_integer(self.sign().into()), self.exponent.clone())
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> UnitDisplay<'a, S> {
        UnitDisplay { unit: self, names }
    }
}

pub struct UnitDisplay<'a, S> {
    unit: &'a MonomialUnit,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for UnitDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit.exponent.is_zero() {
            return f.write_str(if self.unit.negative { "-1" } else { "1" });
        }
        if self.unit.negative {
            f.write_str("-")?;
        }
        write_monomial(f, &self.unit.exponent, self.names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let a = MonomialUnit::new(true, Exponent::new(vec![1, -2]));
        let b = MonomialUnit::new(true, Exponent::new(vec![0, 5]));
        assert!(a.mul(&a.inverse()).is_one());
        assert_eq!(a.mul(&b).to_poly(), &a.to_poly() * &b.to_poly());
        assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn displays() {
        let names = ["s", "t"];
        assert_eq!(MonomialUnit::new(true, Exponent::new(vec![1, 2])).display(&names).to_string(), "-s*t^2");
        assert_eq!(MonomialUnit::constant(2, true).display(&names).to_string(), "-1");
    }
}
