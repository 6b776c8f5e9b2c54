//! Elements of `Q(F)^× / N(F)` in factored form, and the parity
//! homomorphisms `Φ_g`.
//!
//! `N(F)` is generated by nonzero rationals, group elements and norms
//! `q·q̄`. A class is stored as a map from canonical irreducible factors to
//! signed multiplicities; scalars and monomials are dropped on entry.
//! [`TorsionClass::canonicalize`] additionally quotients by norms.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::group_ring::{factor_bounded_univariate, LaurentPoly, MAX_FACTOR_DEGREE};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TorsionClass {
    factors: BTreeMap<LaurentPoly, i64>,
}

/// Primitive part in canonical associate form. `None` for units and scalars.
pub fn canonical_key(p: &LaurentPoly) -> Result<Option<LaurentPoly>> {
    if p.is_zero() {
        return Err(Error::ZeroInput { context: "torsion factor" });
    }
    let key = p.primitive_part().canonical()?;
    Ok((!key.is_one()).then_some(key))
}

/// `Some(is_irreducible)` when the bounded factorizer can decide it.
fn verify_irreducible(key: &LaurentPoly) -> Option<bool> {
    let degree = crate::group_ring::factor::effective_degree(key)?;
    if degree > MAX_FACTOR_DEGREE || !key.is_integral() {
        return None;
    }
    factor_bounded_univariate(key).ok().map(|f| f.is_irreducible_over_q())
}

/// Builds a class from factored input.
///
/// Scalars and monomial units are discarded and repeated canonical keys are
/// merged. Unless `trust_irreducible` is set, every factor that is univariate
/// of degree at most four is checked with the bounded factorizer.
pub fn make_class(input: &[(LaurentPoly, i64)], trust_irreducible: bool) -> Result<TorsionClass> {
    let mut class = TorsionClass::trivial();
    for (p, m) in input {
        let Some(key) = canonical_key(p)? else { continue };
        if !trust_irreducible && verify_irreducible(&key) == Some(false) {
            return Err(Error::Reducible { poly: key.to_string() });
        }
        class.add(key, *m);
    }
    Ok(class)
}

impl TorsionClass {
    pub fn trivial() -> Self {
        TorsionClass::default()
    }

    /// Class of a single factor, already known to be irreducible.
    pub fn of_irreducible(p: &LaurentPoly) -> Result<Self> {
        make_class(&[(p.clone(), 1)], true)
    }

    fn add(&mut self, key: LaurentPoly, m: i64) {
        if m == 0 {
            return;
        }
        let entry = self.factors.entry(key.clone()).or_insert(0);
        *entry += m;
        if *entry == 0 {
            self.factors.remove(&key);
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = (&LaurentPoly, i64)> {
        self.factors.iter().map(|(k, m)| (k, *m))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Stored multiplicity of the canonical key of `p` (before canonicalizing).
    pub fn multiplicity(&self, p: &LaurentPoly) -> Result<i64> {
        Ok(match canonical_key(p)? {
            Some(k) => self.factors.get(&k).copied().unwrap_or(0),
            None => 0,
        })
    }

    /// Group operation; `invert_other` multiplies by the inverse instead.
    pub fn mul(&self, other: &TorsionClass, invert_other: bool) -> TorsionClass {
        let mut out = self.clone();
        for (k, m) in &other.factors {
            out.add(k.clone(), if invert_other { -m } else { *m });
        }
        out
    }

    pub fn inverse(&self) -> TorsionClass {
        TorsionClass::trivial().mul(self, true)
    }

    /// Reduces modulo norms: symmetric keys keep their multiplicity mod 2,
    /// and each non-symmetric pair `{p, p̄}` collapses onto its lex-smaller
    /// key with multiplicity `m_p − m_p̄`.
    pub fn canonicalize(&self) -> Result<TorsionClass> {
        let mut out = TorsionClass::trivial();
        let mut done: BTreeSet<LaurentPoly> = BTreeSet::new();
        for (key, &m) in &self.factors {
            if done.contains(key) {
                continue;
            }
            if key.is_symmetric()?.is_some() {
                out.add(key.clone(), m.rem_euclid(2));
                continue;
            }
            let partner = canonical_key(&key.involute())?.expect("non-unit key");
            let mp = self.factors.get(&partner).copied().unwrap_or(0);
            done.insert(partner.clone());
            if *key < partner {
                out.add(key.clone(), m - mp);
            } else {
                out.add(partner, mp - m);
            }
        }
        Ok(out)
    }

    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.canonicalize()?.is_empty())
    }

    /// `a ~ b` in `Q(F)^×/N(F)`.
    pub fn equivalent(&self, other: &TorsionClass) -> Result<bool> {
        self.mul(other, true).is_trivial()
    }

    /// The parity homomorphism `Φ_g` for irreducible symmetric `g`.
    pub fn parity(&self, g: &LaurentPoly) -> Result<u8> {
        let key = parity_key(g)?;
        let reduced = self.canonicalize()?;
        Ok(reduced.factors.get(&key).map_or(0, |m| m.rem_euclid(2) as u8))
    }
}

/// Validates `g` for use as a parity homomorphism and returns its key.
pub fn parity_key(g: &LaurentPoly) -> Result<LaurentPoly> {
    let key = canonical_key(g)?.ok_or_else(|| Error::InvalidParameter("parity homomorphism of a unit".into()))?;
    if key.is_symmetric()?.is_none() {
        return Err(Error::NotSymmetric { poly: key.to_string() });
    }
    if verify_irreducible(&key) == Some(false) {
        return Err(Error::Reducible { poly: key.to_string() });
    }
    Ok(key)
}

/// `Φ_g(c)`; see [`TorsionClass::parity`].
pub fn parity_hom(g: &LaurentPoly, c: &TorsionClass) -> Result<u8> {
    c.parity(g)
}
