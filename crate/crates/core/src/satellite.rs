//! Satellite torsion updates along the Mazur family.
//!
//! A satellite `P(K)` multiplies every base torsion `τ_ρ(K)` by the pattern
//! polynomial specialized at `s ↦ −1`, `t ↦ α(longitude)`. For the Mazur
//! pattern with longitude `u²` this is `g_p = −2p(u⁴+1)+(4p−1)u²`, and the
//! parity homomorphisms `Φ_{g_m}` separate the resulting classes.

use std::collections::{BTreeMap, BTreeSet};

use log::warn;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::alexander::{mazur_alexander, PatternPolynomial};
use crate::error::{Error, Result};
use crate::group_ring::{factor_bounded_univariate, rat, Exponent, LaurentPoly, MonomialUnit, RationalFunction};
use crate::torsion_quotient::{canonical_key, make_class, TorsionClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatelliteSpec {
    longitude_image: MonomialUnit,
    meridian_sign: i64,
}

impl SatelliteSpec {
    /// Longitude images must be positive with even exponent content. Content
    /// exactly 2 is the verified case; larger even content only warns.
    pub fn new(longitude_image: MonomialUnit) -> Result<Self> {
        if longitude_image.is_negative() {
            return Err(Error::InvalidParameter("longitude image must have sign +1".into()));
        }
        let content = longitude_image.exponent().entries().iter().fold(0i64, |g, &e| g.gcd(&e));
        if content == 0 {
            return Err(Error::InvalidParameter("longitude image must be a non-trivial group element".into()));
        }
        if content % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "longitude image has odd exponent content {content}; only even multiples are supported"
            )));
        }
        if content != 2 {
            warn!("longitude exponent content {content}: irreducibility of specialized patterns is unverified");
        }
        Ok(SatelliteSpec { longitude_image, meridian_sign: -1 })
    }

    /// `u²` in a free abelian group of rank `rank` (first generator `u`).
    pub fn doubled_generator(rank: usize) -> Self {
        SatelliteSpec { longitude_image: MonomialUnit::positive(Exponent::basis(rank, 0, 2)), meridian_sign: -1 }
    }

    pub fn longitude_image(&self) -> &MonomialUnit {
        &self.longitude_image
    }

    pub fn meridian_sign(&self) -> i64 {
        self.meridian_sign
    }

    pub fn rank(&self) -> usize {
        self.longitude_image.rank()
    }

    /// Whether this is the `[K] = 2u` case with proven irreducibility.
    pub fn is_verified_case(&self) -> bool {
        self.longitude_image.exponent().entries().iter().fold(0i64, |g, &e| g.gcd(&e)) == 2
    }
}

/// Character labels mapped to base torsion classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseTorsionSet {
    classes: BTreeMap<String, TorsionClass>,
}

impl BaseTorsionSet {
    pub fn new(classes: BTreeMap<String, TorsionClass>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::Input("base torsion set needs at least one character".into()));
        }
        Ok(BaseTorsionSet { classes })
    }

    /// One character with trivial torsion.
    pub fn trivial() -> Self {
        BaseTorsionSet { classes: BTreeMap::from([("rho".to_string(), TorsionClass::trivial())]) }
    }

    pub fn classes(&self) -> &BTreeMap<String, TorsionClass> {
        &self.classes
    }

    pub fn map(&self, f: impl Fn(&TorsionClass) -> Result<TorsionClass>) -> Result<BaseTorsionSet> {
        let classes = self.classes.iter().map(|(k, c)| Ok((k.clone(), f(c)?))).collect::<Result<_>>()?;
        Ok(BaseTorsionSet { classes })
    }

    /// Whether `g` (irreducible) divides the product of all base factors.
    fn divisible_by(&self, g: &LaurentPoly) -> Result<bool> {
        for class in self.classes.values() {
            for (key, _) in class.factors() {
                if key.rank() == g.rank() && g.divides(key)?.is_some() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// `Δ(meridian_sign, longitude_image)`.
pub fn specialize_pattern(delta: &PatternPolynomial, spec: &SatelliteSpec) -> Result<LaurentPoly> {
    let meridian = MonomialUnit::constant(spec.rank(), spec.meridian_sign < 0);
    delta.poly.specialize(&[meridian, spec.longitude_image.clone()])
}

/// `g_p`: the Mazur pattern `P_p` specialized along `spec`.
pub fn mazur_specialized(p: i64, spec: &SatelliteSpec) -> Result<LaurentPoly> {
    specialize_pattern(&mazur_alexander(p)?, spec)
}

fn product(factors: &[(LaurentPoly, i64)], rank: usize) -> Result<RationalFunction> {
    let mut num = LaurentPoly::one(rank);
    let mut den = LaurentPoly::one(rank);
    for (p, m) in factors {
        let k =
            u32::try_from(m.unsigned_abs()).map_err(|_| Error::InvalidParameter("multiplicity too large".into()))?;
        if *m >= 0 {
            num = num.try_mul(&p.pow(k))?;
        } else {
            den = den.try_mul(&p.pow(k))?;
        }
    }
    RationalFunction::new(num, den)
}

/// `base · [Δ_specialized]`. The class of the polynomial comes from the
/// bounded factorizer, or from `factor_hint` once its product is checked to
/// agree with the polynomial up to `c·f`.
pub fn satellite_class(
    base: &TorsionClass,
    specialized: &LaurentPoly,
    factor_hint: Option<&[(LaurentPoly, i64)]>,
) -> Result<TorsionClass> {
    if specialized.is_zero() {
        return Err(Error::ZeroInput { context: "specialized pattern polynomial" });
    }
    if specialized.constant_value().is_some() {
        return Ok(base.clone());
    }
    let class = match factor_bounded_univariate(specialized) {
        Ok(f) => {
            let items: Vec<_> = f.factors.iter().map(|(p, m)| (p.clone(), *m as i64)).collect();
            make_class(&items, true)?
        }
        Err(err) => {
            let Some(hint) = factor_hint else { return Err(err) };
            let expanded = product(hint, specialized.rank())?;
            let ratio = RationalFunction::from_poly(specialized.clone()).try_div(&expanded)?;
            if ratio.monomial_ratio().is_none() {
                return Err(Error::Unfactorable("factor hint does not multiply out to the polynomial".into()));
            }
            make_class(hint, false)?
        }
    };
    Ok(base.mul(&class, false))
}

/// Tying a local knot `J` into `K`: checks `|Δ_J(1)| = 1` and that `Δ_J(−1)`
/// is odd, then returns the base unchanged.
pub fn local_knot_action(base: &BaseTorsionSet, delta_j: &LaurentPoly) -> Result<BaseTorsionSet> {
    if delta_j.rank() != 1 {
        return Err(Error::InvalidParameter("knot polynomial must be univariate".into()));
    }
    let at_one = delta_j.eval_at_ones();
    if !at_one.abs().is_one() {
        return Err(Error::Torres { value: at_one.abs().to_string(), expected: "1".into() });
    }
    let at_minus = delta_j.evaluate(&[rat(-1)])?;
    if !at_minus.is_integer() || at_minus.is_zero() || at_minus.to_integer().is_even() {
        return Err(Error::InvalidParameter(format!("Δ_J(−1) = {at_minus} is not an odd integer")));
    }
    Ok(base.clone())
}

pub fn odd_primes_up_to(bound: u64) -> Vec<u64> {
    (3..=bound).step_by(2).filter(|&p| is_odd_prime(p)).collect()
}

pub fn is_odd_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Odd primes `p ≤ bound` with `g_p ∤ G`, for longitude `u²`.
pub fn admissible_primes(g: &LaurentPoly, bound: u64) -> Result<Vec<u64>> {
    admissible_primes_for(g, &SatelliteSpec::doubled_generator(g.rank()), bound)
}

pub fn admissible_primes_for(g: &LaurentPoly, spec: &SatelliteSpec, bound: u64) -> Result<Vec<u64>> {
    if g.is_zero() {
        return Err(Error::ZeroInput { context: "admissibility product" });
    }
    let mut out = Vec::new();
    for p in odd_primes_up_to(bound) {
        if mazur_specialized(p as i64, spec)?.divides(g)?.is_none() {
            out.push(p);
        }
    }
    Ok(out)
}

/// Whether `p` is an odd prime with `g_p` not dividing any base factor.
pub fn is_admissible(base: &BaseTorsionSet, p: u64, spec: &SatelliteSpec) -> Result<bool> {
    Ok(is_odd_prime(p) && !base.divisible_by(&mazur_specialized(p as i64, spec)?)?)
}

/// `I_p = { τ_ρ · [g_p] }`.
pub fn satellite_set(base: &BaseTorsionSet, p: u64, spec: &SatelliteSpec) -> Result<BaseTorsionSet> {
    let g = mazur_specialized(p as i64, spec)?;
    let hint = [(g.clone(), 1)];
    let hint = (!spec.is_verified_case()).then_some(&hint[..]);
    base.map(|c| satellite_class(c, &g, hint))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishCertificate {
    pub n: u64,
    pub m: u64,
    pub g_n: LaurentPoly,
    pub g_m: LaurentPoly,
    pub distinguishable: bool,
    /// `m` when `Φ_{g_m}` separates the two sets.
    pub separating_prime: Option<u64>,
    /// Per character: `Φ_{g_m}` on the elements of `I_n` and `I_m`.
    pub table: BTreeMap<String, [u8; 2]>,
}

fn parity_values(set: &BaseTorsionSet, g: &LaurentPoly) -> Result<BTreeMap<String, u8>> {
    set.classes().iter().map(|(k, c)| Ok((k.clone(), c.parity(g)?))).collect()
}

fn check_prime(base: &BaseTorsionSet, p: u64, spec: &SatelliteSpec) -> Result<()> {
    if !is_odd_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    if !is_admissible(base, p, spec)? {
        return Err(Error::Inadmissible { prime: p });
    }
    Ok(())
}

/// Separates `I_n` from `I_m` with `Φ_{g_m}`. Admissibility keeps the base
/// parity `Φ_{g_m}(τ_ρ)` fixed, so `I_n` reads the base values and `I_m`
/// reads them shifted by one; the sets differ when the value sets differ.
pub fn distinguish_family(
    base: &BaseTorsionSet,
    n: u64,
    m: u64,
    spec: &SatelliteSpec,
) -> Result<DistinguishCertificate> {
    check_prime(base, n, spec)?;
    check_prime(base, m, spec)?;
    let g_n = mazur_specialized(n as i64, spec)?;
    let g_m = mazur_specialized(m as i64, spec)?;
    let on_n = parity_values(&satellite_set(base, n, spec)?, &g_m)?;
    let on_m = parity_values(&satellite_set(base, m, spec)?, &g_m)?;
    let table: BTreeMap<_, _> = on_n.iter().map(|(k, a)| (k.clone(), [*a, on_m[k]])).collect();
    let set_n: BTreeSet<_> = on_n.values().collect();
    let set_m: BTreeSet<_> = on_m.values().collect();
    let distinguishable = n != m && set_n != set_m;
    Ok(DistinguishCertificate {
        n,
        m,
        g_n,
        g_m,
        distinguishable,
        separating_prime: distinguishable.then_some(m),
        table,
    })
}

/// Canonical key of `g_p`, used to compare family members.
pub fn family_key(p: u64, spec: &SatelliteSpec) -> Result<LaurentPoly> {
    Ok(canonical_key(&mazur_specialized(p as i64, spec)?)?.expect("g_p is not a unit"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::local_pattern_alexander;
    use crate::group_ring::parse_poly;

    fn u(text: &str) -> LaurentPoly {
        parse_poly(text, &["u"]).unwrap()
    }

    fn spec() -> SatelliteSpec {
        SatelliteSpec::doubled_generator(1)
    }

    fn g(p: i64) -> LaurentPoly {
        u(&format!("-{}*(u^4+1)+{}*u^2", 2 * p, 4 * p - 1))
    }

    fn base_with(p: &LaurentPoly) -> BaseTorsionSet {
        let c = TorsionClass::of_irreducible(p).unwrap();
        BaseTorsionSet::new(BTreeMap::from([("rho1".to_string(), c)])).unwrap()
    }

    #[test]
    fn mazur_specializes_to_g() {
        for p in [3, 5, 7, 11] {
            assert_eq!(mazur_specialized(p, &spec()).unwrap(), g(p));
        }
    }

    #[test]
    fn local_pattern_specializes_to_constant() {
        let trefoil = local_pattern_alexander(&parse_poly("t^2-t+1", &["t"]).unwrap()).unwrap();
        assert_eq!(specialize_pattern(&trefoil, &spec()).unwrap(), u("3"));
        let one = PatternPolynomial::new(LaurentPoly::one(2), 1).unwrap();
        assert!(specialize_pattern(&one, &spec()).unwrap().is_one());
    }

    #[test]
    fn wrong_variable_count() {
        let knot = PatternPolynomial { poly: u("u-1"), winding_number: 1, normalized: false };
        assert!(specialize_pattern(&knot, &spec()).is_err());
    }

    #[test]
    fn spec_validation() {
        let m = |t: &str| crate::group_ring::parse_monomial_unit(t, &["u"]).unwrap();
        assert!(SatelliteSpec::new(m("u^2")).unwrap().is_verified_case());
        assert!(!SatelliteSpec::new(m("u^4")).unwrap().is_verified_case());
        assert!(SatelliteSpec::new(m("u^3")).is_err());
        assert!(SatelliteSpec::new(m("1")).is_err());
        assert!(SatelliteSpec::new(m("-u^2")).is_err());
    }

    #[test]
    fn satellite_class_examples() {
        let trivial = TorsionClass::trivial();
        assert_eq!(satellite_class(&trivial, &g(3), None).unwrap(), TorsionClass::of_irreducible(&g(3)).unwrap());
        let b5 = TorsionClass::of_irreducible(&g(5)).unwrap();
        let c = satellite_class(&b5, &g(3), None).unwrap();
        assert_eq!(c.multiplicity(&g(3)).unwrap(), 1);
        assert_eq!(c.multiplicity(&g(5)).unwrap(), 1);
        assert_eq!(satellite_class(&b5, &u("3"), None).unwrap(), b5);
        assert!(matches!(satellite_class(&b5, &u("0"), None), Err(Error::ZeroInput { .. })));
    }

    #[test]
    fn hints_for_large_degree() {
        let m = crate::group_ring::parse_monomial_unit("u^4", &["u"]).unwrap();
        let s4 = SatelliteSpec::new(m).unwrap();
        let g4 = mazur_specialized(3, &s4).unwrap();
        assert!(satellite_class(&TorsionClass::trivial(), &g4, None).is_err());
        let c = satellite_class(&TorsionClass::trivial(), &g4, Some(&[(g4.clone(), 1)])).unwrap();
        assert_eq!(c.multiplicity(&g4).unwrap(), 1);
        assert!(satellite_class(&TorsionClass::trivial(), &g4, Some(&[(g(3), 1)])).is_err());
    }

    #[test]
    fn local_knots() {
        let base = base_with(&g(7));
        assert_eq!(local_knot_action(&base, &u("u^2-u+1")).unwrap(), base);
        assert_eq!(local_knot_action(&base, &u("1")).unwrap(), base);
        assert!(local_knot_action(&base, &u("u-1")).is_err());
        assert!(local_knot_action(&base, &u("1/2*u+1/2")).is_err());
    }

    #[test]
    fn admissible_examples() {
        assert_eq!(admissible_primes(&u("1"), 20).unwrap(), vec![3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(admissible_primes(&g(3), 10).unwrap(), vec![5, 7]);
        assert_eq!(admissible_primes(&(g(3) * g(7)), 10).unwrap(), vec![5]);
        assert!(admissible_primes(&u("0"), 10).is_err());
    }

    #[test]
    fn distinguish_examples() {
        let cert = distinguish_family(&BaseTorsionSet::trivial(), 3, 5, &spec()).unwrap();
        assert!(cert.distinguishable);
        assert_eq!(cert.separating_prime, Some(5));
        assert_eq!(cert.table["rho"], [0, 1]);
        let same = distinguish_family(&BaseTorsionSet::trivial(), 3, 3, &spec()).unwrap();
        assert!(!same.distinguishable);
        let cert = distinguish_family(&base_with(&g(7)), 3, 5, &spec()).unwrap();
        assert!(cert.distinguishable);
        // Base g_7 has Φ_{g_5} = 0, so the values match the trivial case.
        assert_eq!(cert.table["rho1"], [0, 1]);
    }

    #[test]
    fn distinguish_errors() {
        assert_eq!(distinguish_family(&base_with(&g(3)), 3, 5, &spec()).unwrap_err(), Error::Inadmissible { prime: 3 });
        assert!(distinguish_family(&BaseTorsionSet::trivial(), 9, 5, &spec()).is_err());
        assert!(distinguish_family(&BaseTorsionSet::trivial(), 2, 5, &spec()).is_err());
    }

    #[test]
    fn several_characters() {
        let mut classes = BTreeMap::new();
        classes.insert("a".to_string(), TorsionClass::trivial());
        classes.insert("b".to_string(), TorsionClass::of_irreducible(&g(11)).unwrap());
        let base = BaseTorsionSet::new(classes).unwrap();
        let cert = distinguish_family(&base, 3, 5, &spec()).unwrap();
        assert!(cert.distinguishable);
        assert_eq!(cert.table["a"], [0, 1]);
        assert_eq!(cert.table["b"], [0, 1]);
        // Base g_5 on one character makes 5 inadmissible.
        let mut classes = BTreeMap::new();
        classes.insert("a".to_string(), TorsionClass::trivial());
        classes.insert("b".to_string(), TorsionClass::of_irreducible(&g(5)).unwrap());
        let base = BaseTorsionSet::new(classes).unwrap();
        assert_eq!(distinguish_family(&base, 3, 5, &spec()).unwrap_err(), Error::Inadmissible { prime: 5 });
    }

    #[test]
    fn primes() {
        assert_eq!(odd_primes_up_to(30), vec![3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_odd_prime(1) && !is_odd_prime(2) && !is_odd_prime(9));
        assert_eq!(odd_primes_up_to(97).len(), 24);
    }
}
