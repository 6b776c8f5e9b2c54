//! Exhaustive factorization of univariate integer polynomials of degree at
//! most four.
//!
//! Linear candidates `a·x + b` range over `a | lc(f)`, `b | f(0)`. Quadratic
//! candidates `a·x² + b·x + c` range over `a | lc(f)`, `c | f(0)` and
//! `|b| ≤ ‖f‖₂ + |lc(f)|` (Mignotte's bound for the middle coefficient of a
//! quadratic factor). Every candidate considered is counted in the
//! certificate, whether or not a cheap evaluation filter rejected it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Exponent, LaurentPoly, MonomialUnit, Rational};
use crate::error::{Error, Result};

pub const MAX_FACTOR_DEGREE: usize = 4;

/// `f = scalar · unit · Π factorᵐ` with each factor primitive, irreducible in
/// `Z[x]` and with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub scalar: BigInt,
    pub unit: MonomialUnit,
    pub factors: Vec<(LaurentPoly, u32)>,
    /// Number of divisor candidates tested by the search.
    pub candidates_tested: u64,
}

impl Factorization {
    /// Irreducible in `Z[F]`: one factor, multiplicity one, content `±1`.
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1 && self.scalar.abs().is_one()
    }

    /// Irreducible up to rational scalars, i.e. in `Q[F]`.
    pub fn is_irreducible_over_q(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn expand(&self) -> LaurentPoly {
        let rank = self.unit.rank();
        let mut acc = self.unit.to_poly().scale(&Rational::from_integer(self.scalar.clone()));
        for (f, m) in &self.factors {
            acc = acc * f.pow(*m);
        }
        debug_assert_eq!(acc.rank(), rank);
        acc
    }
}

/// Which variable carries all the variation, and the dense coefficients
/// after the monomial shift. `None` variable means a single term.
pub(crate) struct UnivariateView {
    pub var: Option<usize>,
    pub shift: Exponent,
    pub coeffs: Vec<Rational>,
}

pub(crate) fn univariate_view(f: &LaurentPoly) -> Option<UnivariateView> {
    let (lo, hi) = f.exponent_box()?;
    let varying: Vec<usize> = (0..f.rank()).filter(|&i| lo[i] != hi[i]).collect();
    let shift = Exponent::new(lo.clone());
    match varying.as_slice() {
        [] => Some(UnivariateView { var: None, shift, coeffs: vec![f.trailing_term().unwrap().1.clone()] }),
        [j] => {
            let j = *j;
            let degree = (hi[j] - lo[j]) as usize;
            let mut coeffs = vec![Rational::zero(); degree + 1];
            for (e, c) in f.terms() {
                coeffs[(e.entries()[j] - lo[j]) as usize] = c.clone();
            }
            Some(UnivariateView { var: Some(j), shift, coeffs })
        }
        _ => None,
    }
}

/// Effective degree when `f` is univariate after a monomial shift.
pub(crate) fn effective_degree(f: &LaurentPoly) -> Option<usize> {
    univariate_view(f).map(|v| v.coeffs.len() - 1)
}

pub fn factor_bounded_univariate(f: &LaurentPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput { context: "factor_bounded_univariate" });
    }
    if !f.is_integral() {
        return Err(Error::Unfactorable("non-integral coefficients".into()));
    }
    let view = univariate_view(f).ok_or_else(|| Error::Unfactorable("more than one effective variable".into()))?;
    let degree = view.coeffs.len() - 1;
    if degree > MAX_FACTOR_DEGREE {
        return Err(Error::Unfactorable(format!("degree {degree} exceeds {MAX_FACTOR_DEGREE}")));
    }
    let dense: Vec<BigInt> = view.coeffs.iter().map(|c| c.to_integer()).collect();
    let content = dense.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if dense.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    let scalar = &sign * &content;
    let mut rest: Vec<BigInt> = dense.iter().map(|c| c / &scalar).collect();

    let mut tested = 0u64;
    let mut found: Vec<Vec<BigInt>> = Vec::new();
    while rest.len() > 1 {
        if let Some((factor, quotient)) = find_linear(&rest, &mut tested) {
            found.push(factor);
            rest = quotient;
            continue;
        }
        if rest.len() == 5 {
            if let Some((factor, quotient)) = find_quadratic(&rest, &mut tested) {
                found.push(factor);
                rest = quotient;
                continue;
            }
        }
        found.push(std::mem::take(&mut rest));
    }

    let rank = f.rank();
    let var = view.var.unwrap_or(0);
    let mut factors: Vec<(LaurentPoly, u32)> = Vec::new();
    for dense in found {
        let poly = LaurentPoly::from_terms(
            rank,
            dense
                .iter()
                .enumerate()
                .map(|(k, c)| (Exponent::basis(rank, var, k as i64), Rational::from_integer(c.clone()))),
        );
        match factors.iter_mut().find(|(p, _)| *p == poly) {
            Some((_, m)) => *m += 1,
            None => factors.push((poly, 1)),
        }
    }
    factors.sort();
    Ok(Factorization { scalar, unit: MonomialUnit::positive(view.shift), factors, candidates_tested: tested })
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn signed_divisors(n: &BigInt) -> Vec<BigInt> {
    positive_divisors(n).into_iter().flat_map(|d| [d.clone(), -d]).collect()
}

fn eval(p: &[BigInt], x: i64) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Cheap necessary condition: `g(x) | f(x)` at `x = ±1`, `2`.
fn passes_filter(f: &[BigInt], g: &[BigInt]) -> bool {
    [1i64, -1, 2].iter().all(|&x| {
        let gv = eval(g, x);
        let fv = eval(f, x);
        if gv.is_zero() {
            fv.is_zero()
        } else {
            (fv % gv).is_zero()
        }
    })
}

/// Exact dense division in `Z[x]` (coefficients low to high).
fn div_exact(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    if g.len() > f.len() {
        return None;
    }
    let mut rem = f.to_vec();
    let lead = g.last().unwrap();
    let mut q = vec![BigInt::zero(); f.len() - g.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &rem[k + g.len() - 1];
        let (qc, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (i, gc) in g.iter().enumerate() {
            rem[k + i] -= &qc * gc;
        }
        q[k] = qc;
    }
    rem.iter().all(Zero::is_zero).then_some(q)
}

fn find_linear(f: &[BigInt], tested: &mut u64) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let lead = f.last().unwrap();
    for a in positive_divisors(lead) {
        for b in signed_divisors(&f[0]) {
            *tested += 1;
            let g = [b.clone(), a.clone()];
            if !passes_filter(f, &g) {
                continue;
            }
            if b.gcd(&a) != BigInt::one() {
                continue;
            }
            if let Some(q) = div_exact(f, &g) {
                return Some((g.to_vec(), q));
            }
        }
    }
    None
}

fn find_quadratic(f: &[BigInt], tested: &mut u64) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let lead = f.last().unwrap();
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let mut norm = norm_sq.sqrt();
    if &norm * &norm < norm_sq {
        norm += 1;
    }
    let bound = (norm + lead.abs()).to_i64().expect("coefficient bound fits in i64");
    let small = |v: BigInt| v.to_i128().filter(|x| x.unsigned_abs() < 1 << 60);
    // f(1), f(−1), f(2) in machine integers when they fit.
    let fvals: Option<Vec<i128>> = [1i64, -1, 2].iter().map(|&x| small(eval(f, x))).collect();
    for a in positive_divisors(lead) {
        for c in signed_divisors(&f[0]) {
            let ac = small(a.clone()).zip(small(c.clone()));
            for b in -bound..=bound {
                *tested += 1;
                if let (Some(fv), Some((a, c))) = (&fvals, ac) {
                    let b = b as i128;
                    let gv = [a + b + c, a - b + c, 4 * a + 2 * b + c];
                    let divides = |f: i128, g: i128| if g == 0 { f == 0 } else { f % g == 0 };
                    if !(0..3).all(|i| divides(fv[i], gv[i])) {
                        continue;
                    }
                }
                let g = [c.clone(), BigInt::from(b), a.clone()];
                if !passes_filter(f, &g) {
                    continue;
                }
                if let Some(q) = div_exact(f, &g) {
                    return Some((g.to_vec(), q));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::parse_poly;

    fn u(text: &str) -> LaurentPoly {
        parse_poly(text, &["u"]).unwrap()
    }

    #[test]
    fn g3_is_irreducible_with_certificate() {
        let fact = factor_bounded_univariate(&u("-6*u^4+11*u^2-6")).unwrap();
        assert!(fact.is_irreducible());
        assert_eq!(fact.scalar, BigInt::from(-1));
        assert_eq!(fact.factors[0].0, u("6*u^4-11*u^2+6"));
        assert!(fact.candidates_tested > 0);
    }

    #[test]
    fn splits_into_quadratics() {
        let fact = factor_bounded_univariate(&u("2*u^4-5*u^2+2")).unwrap();
        assert_eq!(fact.factors, vec![(u("u^2-2"), 1), (u("2*u^2-1"), 1)]);
        assert_eq!(fact.expand(), u("2*u^4-5*u^2+2"));
    }

    #[test]
    fn splits_into_linears() {
        let fact = factor_bounded_univariate(&u("u^2-1")).unwrap();
        assert_eq!(fact.factors, vec![(u("u-1"), 1), (u("u+1"), 1)]);
    }

    #[test]
    fn repeated_factors_and_content() {
        let f = u("3*u^-2*(u-1)^2*(u^2+u+1)");
        let fact = factor_bounded_univariate(&f).unwrap();
        assert_eq!(fact.scalar, BigInt::from(3));
        assert_eq!(fact.factors, vec![(u("u-1"), 2), (u("u^2+u+1"), 1)]);
        assert_eq!(fact.expand(), f);
        assert!(!fact.is_irreducible());
    }

    #[test]
    fn other_variables_are_kept_in_place() {
        let f = parse_poly("v^3*(u^2-1)", &["u", "v"]).unwrap();
        let fact = factor_bounded_univariate(&f).unwrap();
        assert_eq!(fact.expand(), f);
        assert_eq!(fact.factors.len(), 2);
    }

    #[test]
    fn constants_have_no_factors() {
        let fact = factor_bounded_univariate(&u("-7*u^3")).unwrap();
        assert!(fact.factors.is_empty());
        assert_eq!(fact.expand(), u("-7*u^3"));
    }

    #[test]
    fn rejects_unsupported_input() {
        assert!(matches!(factor_bounded_univariate(&u("u^5+1")), Err(Error::Unfactorable(_))));
        assert!(matches!(
            factor_bounded_univariate(&parse_poly("s+t", &["s", "t"]).unwrap()),
            Err(Error::Unfactorable(_))
        ));
        assert!(matches!(factor_bounded_univariate(&u("1/2*u+1")), Err(Error::Unfactorable(_))));
    }

    #[test]
    fn divisor_lists() {
        let d: Vec<i64> = positive_divisors(&BigInt::from(12)).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }
}
