use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MonomialUnit, Rational};
use crate::error::{Error, Result};

/// An element of the free abelian group `F = Z^r`, written additively.
///
/// The derived ordering is lexicographic on the entries and serves as the
/// term order everywhere in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(Vec<i64>);

impl Exponent {
    pub fn new(entries: Vec<i64>) -> Self {
        Exponent(entries)
    }

    pub fn zero(rank: usize) -> Self {
        Exponent(vec![0; rank])
    }

    /// `k` times the `index`-th basis vector.
    pub fn basis(rank: usize, index: usize, k: i64) -> Self {
        let mut e = vec![0; rank];
        e[index] = k;
        Exponent(e)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.rank(), other.rank());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.rank(), other.rank());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Exponent {
        Exponent(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Exponent {
        Exponent(self.0.iter().map(|a| a * k).collect())
    }
}

/// A finitely supported map `F → Q`, i.e. an element of `Q[F]`.
///
/// No stored coefficient is zero, so structural equality is ring equality.
/// The derived `Ord` compares term maps lexicographically and is only used as
/// a deterministic tie-break between canonical forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Rational::one())
    }

    pub fn constant(rank: usize, c: Rational) -> Self {
        Self::monomial(c, Exponent::zero(rank))
    }

    pub fn monomial(c: Rational, e: Exponent) -> Self {
        let rank = e.rank();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { rank, terms }
    }

    /// The `index`-th generator of `F` as a polynomial.
    pub fn var(rank: usize, index: usize) -> Self {
        Self::monomial(Rational::one(), Exponent::basis(rank, index, 1))
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, summing repeats.
    ///
    /// Panics if an exponent has the wrong length.
    pub fn from_terms<I>(rank: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = LaurentPoly::zero(rank);
        for (e, c) in terms {
            assert_eq!(e.rank(), rank, "exponent rank mismatch");
            p.add_term(e, c);
        }
        p
    }

    /// Integer-coefficient convenience constructor used heavily in tests.
    pub fn from_int_terms(rank: usize, terms: &[(&[i64], i64)]) -> Self {
        Self::from_terms(
            rank,
            terms.iter().map(|(e, c)| (Exponent::new(e.to_vec()), Rational::from_integer((*c).into()))),
        )
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// `Some(c)` if the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `Some((c, e))` if the polynomial is a single term `c·e`.
    pub fn as_monomial(&self) -> Option<(Rational, Exponent)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some((c.clone(), e.clone()))
    }

    /// Lex-greatest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Lex-least term.
    pub fn trailing_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next()
    }

    fn check_rank(&self, other: &LaurentPoly) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut out = LaurentPoly::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.rank);
        }
        LaurentPoly { rank: self.rank, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    /// Multiplication by the group element `e`.
    pub fn shift(&self, e: &Exponent) -> LaurentPoly {
        LaurentPoly { rank: self.rank, terms: self.terms.iter().map(|(x, c)| (x.add(e), c.clone())).collect() }
    }

    pub fn mul_unit(&self, u: &MonomialUnit) -> LaurentPoly {
        let s = self.shift(u.exponent());
        if u.is_negative() {
            -s
        } else {
            s
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.rank);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The bar involution `Σ n_g g ↦ Σ n_g g⁻¹`.
    pub fn involute(&self) -> LaurentPoly {
        LaurentPoly { rank: self.rank, terms: self.terms.iter().map(|(e, c)| (e.neg(), c.clone())).collect() }
    }

    /// Ring homomorphism sending the `i`-th generator to `images[i]`.
    ///
    /// A constant `±1` image is a unit with zero exponent.
    pub fn specialize(&self, images: &[MonomialUnit]) -> Result<LaurentPoly> {
        if images.len() != self.rank {
            return Err(Error::MissingImage { expected: self.rank, got: images.len() });
        }
        let target = match images.first() {
            Some(u) => u.rank(),
            None => return Err(Error::MissingImage { expected: 1, got: 0 }),
        };
        if let Some(bad) = images.iter().find(|u| u.rank() != target) {
            return Err(Error::RankMismatch { left: target, right: bad.rank() });
        }
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut exp = Exponent::zero(target);
            let mut negative = false;
            for (k, img) in e.entries().iter().zip(images) {
                exp = exp.add(&img.exponent().scale(*k));
                negative ^= img.is_negative() && k.rem_euclid(2) == 1;
            }
            out.add_term(exp, if negative { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// Evaluates at a point of `(Q^×)^r`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.rank {
            return Err(Error::MissingImage { expected: self.rank, got: point.len() });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (k, x) in e.entries().iter().zip(point) {
                if *k < 0 && x.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                v *= num_traits::pow::Pow::pow(x, *k as i32);
            }
            total += v;
        }
        Ok(total)
    }

    /// Evaluation at `(1, …, 1)`, i.e. the coefficient sum.
    pub fn eval_at_ones(&self) -> Rational {
        self.terms.values().cloned().fold(Rational::zero(), |a, b| a + b)
    }

    /// Componentwise (min, max) exponents; `None` for the zero polynomial.
    pub fn exponent_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.entries().to_vec();
        let mut hi = lo.clone();
        for e in it {
            for (i, &x) in e.entries().iter().enumerate() {
                lo[i] = lo[i].min(x);
                hi[i] = hi[i].max(x);
            }
        }
        Some((lo, hi))
    }

    /// Positive rational `c` with `self / c` integral and primitive.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num, den)
    }

    pub fn primitive_part(&self) -> LaurentPoly {
        let c = self.content();
        self.scale(&c.recip())
    }

    /// Canonical representative of the associate class under `±F`.
    ///
    /// Each variable's minimum exponent is shifted to zero and the
    /// lex-greatest coefficient made positive. Returns `(canonical, unit)`
    /// with `self = unit · canonical`.
    pub fn normalize_associate(&self) -> Result<(LaurentPoly, MonomialUnit)> {
        let (lo, _) = self.exponent_box().ok_or(Error::ZeroInput { context: "normalize_associate" })?;
        let corner = Exponent::new(lo);
        let shifted = self.shift(&corner.neg());
        let negative = shifted.leading_term().unwrap().1.is_negative();
        let canonical = if negative { -shifted } else { shifted };
        Ok((canonical, MonomialUnit::new(negative, corner)))
    }

    pub fn canonical(&self) -> Result<LaurentPoly> {
        Ok(self.normalize_associate()?.0)
    }

    /// Exact division over `Q[F]`: `Some(q)` with `self = divisor · q`.
    pub(crate) fn div_exact_q(&self, divisor: &LaurentPoly) -> Result<Option<LaurentPoly>> {
        self.check_rank(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroInput { context: "divisor" });
        }
        if self.is_zero() {
            return Ok(Some(LaurentPoly::zero(self.rank)));
        }
        // Degrees in each variable are additive in a domain, so every
        // quotient exponent lies in this box. It also bounds the loop.
        let (flo, fhi) = self.exponent_box().unwrap();
        let (glo, ghi) = divisor.exponent_box().unwrap();
        let lo: Vec<i64> = flo.iter().zip(&glo).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = fhi.iter().zip(&ghi).map(|(a, b)| a - b).collect();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Ok(None);
        }
        let (gl_e, gl_c) = divisor.leading_term().unwrap();
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero(self.rank);
        while let Some((e, c)) = rem.leading_term() {
            let qe = e.sub(gl_e);
            let inside = qe.entries().iter().enumerate().all(|(i, &x)| lo[i] <= x && x <= hi[i]);
            if !inside {
                return Ok(None);
            }
            let qc = c / gl_c;
            for (de, dc) in &divisor.terms {
                rem.add_term(de.add(&qe), -(dc * &qc));
            }
            quotient.add_term(qe, qc);
        }
        Ok(Some(quotient))
    }

    /// Divisibility in the ring: `Some(q)` with `f = self · q`.
    ///
    /// When both `self` and `f` are integral the quotient must be integral
    /// too (divisibility in `Z[F]`); otherwise divisibility is over `Q[F]`.
    pub fn divides(&self, f: &LaurentPoly) -> Result<Option<LaurentPoly>> {
        if self.is_zero() {
            return Err(Error::ZeroInput { context: "divides" });
        }
        let q = f.div_exact_q(self)?;
        Ok(match q {
            Some(q) if self.is_integral() && f.is_integral() && !q.is_integral() => None,
            other => other,
        })
    }

    /// `Some(a)` with `self = a · involute(self)` if `self` is symmetric.
    pub fn is_symmetric(&self) -> Result<Option<MonomialUnit>> {
        if self.is_zero() {
            return Err(Error::ZeroInput { context: "is_symmetric" });
        }
        let (c1, u1) = self.normalize_associate()?;
        let (c2, u2) = self.involute().normalize_associate()?;
        Ok((c1 == c2).then(|| u1.mul(&u2.inverse())))
    }

    /// Borrowing display helper; variable names fix the slot order.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> PolyDisplay<'a, S> {
        PolyDisplay { poly: self, names }
    }

    pub fn to_string_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        self.display(names).to_string()
    }
}

pub struct PolyDisplay<'a, S> {
    poly: &'a LaurentPoly,
    names: &'a [S],
}

pub(crate) fn write_monomial<S: AsRef<str>>(f: &mut fmt::Formatter<'_>, e: &Exponent, names: &[S]) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.entries().iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        let name = names.get(i).map(|s| s.as_ref().to_string()).unwrap_or_else(|| format!("x{i}"));
        if k == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{k}")?;
        }
    }
    Ok(())
}

impl<S: AsRef<str>> fmt::Display for PolyDisplay<'_, S> {
    /// Terms in decreasing lexicographic order, `*` between factors and no
    /// spaces; the output re-parses with the same variable list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.poly.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            if e.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write_monomial(f, e, self.names)?;
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.rank).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            /// Panics on rank mismatch; use the `try_` form to handle it.
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$try(rhs).expect("Laurent polynomial rank mismatch")
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { rank: self.rank, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
