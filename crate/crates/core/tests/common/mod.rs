//! Oracles and generators shared by the integration tests. Nothing here calls
//! the library's elimination or factoring code.

#![allow(dead_code)]

use concordia::group_ring::{rat, Exponent, LaurentPoly, Rational, RationalFunction};
use rand::Rng;

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<LaurentPoly>], rank: usize) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(rank);
    }
    let mut total = LaurentPoly::zero(rank);
    for j in 0..n {
        let minor: Vec<Vec<LaurentPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor, rank);
        total = if j % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

/// `−2p(u⁴+1) + (4p−1)u²` written out coefficient by coefficient.
pub fn g_formula(p: i64) -> LaurentPoly {
    LaurentPoly::from_int_terms(1, &[(&[4], -2 * p), (&[2], 4 * p - 1), (&[0], -2 * p)])
}

pub fn odd_primes(bound: i64) -> Vec<i64> {
    (3..=bound).filter(|&p| p % 2 == 1 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// A small random Laurent polynomial in `rank` variables.
pub fn random_poly<R: Rng>(rng: &mut R, rank: usize, max_terms: usize) -> LaurentPoly {
    let terms = rng.gen_range(0..=max_terms);
    LaurentPoly::from_terms(
        rank,
        (0..terms).map(|_| {
            let e = Exponent::new((0..rank).map(|_| rng.gen_range(-1..=2)).collect());
            (e, rat(rng.gen_range(-3..=3)))
        }),
    )
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, rank: usize) -> Vec<Vec<LaurentPoly>> {
    (0..rows).map(|_| (0..cols).map(|_| random_poly(rng, rank, 3)).collect()).collect()
}

pub fn to_rat(m: &[Vec<LaurentPoly>]) -> Vec<Vec<RationalFunction>> {
    m.iter().map(|r| r.iter().cloned().map(RationalFunction::from_poly).collect()).collect()
}

pub fn identity_rat(n: usize, rank: usize) -> Vec<Vec<RationalFunction>> {
    (0..n)
        .map(|i| {
            (0..n).map(|j| if i == j { RationalFunction::one(rank) } else { RationalFunction::zero(rank) }).collect()
        })
        .collect()
}

/// `[[a, c], [0, b]]`.
pub fn block_upper(
    a: &[Vec<LaurentPoly>],
    c: &[Vec<LaurentPoly>],
    b: &[Vec<LaurentPoly>],
    rank: usize,
) -> Vec<Vec<LaurentPoly>> {
    let (n1, n2) = (a.len(), b.len());
    let mut out = Vec::new();
    for i in 0..n1 {
        let mut row = a[i].clone();
        row.extend(c[i].iter().cloned());
        out.push(row);
    }
    for row_b in b.iter().take(n2) {
        let mut row = vec![LaurentPoly::zero(rank); n1];
        row.extend(row_b.iter().cloned());
        out.push(row);
    }
    out
}

/// Inclusion of the first `a` coordinates into `a + c`.
pub fn inclusion(a: usize, c: usize, rank: usize) -> Vec<Vec<RationalFunction>> {
    (0..a + c)
        .map(|i| {
            (0..a).map(|j| if i == j { RationalFunction::one(rank) } else { RationalFunction::zero(rank) }).collect()
        })
        .collect()
}

/// Projection of `a + c` onto its last `c` coordinates.
pub fn projection(a: usize, c: usize, rank: usize) -> Vec<Vec<RationalFunction>> {
    (0..c)
        .map(|i| {
            (0..a + c)
                .map(|j| if j == a + i { RationalFunction::one(rank) } else { RationalFunction::zero(rank) })
                .collect()
        })
        .collect()
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
