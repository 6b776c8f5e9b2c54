//! Fraction-free (Bareiss) elimination over Laurent polynomial rings, and
//! rank/determinant over `Q(F)` by clearing denominators row by row.

use crate::error::{Error, Result};
use crate::group_ring::{LaurentPoly, RationalFunction};

pub type PolyMatrix = Vec<Vec<LaurentPoly>>;
pub type RatMatrix = Vec<Vec<RationalFunction>>;

fn exact_div(num: &LaurentPoly, den: &LaurentPoly) -> LaurentPoly {
    num.div_exact_q(den).expect("rank checked by caller").expect("Bareiss step is an exact division")
}

/// Fraction-free row echelon form in place. Returns the pivot columns, which
/// are the greedy leftmost linearly independent columns, and the number of
/// row swaps performed.
fn echelon(m: &mut PolyMatrix, cols: usize, rank: usize) -> (Vec<usize>, usize) {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut prev = LaurentPoly::one(rank);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        if p != r {
            m.swap(p, r);
            swaps += 1;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = exact_div(&t, &prev);
            }
            m[i][c] = LaurentPoly::zero(rank);
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, swaps)
}

fn check_shape<T>(m: &[Vec<T>]) -> Result<usize> {
    let cols = m.first().map_or(0, |r| r.len());
    if let Some(i) = m.iter().position(|r| r.len() != cols) {
        return Err(Error::Shape { degree: 0, message: format!("row {i} has wrong length") });
    }
    Ok(cols)
}

fn matrix_rank(m: &[Vec<LaurentPoly>]) -> usize {
    m.iter().flatten().next().map_or(1, |p| p.rank())
}

/// Determinant over the Laurent ring by Bareiss elimination.
pub fn det_poly(m: &[Vec<LaurentPoly>], ring_rank: usize) -> Result<LaurentPoly> {
    let n = m.len();
    let cols = check_shape(m)?;
    if cols != n {
        return Err(Error::Shape { degree: 0, message: format!("{n}x{cols} matrix is not square") });
    }
    if n == 0 {
        return Ok(LaurentPoly::one(ring_rank));
    }
    if let Some(p) = m.iter().flatten().find(|p| p.rank() != ring_rank) {
        return Err(Error::RankMismatch { left: ring_rank, right: p.rank() });
    }
    let mut work = m.to_vec();
    let (pivots, swaps) = echelon(&mut work, n, ring_rank);
    if pivots.len() < n {
        return Ok(LaurentPoly::zero(ring_rank));
    }
    let d = work[n - 1][n - 1].clone();
    Ok(if swaps % 2 == 1 { -d } else { d })
}

/// Pivot columns of a polynomial matrix (greedy leftmost independent set).
pub fn pivot_columns_poly(m: &[Vec<LaurentPoly>]) -> Result<Vec<usize>> {
    let cols = check_shape(m)?;
    let mut work = m.to_vec();
    Ok(echelon(&mut work, cols, matrix_rank(m)).0)
}

/// Multiplies each row by the product of its denominators. Returns the
/// polynomial matrix and the product of all row multipliers.
fn clear_denominators(m: &[Vec<RationalFunction>], ring_rank: usize) -> (PolyMatrix, LaurentPoly) {
    let mut total = LaurentPoly::one(ring_rank);
    let rows = m
        .iter()
        .map(|row| {
            let mut scale = LaurentPoly::one(ring_rank);
            for x in row {
                if !x.denominator().is_one() && !x.is_zero() {
                    scale = &scale * x.denominator();
                }
            }
            total = &total * &scale;
            row.iter()
                .map(|x| {
                    if x.is_zero() {
                        LaurentPoly::zero(ring_rank)
                    } else {
                        exact_div(&(&scale * x.numerator()), x.denominator())
                    }
                })
                .collect()
        })
        .collect();
    (rows, total)
}

pub fn det_rat(m: &[Vec<RationalFunction>], ring_rank: usize) -> Result<RationalFunction> {
    check_shape(m)?;
    let (poly, scale) = clear_denominators(m, ring_rank);
    RationalFunction::new(det_poly(&poly, ring_rank)?, scale)
}

pub fn pivot_columns_rat(m: &[Vec<RationalFunction>], ring_rank: usize) -> Result<Vec<usize>> {
    check_shape(m)?;
    let (poly, _) = clear_denominators(m, ring_rank);
    let cols = m.first().map_or(0, |r| r.len());
    let mut work = poly;
    Ok(echelon(&mut work, cols, ring_rank).0)
}

pub fn rank_rat(m: &[Vec<RationalFunction>], ring_rank: usize) -> Result<usize> {
    Ok(pivot_columns_rat(m, ring_rank)?.len())
}

/// Product of an `a×b` and a `b×c` matrix, with the column counts passed
/// explicitly so that empty matrices keep their shape.
pub fn mat_mul_rat(
    a: &[Vec<RationalFunction>],
    b: &[Vec<RationalFunction>],
    inner: usize,
    cols: usize,
    ring_rank: usize,
) -> Result<RatMatrix> {
    a.iter()
        .map(|row| {
            if row.len() != inner {
                return Err(Error::Shape { degree: 0, message: "inner dimension mismatch".into() });
            }
            (0..cols)
                .map(|j| {
                    let mut acc = RationalFunction::zero(ring_rank);
                    for (k, x) in row.iter().enumerate() {
                        let y = b
                            .get(k)
                            .and_then(|r| r.get(j))
                            .ok_or_else(|| Error::Shape { degree: 0, message: "inner dimension mismatch".into() })?;
                        if !x.is_zero() && !y.is_zero() {
                            acc = acc.try_add(&x.try_mul(y)?)?;
                        }
                    }
                    Ok(acc)
                })
                .collect()
        })
        .collect()
}

pub fn to_rat_matrix(m: &[Vec<LaurentPoly>]) -> RatMatrix {
    m.iter().map(|r| r.iter().cloned().map(RationalFunction::from_poly).collect()).collect()
}
