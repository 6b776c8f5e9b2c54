//! Torsion of based acyclic chain complexes over `Q(F)`.
//!
//! Convention: for a complex `C_n → … → C_0` with boundary `d_k: C_k → C_{k−1}`
//! the torsion is `Π_k det(M_k)^{(−1)^k}`, where `M_k` is the square matrix in
//! `C_k` whose columns are the images under `d_{k+1}` of the chosen columns of
//! `C_{k+1}`, followed by the chosen basis vectors of `C_k`. Chosen columns are
//! the leftmost pivots of each boundary. For `0 → C_1 →[d] C_0 → 0` this gives
//! `det(d)`.

use crate::error::{Error, Result};
use crate::group_ring::{LaurentPoly, MonomialUnit, RationalFunction};
use crate::linalg::{det_rat, mat_mul_rat, pivot_columns_rat, rank_rat, RatMatrix};

#[derive(Clone, Debug)]
pub struct BasedChainComplex {
    ring_rank: usize,
    ranks: Vec<usize>,
    /// `boundaries[k − 1]` is `d_k`, of shape `ranks[k−1] × ranks[k]`.
    boundaries: Vec<RatMatrix>,
}

impl BasedChainComplex {
    pub fn new(ring_rank: usize, ranks: Vec<usize>, boundaries: Vec<RatMatrix>) -> Self {
        BasedChainComplex { ring_rank, ranks, boundaries }
    }

    /// The two-term complex `0 → Q(F)^n →[d] Q(F)^n → 0` in degrees 1, 0.
    pub fn two_term(ring_rank: usize, d: RatMatrix) -> Self {
        let n = d.len();
        Self::new(ring_rank, vec![n, n], vec![d])
    }

    pub fn ring_rank(&self) -> usize {
        self.ring_rank
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundaries(&self) -> &[RatMatrix] {
        &self.boundaries
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    /// `d_k` for `1 ≤ k ≤ n`.
    pub fn boundary(&self, k: usize) -> Option<&RatMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    fn validate_shapes(&self) -> Result<()> {
        let expected = self.ranks.len().saturating_sub(1);
        if self.boundaries.len() != expected {
            return Err(Error::Shape {
                degree: self.boundaries.len(),
                message: format!("{} boundaries for {} chain groups", self.boundaries.len(), self.ranks.len()),
            });
        }
        for (i, d) in self.boundaries.iter().enumerate() {
            let k = i + 1;
            let (rows, cols) = (self.ranks[k - 1], self.ranks[k]);
            if d.len() != rows || d.iter().any(|r| r.len() != cols) {
                return Err(Error::Shape { degree: k, message: format!("d{k} must be {rows}x{cols}") });
            }
            if let Some(x) = d.iter().flatten().find(|x| x.rank() != self.ring_rank) {
                return Err(Error::RankMismatch { left: self.ring_rank, right: x.rank() });
            }
        }
        Ok(())
    }

    /// Shape check plus `d∘d = 0`. Shape problems are errors; a nonzero
    /// composite yields `Ok(false)`.
    pub fn check_complex(&self) -> Result<bool> {
        self.validate_shapes()?;
        for k in 1..self.boundaries.len() {
            let lower = &self.boundaries[k - 1];
            let upper = &self.boundaries[k];
            let comp = mat_mul_rat(lower, upper, self.ranks[k], self.ranks[k + 1], self.ring_rank)?;
            if comp.iter().flatten().any(|x| !x.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn require_complex(&self) -> Result<()> {
        if !self.check_complex()? {
            let k = (1..self.boundaries.len())
                .find(|&k| {
                    mat_mul_rat(
                        &self.boundaries[k - 1],
                        &self.boundaries[k],
                        self.ranks[k],
                        self.ranks[k + 1],
                        self.ring_rank,
                    )
                    .map(|m| m.iter().flatten().any(|x| !x.is_zero()))
                    .unwrap_or(true)
                })
                .unwrap_or(1);
            return Err(Error::NotAComplex { degree: k });
        }
        Ok(())
    }

    fn boundary_ranks(&self) -> Result<Vec<usize>> {
        self.boundaries.iter().map(|d| rank_rat(d, self.ring_rank)).collect()
    }

    /// Betti numbers over `Q(F)`.
    pub fn homology_ranks(&self) -> Result<Vec<usize>> {
        self.require_complex()?;
        let r = self.boundary_ranks()?;
        Ok((0..self.ranks.len())
            .map(|k| {
                let out = if k == 0 { 0 } else { r[k - 1] };
                let inc = r.get(k).copied().unwrap_or(0);
                self.ranks[k] - out - inc
            })
            .collect())
    }

    pub fn is_acyclic(&self) -> Result<bool> {
        Ok(self.homology_ranks()?.iter().all(|&h| h == 0))
    }

    pub fn torsion(&self) -> Result<RationalFunction> {
        if !self.is_acyclic()? {
            return Err(Error::NotAcyclic);
        }
        let n = self.ranks.len();
        let mut chosen: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (k, d) in self.boundaries.iter().enumerate() {
            chosen[k + 1] = pivot_columns_rat(d, self.ring_rank)?;
        }
        let mut tau = RationalFunction::one(self.ring_rank);
        for k in 0..n {
            let size = self.ranks[k];
            let mut cols: Vec<Vec<RationalFunction>> = Vec::with_capacity(size);
            if k + 1 < n {
                let d = &self.boundaries[k];
                for &j in &chosen[k + 1] {
                    cols.push((0..size).map(|i| d[i][j].clone()).collect());
                }
            }
            for &j in &chosen[k] {
                let mut e = vec![RationalFunction::zero(self.ring_rank); size];
                e[j] = RationalFunction::one(self.ring_rank);
                cols.push(e);
            }
            if cols.len() != size {
                return Err(Error::SingularBlock { degree: k });
            }
            let block = transpose(&cols, size);
            let det = det_rat(&block, self.ring_rank)?;
            if det.is_zero() {
                return Err(Error::SingularBlock { degree: k });
            }
            tau = if k % 2 == 0 { tau.try_mul(&det)? } else { tau.try_div(&det)? };
        }
        Ok(tau)
    }
}

fn transpose(cols: &[Vec<RationalFunction>], rows: usize) -> RatMatrix {
    (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Twisted chain complex of the one-vertex torus `T² = S¹ × S¹` with the
/// two circle generators sent to `a` and `b`: ranks `(1, 2, 1)`,
/// `d₁ = (a − 1, b − 1)`, `d₂ = (1 − b, a − 1)ᵀ`.
pub fn torus_complex(a: &MonomialUnit, b: &MonomialUnit) -> Result<BasedChainComplex> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { left: a.rank(), right: b.rank() });
    }
    if a.is_one() && b.is_one() {
        return Err(Error::Degenerate("untwisted torus has nonzero homology".into()));
    }
    let rank = a.rank();
    let one = LaurentPoly::one(rank);
    let am1 = RationalFunction::from_poly(&a.to_poly() - &one);
    let bm1 = RationalFunction::from_poly(&b.to_poly() - &one);
    let d1 = vec![vec![am1.clone(), bm1.clone()]];
    let d2 = vec![vec![bm1.neg()], vec![am1]];
    Ok(BasedChainComplex::new(rank, vec![1, 2, 1], vec![d1, d2]))
}

/// Checks `τ(total) = ±τ(sub)·τ(quotient)` for a degreewise short exact
/// sequence `0 → sub →[i] total →[p] quotient → 0` of based acyclic complexes.
///
/// The basis of `total` need not be compatible with the sequence; the
/// comparison determinant between the given basis and `i(basis) ∪ lifts` is
/// computed and accounted for.
pub fn ses_multiplicativity_check(
    sub: &BasedChainComplex,
    total: &BasedChainComplex,
    quotient: &BasedChainComplex,
    inclusions: &[RatMatrix],
    projections: &[RatMatrix],
) -> Result<bool> {
    let rank = total.ring_rank;
    let n = total.ranks.len();
    if sub.ranks.len() != n || quotient.ranks.len() != n || inclusions.len() != n || projections.len() != n {
        return Err(Error::NotExact { degree: 0, message: "length mismatch".into() });
    }
    for c in [sub, total, quotient] {
        if !c.is_acyclic()? {
            return Err(Error::NotAcyclic);
        }
    }
    let mut tau = total.torsion()?;
    for k in 0..n {
        let (a, b, c) = (sub.ranks[k], total.ranks[k], quotient.ranks[k]);
        let i = &inclusions[k];
        let p = &projections[k];
        let shape_ok = b == a + c
            && i.len() == b
            && i.iter().all(|r| r.len() == a)
            && p.len() == c
            && p.iter().all(|r| r.len() == b);
        if !shape_ok {
            return Err(Error::NotExact { degree: k, message: "incompatible shapes".into() });
        }
        let pi = mat_mul_rat(p, i, b, a, rank)?;
        if pi.iter().flatten().any(|x| !x.is_zero()) {
            return Err(Error::NotExact { degree: k, message: "p∘i ≠ 0".into() });
        }
        if rank_rat(i, rank)? != a || rank_rat(p, rank)? != c {
            return Err(Error::NotExact {
                degree: k,
                message: "inclusion not injective or projection not surjective".into(),
            });
        }
        if k >= 1 {
            let lhs = mat_mul_rat(&total.boundaries[k - 1], i, b, a, rank)?;
            let rhs = mat_mul_rat(&inclusions[k - 1], &sub.boundaries[k - 1], sub.ranks[k - 1], a, rank)?;
            let lhs_q = mat_mul_rat(&quotient.boundaries[k - 1], p, c, b, rank)?;
            let rhs_q = mat_mul_rat(&projections[k - 1], &total.boundaries[k - 1], total.ranks[k - 1], b, rank)?;
            if lhs != rhs || lhs_q != rhs_q {
                return Err(Error::NotExact { degree: k, message: "maps do not commute with boundaries".into() });
            }
        }
        // det[i | e_T] / det(p restricted to T) compares the compatible basis
        // i(sub) ∪ lifts(quotient) with the given basis of total.
        let t = pivot_columns_rat(p, rank)?;
        let mut cols: Vec<Vec<RationalFunction>> = (0..a).map(|j| (0..b).map(|r| i[r][j].clone()).collect()).collect();
        for &j in &t {
            let mut e = vec![RationalFunction::zero(rank); b];
            e[j] = RationalFunction::one(rank);
            cols.push(e);
        }
        let p_t: RatMatrix = p.iter().map(|row| t.iter().map(|&j| row[j].clone()).collect()).collect();
        let change = det_rat(&transpose(&cols, b), rank)?.try_div(&det_rat(&p_t, rank)?)?;
        tau = if k % 2 == 0 { tau.try_div(&change)? } else { tau.try_mul(&change)? };
    }
    let expected = sub.torsion()?.try_mul(&quotient.torsion()?)?;
    Ok(tau.eq_up_to_sign(&expected))
}
