//! C-complex Seifert pairings and multivariable Alexander polynomials.
//!
//! For an `m`-component link with C-complex linking data `A^ε` (one rational
//! matrix per push-off direction `ε ∈ {0,1}^m`) the pairing is
//! `β = Σ_ε (−1)^{|ε|} A^ε X^ε`, and `det β` recovers the Alexander polynomial
//! up to units. For `m ≤ 2` the result is checked against the Torres
//! condition; larger `m` is returned unnormalized.

use std::collections::BTreeMap;

use log::warn;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group_ring::{rat, Exponent, LaurentPoly, Rational};
use crate::linalg::{det_poly, PolyMatrix};

/// Per-direction linking matrices keyed by `ε` written as a 0/1 string,
/// character `j` being the push-off direction off the `j`-th surface.
pub type LinkingData = BTreeMap<String, Vec<Vec<Rational>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CComplexPairing {
    components: usize,
    matrix: PolyMatrix,
    variable_names: Vec<String>,
}

impl CComplexPairing {
    pub fn from_matrix(components: usize, matrix: PolyMatrix, variable_names: Vec<String>) -> Result<Self> {
        let g = matrix.len();
        if matrix.iter().any(|r| r.len() != g) {
            return Err(Error::Shape { degree: 0, message: "pairing matrix must be square".into() });
        }
        if variable_names.len() != components {
            return Err(Error::InvalidParameter(format!(
                "{} variable names for {components} components",
                variable_names.len()
            )));
        }
        if let Some(p) = matrix.iter().flatten().find(|p| p.rank() != components) {
            return Err(Error::RankMismatch { left: components, right: p.rank() });
        }
        Ok(CComplexPairing { components, matrix, variable_names })
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn generators(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn variable_names(&self) -> &[String] {
        &self.variable_names
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.matrix[row][col]
    }

    pub fn determinant(&self) -> Result<LaurentPoly> {
        det_poly(&self.matrix, self.components)
    }
}

/// Default variable names: `t` for knots, `s, t` for two-component links
/// (pattern meridian first), `x1 … xm` otherwise.
pub fn default_variable_names(components: usize) -> Vec<String> {
    match components {
        1 => vec!["t".into()],
        2 => vec!["s".into(), "t".into()],
        m => (1..=m).map(|i| format!("x{i}")).collect(),
    }
}

/// A link/pattern Alexander polynomial in `Z[s^±1, t^±1]` (or one variable
/// for knots) together with its winding number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternPolynomial {
    pub poly: LaurentPoly,
    pub winding_number: i64,
    /// Whether the Torres normalization check was applied.
    pub normalized: bool,
}

impl PatternPolynomial {
    /// Validates the Torres condition `|Δ(1,1)| = 1` for winding number one.
    pub fn new(poly: LaurentPoly, winding_number: i64) -> Result<Self> {
        if winding_number == 1 {
            let v = poly.eval_at_ones();
            if !v.abs().is_one() {
                return Err(Error::Torres { value: v.abs().to_string(), expected: "1".into() });
            }
        }
        Ok(PatternPolynomial { poly, winding_number, normalized: true })
    }
}

fn parse_epsilon(key: &str, m: usize) -> Result<Vec<bool>> {
    if key.len() != m || !key.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::Input(format!("push-off key `{key}` must be {m} characters of 0/1")));
    }
    Ok(key.chars().map(|c| c == '1').collect())
}

/// `β = Σ_ε (−1)^{|ε|} A^ε X^ε`. Missing directions count as zero matrices.
pub fn assemble_pairing(
    components: usize,
    linking: &LinkingData,
    variable_names: Vec<String>,
) -> Result<CComplexPairing> {
    if components == 0 {
        return Err(Error::InvalidParameter("a C-complex needs at least one component".into()));
    }
    let g = match linking.values().next() {
        Some(a) => a.len(),
        None => return Err(Error::Input("no linking matrices supplied".into())),
    };
    let mut matrix: PolyMatrix = vec![vec![LaurentPoly::zero(components); g]; g];
    for (key, a) in linking {
        let eps = parse_epsilon(key, components)?;
        if a.len() != g || a.iter().any(|r| r.len() != g) {
            return Err(Error::Shape { degree: 0, message: format!("linking matrix `{key}` must be {g}x{g}") });
        }
        let weight = eps.iter().filter(|&&e| e).count();
        let sign = if weight % 2 == 0 { rat(1) } else { rat(-1) };
        let mono = Exponent::new(eps.iter().map(|&e| e as i64).collect());
        for (i, row) in a.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    let term = LaurentPoly::monomial(&sign * x, mono.clone());
                    matrix[i][j] = &matrix[i][j] + &term;
                }
            }
        }
    }
    for (i, row) in matrix.iter().enumerate() {
        if let Some(j) = row.iter().position(|p| !p.is_integral()) {
            return Err(Error::NonIntegral { row: i, col: j });
        }
    }
    CComplexPairing::from_matrix(components, matrix, variable_names)
}

/// Alexander polynomial as the associate-normalized determinant of `β`.
///
/// For knots the Torres check is `|Δ(1)| = 1`; for two-component links it is
/// `|Δ(1,1)| = |linking_number|`.
pub fn alexander_from_pairing(pairing: &CComplexPairing, linking_number: i64) -> Result<PatternPolynomial> {
    let det = pairing.determinant()?;
    if det.is_zero() {
        return Err(Error::Degenerate("pairing determinant vanishes; not normalizable".into()));
    }
    let canonical = det.canonical()?;
    let m = pairing.components();
    if m > 2 {
        warn!("{m}-component pairing: determinant returned without Torres normalization");
        return Ok(PatternPolynomial { poly: canonical, winding_number: linking_number, normalized: false });
    }
    let expected = if m == 1 { Rational::one() } else { rat(linking_number.abs()) };
    let value = det.eval_at_ones().abs();
    if value != expected {
        return Err(Error::Torres { value: value.to_string(), expected: expected.to_string() });
    }
    Ok(PatternPolynomial { poly: canonical, winding_number: linking_number, normalized: true })
}

fn check_twists(n: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("Mazur pattern needs n ≥ 1, got {n}")));
    }
    Ok(())
}

fn st(terms: &[(&[i64], i64)]) -> LaurentPoly {
    LaurentPoly::from_int_terms(2, terms)
}

/// `[[n(1−t)(1−s), −s], [−t, −(s+t)]]` in variables `(s, t)`.
pub fn mazur_pairing(n: i64) -> Result<CComplexPairing> {
    check_twists(n)?;
    let matrix = vec![
        vec![st(&[(&[0, 0], n), (&[1, 0], -n), (&[0, 1], -n), (&[1, 1], n)]), st(&[(&[1, 0], -1)])],
        vec![st(&[(&[0, 1], -1)]), st(&[(&[1, 0], -1), (&[0, 1], -1)])],
    ];
    CComplexPairing::from_matrix(2, matrix, default_variable_names(2))
}

/// Linking data `A^ε` whose assembled pairing is [`mazur_pairing`]. Key `"10"`
/// pushes off the first surface (variable `s`).
pub fn mazur_linking_data(n: i64) -> Result<LinkingData> {
    check_twists(n)?;
    let m = |a: [[i64; 2]; 2]| a.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect::<Vec<Vec<_>>>();
    Ok(LinkingData::from([
        ("00".to_string(), m([[n, 0], [0, 0]])),
        ("10".to_string(), m([[n, 1], [0, 1]])),
        ("01".to_string(), m([[n, 0], [1, 1]])),
        ("11".to_string(), m([[n, 0], [0, 0]])),
    ]))
}

/// `n(s²t + st² − s² − t² + s + t) − (2n − 1)st`.
pub fn mazur_alexander(n: i64) -> Result<PatternPolynomial> {
    check_twists(n)?;
    let poly = st(&[
        (&[2, 1], n),
        (&[1, 2], n),
        (&[2, 0], -n),
        (&[0, 2], -n),
        (&[1, 0], n),
        (&[0, 1], n),
        (&[1, 1], -(2 * n - 1)),
    ]);
    PatternPolynomial::new(poly, 1)
}

/// Pattern of a local knot `J`: `Δ_J(s)`, constant in `t`.
pub fn local_pattern_alexander(delta_j: &LaurentPoly) -> Result<PatternPolynomial> {
    if delta_j.rank() != 1 {
        return Err(Error::InvalidParameter("knot polynomial must be univariate".into()));
    }
    let at_one = delta_j.eval_at_ones();
    if !at_one.abs().is_one() {
        return Err(Error::Torres { value: at_one.abs().to_string(), expected: "1".into() });
    }
    let poly =
        LaurentPoly::from_terms(2, delta_j.terms().map(|(e, c)| (Exponent::new(vec![e.entries()[0], 0]), c.clone())));
    PatternPolynomial::new(poly, 1)
}
