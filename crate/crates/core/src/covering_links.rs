//! Linking-number multisets of covering links.
//!
//! Components of a covering link are indexed combinatorially (deck group
//! elements, or lifts around a cycle) and only their pairwise linking numbers
//! are recorded.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteGroupSpec {
    /// `Z/order` with distinguished element `g` (as a residue).
    Cyclic { order: usize, g: usize },
    /// Multiplication table `table[a][b] = a·b` on `0..n`.
    Table { table: Vec<Vec<usize>>, g: usize },
}

impl FiniteGroupSpec {
    pub fn cyclic(order: usize, g: usize) -> Result<Self> {
        let spec = FiniteGroupSpec::Cyclic { order, g };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks closure, identity and inverses. Associativity is O(n³) and is
    /// left to [`FiniteGroupSpec::check_associative`].
    pub fn from_table(table: Vec<Vec<usize>>, g: usize) -> Result<Self> {
        let spec = FiniteGroupSpec::Table { table, g };
        spec.validate()?;
        Ok(spec)
    }

    pub fn order(&self) -> usize {
        match self {
            FiniteGroupSpec::Cyclic { order, .. } => *order,
            FiniteGroupSpec::Table { table, .. } => table.len(),
        }
    }

    pub fn distinguished(&self) -> usize {
        match self {
            FiniteGroupSpec::Cyclic { g, .. } | FiniteGroupSpec::Table { g, .. } => *g,
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            FiniteGroupSpec::Cyclic { order, .. } => (a + b) % order,
            FiniteGroupSpec::Table { table, .. } => table[a][b],
        }
    }

    pub fn identity(&self) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&e| (0..n).all(|a| self.mul(e, a) == a && self.mul(a, e) == a))
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        let e = self.identity()?;
        (0..self.order()).find(|&b| self.mul(a, b) == e && self.mul(b, a) == e)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let e = self.identity().expect("validated group");
        let mut x = a;
        let mut k = 1;
        while x != e {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn validate(&self) -> Result<()> {
        let n = self.order();
        if n < 2 {
            return Err(Error::InvalidGroup("group must have order at least 2".into()));
        }
        if let FiniteGroupSpec::Table { table, .. } = self {
            if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
                return Err(Error::InvalidGroup(format!("table must be {n}x{n} with entries below {n}")));
            }
        }
        let g = self.distinguished();
        if g >= n {
            return Err(Error::InvalidGroup(format!("distinguished element {g} out of range")));
        }
        let e = self.identity().ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        if let Some(a) = (0..n).find(|&a| self.inverse(a).is_none()) {
            return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
        }
        if g == e {
            return Err(Error::InvalidGroup("distinguished element is the identity".into()));
        }
        Ok(())
    }

    pub fn check_associative(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Multiset of pairwise linking numbers among `components` components.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinkingMultiset {
    components: usize,
    counts: BTreeMap<i64, usize>,
}

impl LinkingMultiset {
    pub fn new(components: usize) -> Self {
        LinkingMultiset { components, counts: BTreeMap::new() }
    }

    pub fn insert(&mut self, value: i64) {
        *self.counts.entry(value).or_insert(0) += 1;
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn counts(&self) -> &BTreeMap<i64, usize> {
        &self.counts
    }

    pub fn count(&self, value: i64) -> usize {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Holds one value per unordered pair of components.
    pub fn is_total(&self) -> bool {
        self.len() == self.components * self.components.saturating_sub(1) / 2
    }

    pub fn max(&self) -> Option<i64> {
        self.counts.keys().next_back().copied()
    }
}

/// Lifts of a knot in a spherical space form, one per deck group element.
///
/// `lk(h·K̃, h'·K̃)` is `n` when `h' ∈ {gh, g⁻¹h}`, or `2n` when `g` has order
/// two and `h' = gh`; all other pairs link zero.
pub fn spherical_cover_linking(group: &FiniteGroupSpec, n: i64) -> Result<LinkingMultiset> {
    if n < 0 {
        return Err(Error::InvalidParameter(format!("twist count must be non-negative, got {n}")));
    }
    let size = group.order();
    let g = group.distinguished();
    let g_inv = group.inverse(g).ok_or_else(|| Error::InvalidGroup("no inverse".into()))?;
    let involution = g == g_inv;
    let mut out = LinkingMultiset::new(size);
    for h in 0..size {
        for h2 in h + 1..size {
            let adjacent = h2 == group.mul(g, h) || h2 == group.mul(g_inv, h);
            let value = match (adjacent, involution) {
                (false, _) => 0,
                (true, false) => n,
                (true, true) => 2 * n,
            };
            out.insert(value);
        }
    }
    Ok(out)
}

/// `k` lifts around a cycle in one handlebody cover component. Adjacent
/// lifts link `n + dist` (`2n + dist` for `k = 2` with two-torsion),
/// non-adjacent ones link zero.
pub fn handlebody_cover_linking(k: usize, n: i64, two_torsion: bool, dist_correction: i64) -> Result<LinkingMultiset> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("cycle length must be at least 2, got {k}")));
    }
    if n < 0 {
        return Err(Error::InvalidParameter(format!("twist count must be non-negative, got {n}")));
    }
    if two_torsion && k != 2 {
        return Err(Error::InvalidParameter("two-torsion doubling applies only to k = 2".into()));
    }
    let adjacent_value = if two_torsion { 2 * n } else { n } + dist_correction;
    let mut out = LinkingMultiset::new(k);
    for i in 0..k {
        for j in i + 1..k {
            let gap = j - i;
            let adjacent = gap == 1 || gap == k - 1;
            out.insert(if adjacent { adjacent_value } else { 0 });
        }
    }
    Ok(out)
}

/// True when the multisets differ, so the knots are not almost-concordant.
pub fn linking_obstruction(a: &LinkingMultiset, b: &LinkingMultiset) -> bool {
    a != b
}
