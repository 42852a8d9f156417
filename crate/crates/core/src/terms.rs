//! ANOVA term sets and their full-grid frequency index sets.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::basis::BasisKind;
use crate::error::{Error, Result};

/// A subset `u` of the variables, stored as sorted zero-based indices.
///
/// Displayed one-based, e.g. `{1,2}` for the coupling of the first two variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Term(Vec<usize>);

impl Term {
    pub fn empty() -> Self {
        Term(Vec::new())
    }

    /// Builds a term from zero-based variable indices. Order does not matter;
    /// repeated indices are rejected.
    pub fn new(mut vars: Vec<usize>) -> Result<Self> {
        vars.sort_unstable();
        if vars.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTermSet(alloc::format!("repeated variable in {vars:?}")));
        }
        Ok(Term(vars))
    }

    /// Builds a term from one-based variable indices.
    pub fn from_one_based(vars: &[usize]) -> Result<Self> {
        if vars.contains(&0) {
            return Err(Error::InvalidTermSet("one-based variable index 0".into()));
        }
        Term::new(vars.iter().map(|v| v - 1).collect())
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, var: usize) -> bool {
        self.0.binary_search(&var).is_ok()
    }

    pub fn is_subset_of(&self, other: &Term) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// All subsets of this term, including the empty set and the term itself.
    pub fn subsets(&self) -> impl Iterator<Item = Term> + '_ {
        let n = self.0.len();
        (0u64..(1u64 << n)).map(move |mask| {
            Term(self.0.iter().enumerate().filter(|(j, _)| mask & (1 << j) != 0).map(|(_, &v)| v).collect())
        })
    }
}

impl Ord for Term {
    /// Order first, then lexicographic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (j, v) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("}")
    }
}

/// The active collection `U` of ANOVA terms over `d` variables.
///
/// Always contains the empty term. Terms are kept sorted by order and then
/// lexicographically, so the position of a term is reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermSet {
    dimension: usize,
    terms: Vec<Term>,
    superposition: Option<usize>,
}

impl TermSet {
    pub fn new(dimension: usize, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidTermSet("dimension must be positive".into()));
        }
        let mut all: Vec<Term> = terms.into_iter().collect();
        for t in &all {
            if let Some(&v) = t.vars().last() {
                if v >= dimension {
                    return Err(Error::VariableOutOfRange { index: v + 1, dimension });
                }
            }
        }
        all.push(Term::empty());
        all.sort();
        all.dedup();
        Ok(TermSet { dimension, terms: all, superposition: None })
    }

    /// `U_{d_s}`: every subset of at most `max_order` variables.
    pub fn superposition(dimension: usize, max_order: usize) -> Result<Self> {
        if max_order == 0 || max_order > dimension {
            return Err(Error::ThresholdOutOfRange { threshold: max_order, dimension });
        }
        let mut terms = Vec::new();
        for order in 0..=max_order {
            combinations(&(0..dimension).collect::<Vec<_>>(), order, &mut |c| terms.push(Term(c.to_vec())));
        }
        let mut set = TermSet::new(dimension, terms)?;
        set.superposition = Some(max_order);
        Ok(set)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Term> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        // the empty term is always present
        false
    }

    pub fn contains(&self, term: &Term) -> bool {
        self.position(term).is_some()
    }

    pub fn position(&self, term: &Term) -> Option<usize> {
        self.terms.binary_search(term).ok()
    }

    /// Largest term order present.
    pub fn max_order(&self) -> usize {
        self.terms.last().map_or(0, Term::order)
    }

    /// The superposition threshold `d_s`: the configured value, or the largest order present.
    pub fn superposition_threshold(&self) -> usize {
        self.superposition.unwrap_or_else(|| self.max_order())
    }

    pub fn with_superposition_threshold(mut self, max_order: usize) -> Result<Self> {
        if max_order == 0 || max_order > self.dimension {
            return Err(Error::ThresholdOutOfRange { threshold: max_order, dimension: self.dimension });
        }
        self.superposition = Some(max_order);
        Ok(self)
    }

    pub fn is_downward_closed(&self) -> bool {
        self.terms.iter().all(|t| t.subsets().all(|s| self.contains(&s)))
    }

    /// Minimal downward-closed superset.
    pub fn closure(&self) -> TermSet {
        let mut all: Vec<Term> = self.terms.iter().flat_map(|t| t.subsets().collect::<Vec<_>>()).collect();
        all.sort();
        all.dedup();
        TermSet { dimension: self.dimension, terms: all, superposition: self.superposition }
    }

    /// Variables that appear in at least one term.
    pub fn active_variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.dimension];
        for t in &self.terms {
            for &v in t.vars() {
                seen[v] = true;
            }
        }
        seen.iter().enumerate().filter(|(_, s)| **s).map(|(v, _)| v).collect()
    }

    /// Re-expresses the set over the variables in `keep` (zero-based, ascending
    /// after sorting), which become variables `0..keep.len()`. Terms touching a
    /// variable outside `keep` are dropped.
    pub fn reindex(&self, keep: &[usize]) -> Result<TermSet> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        if let Some(&v) = keep.last() {
            if v >= self.dimension {
                return Err(Error::VariableOutOfRange { index: v + 1, dimension: self.dimension });
            }
        }
        let terms = self.terms.iter().filter_map(|t| {
            t.vars().iter().map(|v| keep.binary_search(v).ok()).collect::<Option<Vec<_>>>().map(Term)
        });
        let mut set = TermSet::new(keep.len(), terms)?;
        set.superposition = self.superposition.map(|s| s.min(keep.len()));
        Ok(set)
    }


}

impl fmt::Display for TermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (j, t) in self.terms.iter().enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("}")
    }
}

impl<'a> IntoIterator for &'a TermSet {
    type Item = &'a Term;
    type IntoIter = core::slice::Iter<'a, Term>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

fn combinations(pool: &[usize], k: usize, emit: &mut impl FnMut(&[usize])) {
    fn rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            emit(cur);
            return;
        }
        for j in start..pool.len() {
            if pool.len() - j < k - cur.len() {
                break;
            }
            cur.push(pool[j]);
            rec(pool, k, j + 1, cur, emit);
            cur.pop();
        }
    }
    rec(pool, k, 0, &mut Vec::with_capacity(k), emit);
}

/// All `k`-element subsets of `pool` (assumed sorted) in lexicographic order.
pub(crate) fn subsets_of_size(pool: &[usize], k: usize) -> Vec<Term> {
    let mut out = Vec::new();
    combinations(pool, k, &mut |c| out.push(Term(c.to_vec())));
    out
}

/// Order-dependent bandwidths `N_l`; all terms of equal order share one grid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BandwidthProfile(BTreeMap<usize, usize>);

impl BandwidthProfile {
    /// `bandwidths[l - 1]` is the bandwidth for order `l`.
    pub fn from_orders(bandwidths: &[usize]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (j, &n) in bandwidths.iter().enumerate() {
            check_bandwidth(n)?;
            map.insert(j + 1, n);
        }
        Ok(BandwidthProfile(map))
    }

    pub fn set(&mut self, order: usize, bandwidth: usize) -> Result<()> {
        if order == 0 {
            return Err(Error::InvalidConfig("order 0 has no bandwidth".into()));
        }
        check_bandwidth(bandwidth)?;
        self.0.insert(order, bandwidth);
        Ok(())
    }

    pub fn get(&self, order: usize) -> Result<usize> {
        self.0.get(&order).copied().ok_or(Error::MissingBandwidth(order))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&o, &n)| (o, n))
    }

    pub fn max_bandwidth(&self) -> usize {
        self.0.values().copied().max().unwrap_or(0)
    }
}

fn check_bandwidth(n: usize) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) {
        Err(Error::InvalidBandwidth(n))
    } else {
        Ok(())
    }
}

/// The one-dimensional full grid for bandwidth `n`, zero excluded.
///
/// Periodic: `{-n/2, ..., -1, 1, ..., n/2 - 1}`; nonperiodic: `{1, ..., n - 1}`.
pub fn full_grid_1d(kind: BasisKind, n: usize) -> Result<Vec<i64>> {
    check_bandwidth(n)?;
    let n = n as i64;
    Ok(if kind.is_periodic() {
        (-n / 2..n / 2).filter(|&k| k != 0).collect()
    } else {
        (1..n).collect()
    })
}

/// Frequencies belonging to a single term, stored as a contiguous column block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermBlock {
    term: Term,
    offset: usize,
    len: usize,
    /// `len * order` entries: the nonzero components `k_u` of each frequency, row-major.
    local: Vec<i64>,
}

impl TermBlock {
    pub fn term(&self) -> &Term {
        &self.term
    }

    /// First column of this block within `I(U)`.
    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn range(&self) -> core::ops::Range<usize> {
        self.offset..self.offset + self.len
    }

    /// Nonzero components `k_u` of the `j`-th frequency of this block.
    pub fn local_frequency(&self, j: usize) -> &[i64] {
        let o = self.term.order();
        &self.local[j * o..(j + 1) * o]
    }
}

/// `I(U)`: the union of embedded full grids `P_u I_u`, grouped by term in
/// term-set order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyIndexUnion {
    dimension: usize,
    kind: BasisKind,
    blocks: Vec<TermBlock>,
    len: usize,
}

impl FrequencyIndexUnion {
    pub fn build(terms: &TermSet, bandwidths: &BandwidthProfile, kind: BasisKind) -> Result<Self> {
        let mut blocks = Vec::with_capacity(terms.len());
        let mut offset = 0;
        for term in terms {
            let order = term.order();
            let (len, local) = if order == 0 {
                (1, Vec::new())
            } else {
                let grid = full_grid_1d(kind, bandwidths.get(order)?)?;
                cartesian_power(&grid, order)
            };
            blocks.push(TermBlock { term: term.clone(), offset, len, local });
            offset += len;
        }
        Ok(FrequencyIndexUnion { dimension: terms.dimension(), kind, blocks, len: offset })
    }

    /// `|I(U)|`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn blocks(&self) -> &[TermBlock] {
        &self.blocks
    }

    pub fn block(&self, term: &Term) -> Option<&TermBlock> {
        self.blocks.binary_search_by(|b| b.term.cmp(term)).ok().map(|j| &self.blocks[j])
    }

    /// Full `d`-dimensional frequency of column `col`.
    pub fn frequency(&self, col: usize) -> Option<Vec<i64>> {
        let b = self.blocks.iter().find(|b| b.range().contains(&col))?;
        let mut k = vec![0i64; self.dimension];
        for (&v, &kv) in b.term.vars().iter().zip(b.local_frequency(col - b.offset)) {
            k[v] = kv;
        }
        Some(k)
    }

    /// All frequencies in column order.
    pub fn frequencies(&self) -> Vec<Vec<i64>> {
        (0..self.len).filter_map(|c| self.frequency(c)).collect()
    }

    /// Bounds of the nonzero one-dimensional frequencies used by any block.
    pub(crate) fn local_range(&self) -> Option<(i64, i64)> {
        let mut it = self.blocks.iter().flat_map(|b| b.local.iter().copied());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), k| (lo.min(k), hi.max(k))))
    }
}

/// Lexicographic Cartesian power of `grid`, flattened row-major.
fn cartesian_power(grid: &[i64], order: usize) -> (usize, Vec<i64>) {
    let count = grid.len().pow(order as u32);
    let mut out = Vec::with_capacity(count * order);
    let mut idx = vec![0usize; order];
    for _ in 0..count {
        out.extend(idx.iter().map(|&j| grid[j]));
        for pos in (0..order).rev() {
            idx[pos] += 1;
            if idx[pos] < grid.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
    (count, out)
}

/// Convenience for diagnostics: `{1,2}, {3}` style listing.
pub fn describe_terms<'a>(terms: impl IntoIterator<Item = &'a Term>) -> String {
    let mut s = String::new();
    for (j, t) in terms.into_iter().enumerate() {
        if j > 0 {
            s.push_str(", ");
        }
        s.push_str(&alloc::format!("{t}"));
    }
    s
}
