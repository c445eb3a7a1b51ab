//! Fragments: the sets `A` achieving `ε(X) = min |N(A)| - |A|` over
//! nonempty `A ⊆ X` with `N(A) ≠ Y`.
//!
//! [`FragmentContext`] caches `α` for one graph so repeated membership
//! tests and enumerations do not recompute it; the free functions are
//! one-shot conveniences over it.

mod closure;
mod verify;

pub use closure::{
    cayley_neighborhood_identity, check_closure, check_group_closure, check_orbit_closure,
    two_fragment_graph, CayleyIdentity, ClosureReport, ComponentShape, GroupClosureReport, TwoFragmentGraph,
};
pub use verify::{verify_theorem, CheckEntry, CheckStatus, VerificationReport, VerifyOptions};

use crate::bigraph::{BipartiteGraph, Side, VertexSet};
use crate::bitset::BitSet;
use crate::groupact::{is_semi_imprimitive, GroupAction};
use crate::oracle::alpha_nontrivial;
use crate::{Budget, Error, Result};

/// A classified fragment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentRecord {
    pub side: Side,
    pub members: VertexSet,
    pub nbhd_size: usize,
    /// A singleton, or `X ∖ N(b)` for some `b` on the opposite side.
    pub is_trivial: bool,
    /// `|A| = |φ(A)|`.
    pub is_balanced: bool,
    /// Filled in by [`classify_semi_imprimitive`].
    pub is_semi_imprimitive: Option<bool>,
}

impl FragmentRecord {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// How much of a part [`FragmentContext::enumerate`] scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Every subset; the part must fit in `Budget::exhaustive_part`.
    Exhaustive,
    /// Subsets of size at most `k`.
    Bounded(usize),
}

/// A graph together with its `α`.
#[derive(Clone, Copy)]
pub struct FragmentContext<'g> {
    g: &'g BipartiteGraph,
    alpha: usize,
}

impl<'g> FragmentContext<'g> {
    pub fn new(g: &'g BipartiteGraph) -> Result<Self> {
        Ok(FragmentContext {
            g,
            alpha: alpha_nontrivial(g)?.size,
        })
    }

    /// Uses a previously computed `α`.
    pub fn with_alpha(g: &'g BipartiteGraph, alpha: usize) -> Self {
        FragmentContext { g, alpha }
    }

    pub fn graph(&self) -> &'g BipartiteGraph {
        self.g
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// `ε(side) = |opposite part| - α`.
    pub fn epsilon(&self, side: Side) -> i64 {
        self.g.part_len(side.opposite()) as i64 - self.alpha as i64
    }

    fn surplus(&self, side: Side, set: &BitSet) -> Option<(usize, i64)> {
        let nb = self.g.neighborhood_bits(side, set);
        if nb.is_full() {
            return None;
        }
        let size = nb.count();
        Some((size, size as i64 - set.count() as i64))
    }

    pub fn is_fragment(&self, set: &VertexSet) -> Result<bool> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(self
            .surplus(set.side, &set.bits)
            .is_some_and(|(_, s)| s == self.epsilon(set.side)))
    }

    /// Classifies `set`, failing with `NotAFragment` if it is not one.
    pub fn record(&self, set: &VertexSet) -> Result<FragmentRecord> {
        if !self.is_fragment(set)? {
            return Err(Error::NotAFragment);
        }
        let nbhd = self.g.neighborhood_bits(set.side, &set.bits);
        Ok(self.record_unchecked(set.clone(), &nbhd))
    }

    fn record_unchecked(&self, members: VertexSet, nbhd: &BitSet) -> FragmentRecord {
        let side = members.side;
        let len = members.len();
        let is_trivial = len == 1
            || nbhd
                .complement()
                .iter()
                .any(|b| self.g.row(side.opposite(), b).complement() == members.bits);
        FragmentRecord {
            side,
            nbhd_size: nbhd.count(),
            is_trivial,
            is_balanced: 2 * len == self.alpha,
            is_semi_imprimitive: None,
            members,
        }
    }

    /// `φ(A) = (opposite) ∖ N(A)`, the paired fragment on the other side.
    pub fn phi(&self, fragment: &FragmentRecord) -> Result<FragmentRecord> {
        if !self.is_fragment(&fragment.members)? {
            return Err(Error::NotAFragment);
        }
        let side = fragment.side.opposite();
        let image = self
            .g
            .neighborhood_bits(fragment.side, &fragment.members.bits)
            .complement();
        let back = self.g.neighborhood_bits(side, &image);
        assert_eq!(
            back,
            fragment.members.bits.complement(),
            "N(φ(A)) must be the complement of A"
        );
        let out = VertexSet::new(side, image);
        assert!(self.is_fragment(&out)?, "φ(A) must be a fragment");
        Ok(self.record_unchecked(out, &back))
    }

    /// All fragments on `side` (or those of size at most `k`), sorted by
    /// size and then by members.
    ///
    /// The scan extends sets in increasing vertex order and cuts a branch
    /// when `N(A)` is already everything, when even adding every remaining
    /// vertex cannot bring the surplus down to `ε`, or when a skipped vertex
    /// `x` has `N(x) ⊆ N(A)`. The last rule is sound because a fragment
    /// contains every vertex whose neighbourhood it already covers:
    /// otherwise adding that vertex would beat `ε`.
    pub fn enumerate(
        &self,
        side: Side,
        mode: EnumerationMode,
        budget: &Budget,
    ) -> Result<Vec<FragmentRecord>> {
        let n = self.g.part_len(side);
        let max_size = match mode {
            EnumerationMode::Exhaustive => {
                if n > budget.exhaustive_part {
                    return Err(Error::budget("exhaustive part", n, budget.exhaustive_part));
                }
                n
            }
            EnumerationMode::Bounded(k) => k.min(n),
        };
        let mut scan = Scan {
            ctx: self,
            side,
            n,
            max_size,
            eps: self.epsilon(side),
            rows: self.g.rows(side),
            visited: 0,
            cap: budget.subsets,
            found: Vec::new(),
        };
        let mut members = Vec::new();
        scan.extend(&mut members, &BitSet::new(self.g.part_len(side.opposite())))?;
        let mut out = scan.found;
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
        Ok(out)
    }
}

struct Scan<'a, 'g> {
    ctx: &'a FragmentContext<'g>,
    side: Side,
    n: usize,
    max_size: usize,
    eps: i64,
    rows: &'g [BitSet],
    visited: usize,
    cap: usize,
    found: Vec<FragmentRecord>,
}

impl Scan<'_, '_> {
    fn extend(&mut self, members: &mut Vec<usize>, nbhd: &BitSet) -> Result<()> {
        let start = members.last().map_or(0, |&m| m + 1);
        for v in start..self.n {
            self.visited += 1;
            if self.visited > self.cap {
                return Err(Error::budget("fragment scan subsets", self.visited, self.cap));
            }
            let nb = nbhd.union(&self.rows[v]);
            if nb.is_full() {
                continue;
            }
            members.push(v);
            let covered_skip = (0..v)
                .filter(|u| !members.contains(u))
                .any(|u| self.rows[u].is_subset(&nb));
            if !covered_skip {
                let surplus = nb.count() as i64 - members.len() as i64;
                if surplus == self.eps {
                    let set =
                        VertexSet::new(self.side, BitSet::from_indices(self.n, members.iter().copied()));
                    self.found.push(self.ctx.record_unchecked(set, &nb));
                }
                let room = (self.max_size - members.len()).min(self.n - v - 1) as i64;
                if room > 0 && surplus - room <= self.eps {
                    self.extend(members, &nb)?;
                }
            }
            members.pop();
        }
        Ok(())
    }
}

/// Fills `is_semi_imprimitive` on each record from the orbit of its members
/// under `action`. Sets of size 1 or the whole part are never
/// semi-imprimitive.
pub fn classify_semi_imprimitive(
    records: &mut [FragmentRecord],
    action: &GroupAction,
    cap: usize,
) -> Result<()> {
    for r in records {
        let len = r.members.len();
        let part = action.part_len(r.side);
        r.is_semi_imprimitive = Some(len > 1 && len < part && is_semi_imprimitive(action, &r.members, cap)?);
    }
    Ok(())
}

/// `ε(side)` as `|opposite| - α`.
pub fn epsilon(g: &BipartiteGraph, side: Side) -> Result<i64> {
    Ok(FragmentContext::new(g)?.epsilon(side))
}

pub fn is_fragment(g: &BipartiteGraph, set: &VertexSet) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    FragmentContext::new(g)?.is_fragment(set)
}

pub fn phi(g: &BipartiteGraph, fragment: &FragmentRecord) -> Result<FragmentRecord> {
    FragmentContext::new(g)?.phi(fragment)
}

pub fn enumerate_fragments(
    g: &BipartiteGraph,
    side: Side,
    mode: EnumerationMode,
    budget: &Budget,
) -> Result<Vec<FragmentRecord>> {
    FragmentContext::new(g)?.enumerate(side, mode, budget)
}

#[cfg(test)]
mod tests;
