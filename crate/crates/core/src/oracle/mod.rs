//! Ground-truth engines: maximum matching, maximum independent sets via
//! König's theorem, the maximum nontrivial independent set `α(X,Y)`,
//! exhaustive enumeration of all maximum nontrivial independent sets, and a
//! brute-force `ε`.

mod enumerate;
mod matching;

pub use enumerate::enumerate_max_nontrivial;
pub use matching::{max_independent_within, max_matching, max_matching_within, MatchingResult};

use rayon::prelude::*;

use crate::bigraph::{BipartiteGraph, Side, VertexSet};
use crate::bitset::BitSet;
use crate::{Error, Result};

/// Largest part [`epsilon_bruteforce`] will scan (`2^part` subsets).
pub const EXHAUSTIVE_PART_LIMIT: usize = 24;

/// An independent set split by part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentSet {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl IndependentSet {
    pub fn size(&self) -> usize {
        self.a.len() + self.b.len()
    }
}

/// A nontrivial independent set `A ∪ B` with `A ⊆ X`, `B ⊆ Y`, both nonempty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NontrivialMisResult {
    pub size: usize,
    pub a: VertexSet,
    pub b: VertexSet,
}

/// Whether no edge joins `a ⊆ X` to `b ⊆ Y`.
pub fn is_independent(g: &BipartiteGraph, a: &BitSet, b: &BitSet) -> bool {
    a.iter().all(|x| g.row(Side::X, x).is_disjoint(b))
}

/// A maximum independent set of the whole graph.
pub fn max_independent_set(g: &BipartiteGraph) -> IndependentSet {
    let (a, b) = max_independent_within(g, &BitSet::full(g.x_len()), &BitSet::full(g.y_len()));
    assert!(is_independent(g, &a, &b), "König witness is not independent");
    IndependentSet {
        a: VertexSet::new(Side::X, a),
        b: VertexSet::new(Side::Y, b),
    }
}

/// Size of the best nontrivial independent set containing the non-adjacent
/// pair `(x, y)`: delete `N(x)` from `Y` and `N(y)` from `X`; the residual
/// graph has `x` and `y` isolated, so any maximum independent set of it
/// may include both.
fn residual_size(g: &BipartiteGraph, x: usize, y: usize) -> usize {
    let xs = g.row(Side::Y, y).complement();
    let ys = g.row(Side::X, x).complement();
    xs.count() + ys.count() - max_matching_within(g, &xs, &ys).size
}

/// `α(X,Y)` with a witness.
///
/// The size is the maximum, over non-adjacent pairs `(x, y)`, of the
/// residual independent set (pairs are processed in parallel). The witness
/// is the lexicographically least maximum nontrivial independent set,
/// comparing sorted member lists with `X` before `Y`, so it does not depend
/// on scheduling or on which pair attained the maximum.
pub fn alpha_nontrivial(g: &BipartiteGraph) -> Result<NontrivialMisResult> {
    if g.is_complete() {
        return Err(Error::CompleteGraph);
    }
    let size = (0..g.x_len())
        .into_par_iter()
        .map(|x| {
            let row = g.row(Side::X, x);
            (0..g.y_len())
                .filter(|&y| !row.contains(y))
                .map(|y| residual_size(g, x, y))
                .max()
                .unwrap_or(0)
        })
        .max()
        .expect("X is nonempty");
    let (a, b) = lex_least_witness(g, size);
    assert!(is_independent(g, &a, &b));
    assert_eq!(a.count() + b.count(), size);
    assert!(!a.is_empty() && !b.is_empty());
    Ok(NontrivialMisResult {
        size,
        a: VertexSet::new(Side::X, a),
        b: VertexSet::new(Side::Y, b),
    })
}

/// Greedy scan over `x0.., y0..`: keep a vertex whenever some nontrivial
/// independent set of size `alpha` still contains everything kept so far
/// and avoids everything rejected.
fn lex_least_witness(g: &BipartiteGraph, alpha: usize) -> (BitSet, BitSet) {
    let (nx, ny) = (g.x_len(), g.y_len());
    // allowed vertices: not rejected and not adjacent to anything kept
    let mut xs = BitSet::full(nx);
    let mut ys = BitSet::full(ny);
    let mut kept_x = BitSet::new(nx);
    let mut kept_y = BitSet::new(ny);
    let fits =
        |xs: &BitSet, ys: &BitSet| xs.count() + ys.count() - max_matching_within(g, xs, ys).size >= alpha;
    for x in 0..nx {
        if !xs.contains(x) {
            continue;
        }
        let cy = ys.difference(g.row(Side::X, x));
        // some allowed y must complete the set, since no y is kept yet
        let ok = cy.to_vec().into_par_iter().any(|y| {
            let rx = xs.difference(g.row(Side::Y, y));
            fits(&rx, &cy)
        });
        if ok {
            kept_x.insert(x);
            ys = cy;
        } else {
            xs.remove(x);
        }
    }
    assert!(!kept_x.is_empty(), "a nontrivial witness needs an X vertex");
    for y in 0..ny {
        if !ys.contains(y) {
            continue;
        }
        let rx = xs.difference(g.row(Side::Y, y));
        if fits(&rx, &ys) {
            kept_y.insert(y);
            xs = rx;
        } else {
            ys.remove(y);
        }
    }
    (kept_x, kept_y)
}

/// `ε(side) = min |N(A)| - |A|` over nonempty `A ⊆ side` with `N(A)`
/// not the whole opposite part, by scanning every subset in Gray-code
/// order. Negative when some `A` has fewer neighbours than members.
pub fn epsilon_bruteforce(g: &BipartiteGraph, side: Side) -> Result<i64> {
    let n = g.part_len(side);
    if n > EXHAUSTIVE_PART_LIMIT {
        return Err(Error::budget("exhaustive part", n, EXHAUSTIVE_PART_LIMIT));
    }
    let other = g.part_len(side.opposite());
    let rows: Vec<Vec<usize>> = g.rows(side).iter().map(BitSet::to_vec).collect();
    let mut cover = vec![0u32; other];
    let mut covered = 0usize;
    let mut members = 0usize;
    let mut best: Option<i64> = None;
    let mut in_set = vec![false; n];
    for step in 1u64..1 << n {
        let v = step.trailing_zeros() as usize;
        if in_set[v] {
            in_set[v] = false;
            members -= 1;
            for &u in &rows[v] {
                cover[u] -= 1;
                if cover[u] == 0 {
                    covered -= 1;
                }
            }
        } else {
            in_set[v] = true;
            members += 1;
            for &u in &rows[v] {
                if cover[u] == 0 {
                    covered += 1;
                }
                cover[u] += 1;
            }
        }
        if covered < other {
            let surplus = covered as i64 - members as i64;
            best = Some(best.map_or(surplus, |b| b.min(surplus)));
        }
    }
    best.ok_or(Error::CompleteGraph)
}

#[cfg(test)]
mod tests;
