use std::collections::HashSet;

use super::FragmentContext;
use crate::bigraph::{BipartiteGraph, Side, VertexSet};
use crate::bitset::BitSet;
use crate::groupact::{is_part_transitive, set_orbit, GroupAction, PartPermutation};
use crate::perm::{all_permutations, Perm};
use crate::{Error, Result};

/// One instance of the union/intersection rule for fragments `A`, `B` on
/// the same side: if both are fragments, `A ∩ B ≠ ∅` and `N(A ∪ B)` is
/// not everything, then `A ∩ B` and `A ∪ B` are fragments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub a_is_fragment: bool,
    pub b_is_fragment: bool,
    pub meet_nonempty: bool,
    pub union_not_full: bool,
    pub meet_is_fragment: Option<bool>,
    pub union_is_fragment: bool,
}

impl ClosureReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.a_is_fragment && self.b_is_fragment && self.meet_nonempty && self.union_not_full
    }

    /// False only when the hypotheses hold and a conclusion fails.
    pub fn implication_holds(&self) -> bool {
        !self.hypotheses_hold() || (self.meet_is_fragment == Some(true) && self.union_is_fragment)
    }
}

pub fn check_closure(ctx: &FragmentContext<'_>, a: &VertexSet, b: &VertexSet) -> Result<ClosureReport> {
    if a.side != b.side {
        return Err(Error::SideMismatch);
    }
    let meet = VertexSet::new(a.side, a.bits.intersection(&b.bits));
    let union = VertexSet::new(a.side, a.bits.union(&b.bits));
    let g = ctx.graph();
    Ok(ClosureReport {
        a_is_fragment: ctx.is_fragment(a)?,
        b_is_fragment: ctx.is_fragment(b)?,
        meet_nonempty: !meet.is_empty(),
        union_not_full: !g.neighborhood_bits(a.side, &union.bits).is_full(),
        meet_is_fragment: if meet.is_empty() {
            None
        } else {
            Some(ctx.is_fragment(&meet)?)
        },
        union_is_fragment: ctx.is_fragment(&union)?,
    })
}

/// The group-element form of the closure rule: in a part-transitive
/// non-complete graph, if `A` is a fragment with `∅ ≠ γ(A) ∩ A ≠ A` and
/// `|A| ≤ |φ(A)|`, then `A ∪ γ(A)` and `A ∩ γ(A)` are fragments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupClosureReport {
    pub image: VertexSet,
    pub part_transitive: bool,
    pub a_is_fragment: bool,
    pub partial_overlap: bool,
    pub not_larger_than_phi: bool,
    pub meet_is_fragment: Option<bool>,
    pub union_is_fragment: bool,
}

impl GroupClosureReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.part_transitive && self.a_is_fragment && self.partial_overlap && self.not_larger_than_phi
    }

    pub fn implication_holds(&self) -> bool {
        !self.hypotheses_hold() || (self.meet_is_fragment == Some(true) && self.union_is_fragment)
    }
}

fn group_closure_for_image(
    ctx: &FragmentContext<'_>,
    part_transitive: bool,
    a: &VertexSet,
    image: BitSet,
) -> Result<GroupClosureReport> {
    let g = ctx.graph();
    let a_is_fragment = ctx.is_fragment(a)?;
    let phi_len = g.part_len(a.side.opposite()) - g.neighborhood_bits(a.side, &a.bits).count();
    let meet = a.bits.intersection(&image);
    let union = a.bits.union(&image);
    Ok(GroupClosureReport {
        part_transitive,
        a_is_fragment,
        partial_overlap: !meet.is_empty() && meet != a.bits,
        not_larger_than_phi: a.len() <= phi_len,
        meet_is_fragment: if meet.is_empty() {
            None
        } else {
            Some(ctx.is_fragment(&VertexSet::new(a.side, meet))?)
        },
        union_is_fragment: ctx.is_fragment(&VertexSet::new(a.side, union))?,
        image: VertexSet::new(a.side, image),
    })
}

/// Checks the rule for a single group element `γ` acting on `A`'s side.
/// Part-transitivity is taken from `action`.
pub fn check_group_closure(
    ctx: &FragmentContext<'_>,
    action: &GroupAction,
    gamma: &PartPermutation,
    a: &VertexSet,
) -> Result<GroupClosureReport> {
    if gamma.len() != a.bits.len() {
        return Err(Error::InvalidAction(
            "permutation length does not match the part".into(),
        ));
    }
    let transitive = is_part_transitive(ctx.graph(), action);
    group_closure_for_image(ctx, transitive, a, gamma.apply_set(&a.bits))
}

/// Checks the rule for every image `γ(A)` in the orbit of `A`, which
/// covers every element of the group generated by `action`.
pub fn check_orbit_closure(
    ctx: &FragmentContext<'_>,
    action: &GroupAction,
    a: &VertexSet,
    cap: usize,
) -> Result<Vec<GroupClosureReport>> {
    let transitive = is_part_transitive(ctx.graph(), action);
    set_orbit(action, a, cap)?
        .into_iter()
        .map(|img| group_closure_for_image(ctx, transitive, a, img.bits))
        .collect()
}

/// Shape of one connected component of `H(X)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentShape {
    Isolated,
    Complete,
    /// A cycle on at least four vertices (a triangle counts as complete).
    Cycle,
    Other,
}

/// The graph on one part whose edges are the 2-fragments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFragmentGraph {
    pub side: Side,
    pub order: usize,
    pub edges: Vec<(usize, usize)>,
    /// Components as sorted vertex lists, ordered by least vertex.
    pub components: Vec<(Vec<usize>, ComponentShape)>,
}

impl TwoFragmentGraph {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// True when the graph is a single cycle through every vertex.
    pub fn is_hamiltonian_cycle(&self) -> bool {
        self.components.len() == 1 && self.components[0].1 == ComponentShape::Cycle
    }
}

/// `H(side)`: `x ~ y` iff `{x, y}` is a fragment. When `ε = d - 1` this is
/// the rule `|N(x) ∩ N(y)| = d - 1`. The part must be regular.
pub fn two_fragment_graph(ctx: &FragmentContext<'_>, side: Side) -> Result<TwoFragmentGraph> {
    let g = ctx.graph();
    if g.regular_degree(side).is_none() {
        return Err(Error::NotRegular);
    }
    let n = g.part_len(side);
    let mut adj = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if ctx.is_fragment(&VertexSet::new(side, BitSet::from_indices(n, [x, y])))? {
                edges.push((x, y));
                adj[x].push(y);
                adj[y].push(x);
            }
        }
    }
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for &w in &adj[comp[i]] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        let k = comp.len();
        let shape = if k == 1 {
            ComponentShape::Isolated
        } else if comp.iter().all(|&v| adj[v].len() == k - 1) {
            ComponentShape::Complete
        } else if comp.iter().all(|&v| adj[v].len() == 2) {
            ComponentShape::Cycle
        } else {
            ComponentShape::Other
        };
        components.push((comp, shape));
    }
    Ok(TwoFragmentGraph {
        side,
        order: n,
        edges,
        components,
    })
}

/// Result of comparing `N(S)` with the product `G_t S` in a permutation
/// graph, where `G_t` is the set of permutations with fewer than `t` fixed
/// points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CayleyIdentity {
    /// `N(S) = G_t S` as sets.
    pub product_matches: bool,
    /// `|G_t S* ∖ G_t| = |S*|` with `S* = S ∖ {id}`.
    pub fragment_condition: bool,
}

/// Computes `G_t S` by composing permutations (apply `s`, then `g`) and
/// compares it with the neighbourhood of `S` in the graph built for
/// `(n, t)`. `S` must lie on the `X` side and contain the identity.
pub fn cayley_neighborhood_identity(
    g: &BipartiteGraph,
    n: usize,
    t: usize,
    s: &VertexSet,
) -> Result<CayleyIdentity> {
    let perms = all_permutations(n);
    if g.x_len() != perms.len() || g.y_len() != perms.len() {
        return Err(Error::InvalidParameter(format!(
            "graph is not a permutation graph on S_{n}"
        )));
    }
    if s.side != Side::X {
        return Err(Error::SideMismatch);
    }
    // lexicographic order puts the identity first
    if !s.contains(0) {
        return Err(Error::MissingIdentity);
    }
    let index: std::collections::HashMap<&Perm, usize> =
        perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let gt: Vec<&Perm> = perms.iter().filter(|p| p.fixed_points() < t).collect();
    let gt_set: HashSet<usize> = gt.iter().map(|p| index[*p]).collect();
    let mut product = BitSet::new(perms.len());
    let mut starred = HashSet::new();
    for v in s.bits.iter() {
        for gp in &gt {
            let img = index[&gp.compose(&perms[v])];
            product.insert(img);
            if v != 0 && !gt_set.contains(&img) {
                starred.insert(img);
            }
        }
    }
    Ok(CayleyIdentity {
        product_matches: product == g.neighborhood_bits(Side::X, &s.bits),
        fragment_condition: starred.len() == s.len() - 1,
    })
}
