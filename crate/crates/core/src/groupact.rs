//! Group actions on the two parts of a bipartite graph, given by
//! generators: orbits, part-transitivity, block systems, set orbits and the
//! (semi-)imprimitivity tests for vertex subsets.
//!
//! Nothing here enumerates the group itself; every computation is a
//! closure under the generators.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::bigraph::{subset_masks, BipartiteGraph, Family, Side, VertexSet};
use crate::bitset::BitSet;
use crate::fqlinalg::{enumerate_subspaces, PrimeField, RrefSubspace};
use crate::perm::{all_permutations, Perm};
use crate::{Error, Result};

/// A bijection of the vertex indices of one part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartPermutation(Vec<usize>);

impl PartPermutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &v in &images {
            match seen.get_mut(v) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::InvalidAction("part map is not a bijection".into())),
            }
        }
        Ok(PartPermutation(images))
    }

    pub fn identity(len: usize) -> Self {
        PartPermutation((0..len).collect())
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn apply_set(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(set.len(), set.iter().map(|v| self.0[v]))
    }
}

/// A group given by generator pairs `(g_X, g_Y)`, each pair preserving
/// adjacency: `x ~ y  <=>  g_X(x) ~ g_Y(y)`.
#[derive(Debug, Clone)]
pub struct GroupAction {
    x_len: usize,
    y_len: usize,
    generators: Vec<(PartPermutation, PartPermutation)>,
}

impl GroupAction {
    /// Validates every generator pair against `g`. Pairs acting trivially
    /// on both parts are dropped.
    pub fn new(g: &BipartiteGraph, generators: Vec<(PartPermutation, PartPermutation)>) -> Result<Self> {
        for (i, (gx, gy)) in generators.iter().enumerate() {
            if gx.len() != g.x_len() || gy.len() != g.y_len() {
                return Err(Error::InvalidAction(format!(
                    "generator {i} has wrong part sizes"
                )));
            }
            for x in 0..g.x_len() {
                let image = gy.apply_set(g.row(Side::X, x));
                if &image != g.row(Side::X, gx.apply(x)) {
                    return Err(Error::InvalidAction(format!(
                        "generator {i} does not preserve the edges at {}",
                        g.label(Side::X, x)
                    )));
                }
            }
        }
        let generators = generators
            .into_iter()
            .filter(|(gx, gy)| !(gx.is_identity() && gy.is_identity()))
            .collect();
        Ok(GroupAction {
            x_len: g.x_len(),
            y_len: g.y_len(),
            generators,
        })
    }

    /// The trivial group.
    pub fn trivial(g: &BipartiteGraph) -> Self {
        GroupAction {
            x_len: g.x_len(),
            y_len: g.y_len(),
            generators: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[(PartPermutation, PartPermutation)] {
        &self.generators
    }

    pub fn part_len(&self, side: Side) -> usize {
        match side {
            Side::X => self.x_len,
            Side::Y => self.y_len,
        }
    }

    /// The generator images on one part.
    pub fn side_generators(&self, side: Side) -> impl Iterator<Item = &PartPermutation> {
        self.generators.iter().map(move |(gx, gy)| match side {
            Side::X => gx,
            Side::Y => gy,
        })
    }
}

/// Generators induced by the natural symmetric-group action for the set,
/// permutation and circulant families: the transposition `(1 2)` and the
/// cycle `(1 .. n)` on points for sets; left and right multiplication by
/// those two for permutations; the rotation `i -> i+1` for circulants.
pub fn induced_symmetric_action(family: &Family, g: &BipartiteGraph) -> Result<GroupAction> {
    match *family {
        Family::Sets { n, a, b, .. } => {
            let points = point_generators(n as usize);
            let xs = subset_masks(n, a);
            let ys = subset_masks(n, b);
            let induce = |masks: &[u64], p: &Perm| -> Result<PartPermutation> {
                let index: HashMap<u64, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
                let images = masks
                    .iter()
                    .map(|&m| {
                        let img = (0..n as usize)
                            .filter(|&i| m >> i & 1 == 1)
                            .fold(0u64, |acc, i| acc | 1 << p.apply(i));
                        index[&img]
                    })
                    .collect();
                PartPermutation::new(images)
            };
            let gens = points
                .iter()
                .map(|p| Ok((induce(&xs, p)?, induce(&ys, p)?)))
                .collect::<Result<Vec<_>>>()?;
            GroupAction::new(g, gens)
        }
        Family::Permutations { n, .. } => {
            let perms = all_permutations(n as usize);
            let index: HashMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let mut gens = Vec::new();
            for p in point_generators(n as usize) {
                let left = PartPermutation::new(perms.iter().map(|s| index[&p.compose(s)]).collect())?;
                let right = PartPermutation::new(perms.iter().map(|s| index[&s.compose(&p)]).collect())?;
                gens.push((left.clone(), left));
                gens.push((right.clone(), right));
            }
            GroupAction::new(g, gens)
        }
        Family::Circulant { n, .. } => {
            let rot = PartPermutation::new((0..n as usize).map(|i| (i + 1) % n as usize).collect())?;
            GroupAction::new(g, vec![(rot.clone(), rot)])
        }
        Family::Subspaces { .. } => Err(Error::UnknownFamily("subspaces (use induced_gl_action)".into())),
    }
}

fn point_generators(n: usize) -> Vec<Perm> {
    let mut gens = vec![Perm::transposition(n, 0, 1), Perm::long_cycle(n)];
    gens.dedup();
    gens.retain(|p| *p != Perm::identity(n));
    gens
}

/// Generators of `GL(n, q)` acting on `a`-subspaces and `b`-subspaces: the
/// transvection `v_2 += v_1`, the coordinate cycle, and (for `q > 2`)
/// `v_1 *= ω` with `ω` a primitive root. Each image is recanonicalized.
pub fn induced_gl_action(n: u32, q: u64, a: u32, b: u32, g: &BipartiteGraph) -> Result<GroupAction> {
    let field = PrimeField::new(q)?;
    let n = n as usize;
    if n < 2 {
        return Err(Error::InvalidParameter("GL action needs n >= 2".into()));
    }
    let limit = g.x_len().max(g.y_len());
    let xs = enumerate_subspaces(n, q, a as usize, limit)?;
    let ys = enumerate_subspaces(n, q, b as usize, limit)?;
    if xs.len() != g.x_len() || ys.len() != g.y_len() {
        return Err(Error::InvalidAction(
            "graph does not match subspace parameters".into(),
        ));
    }
    let mut maps: Vec<Box<dyn Fn(&[u32]) -> Vec<u32>>> = vec![
        Box::new(move |v: &[u32]| {
            let mut w = v.to_vec();
            w[1] = field.add(w[1], w[0]);
            w
        }),
        Box::new(move |v: &[u32]| (0..n).map(|i| v[(i + n - 1) % n]).collect()),
    ];
    if q > 2 {
        let omega = field.primitive_root();
        maps.push(Box::new(move |v: &[u32]| {
            let mut w = v.to_vec();
            w[0] = field.mul(w[0], omega);
            w
        }));
    }
    let induce = |subs: &[RrefSubspace], f: &dyn Fn(&[u32]) -> Vec<u32>| -> Result<PartPermutation> {
        let index: HashMap<&RrefSubspace, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
        PartPermutation::new(subs.iter().map(|s| index[&s.map_rows(f)]).collect())
    };
    let gens = maps
        .iter()
        .map(|f| Ok((induce(&xs, f.as_ref())?, induce(&ys, f.as_ref())?)))
        .collect::<Result<Vec<_>>>()?;
    GroupAction::new(g, gens)
}

/// The natural action for any family: [`induced_gl_action`] for subspaces,
/// [`induced_symmetric_action`] otherwise.
pub fn natural_action(family: &Family, g: &BipartiteGraph) -> Result<GroupAction> {
    match *family {
        Family::Subspaces { n, q, a, b, .. } => induced_gl_action(n, q, a, b, g),
        _ => induced_symmetric_action(family, g),
    }
}

/// Orbit of vertex `v` on `side`.
pub fn orbit(action: &GroupAction, side: Side, v: usize) -> VertexSet {
    let len = action.part_len(side);
    let mut seen = BitSet::new(len);
    seen.insert(v);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for gen in action.side_generators(side) {
            let w = gen.apply(u);
            if !seen.contains(w) {
                seen.insert(w);
                queue.push_back(w);
            }
        }
    }
    VertexSet::new(side, seen)
}

/// Whether the action is transitive on `X` and on `Y`.
pub fn is_part_transitive(g: &BipartiteGraph, action: &GroupAction) -> bool {
    action.x_len == g.x_len()
        && action.y_len == g.y_len()
        && orbit(action, Side::X, 0).bits.is_full()
        && orbit(action, Side::Y, 0).bits.is_full()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Merges the classes; returns `false` if they were already equal.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// The finest partition of `side` invariant under the action in which `u`
/// and `v` share a block. Blocks are sorted, and listed by least element.
pub fn minimal_block_system(action: &GroupAction, side: Side, u: usize, v: usize) -> Vec<Vec<usize>> {
    let len = action.part_len(side);
    let mut uf = UnionFind::new(len);
    let mut pending = VecDeque::new();
    if uf.union(u, v) {
        pending.push_back((u, v));
    }
    while let Some((a, b)) = pending.pop_front() {
        for gen in action.side_generators(side) {
            let (ga, gb) = (gen.apply(a), gen.apply(b));
            if uf.union(ga, gb) {
                pending.push_back((ga, gb));
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = HashMap::new();
    for w in 0..len {
        let root = uf.find(w);
        let idx = *slot.entry(root).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[idx].push(w);
    }
    blocks
}

/// Whether the action on `side` is transitive and preserves no nontrivial
/// partition.
pub fn is_primitive(action: &GroupAction, side: Side) -> bool {
    let len = action.part_len(side);
    if !orbit(action, side, 0).bits.is_full() {
        return false;
    }
    (1..len).all(|v| minimal_block_system(action, side, 0, v).len() == 1)
}

/// Orbit of the set `set` under the setwise action, in canonical order.
/// Fails once more than `cap` distinct images have been found.
pub fn set_orbit(action: &GroupAction, set: &VertexSet, cap: usize) -> Result<Vec<VertexSet>> {
    let side = set.side;
    let mut seen: HashSet<BitSet> = HashSet::from([set.bits.clone()]);
    let mut queue = VecDeque::from([set.bits.clone()]);
    while let Some(cur) = queue.pop_front() {
        for gen in action.side_generators(side) {
            let img = gen.apply_set(&cur);
            if seen.insert(img.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded(cap));
                }
                queue.push_back(img);
            }
        }
    }
    let mut out: Vec<VertexSet> = seen.into_iter().map(|b| VertexSet::new(side, b)).collect();
    out.sort();
    Ok(out)
}

fn check_proper(action: &GroupAction, set: &VertexSet) -> Result<()> {
    let k = set.len();
    if k <= 1 || k >= action.part_len(set.side) {
        return Err(Error::InvalidParameter(format!(
            "need 1 < |B| < {}, got |B| = {k}",
            action.part_len(set.side)
        )));
    }
    Ok(())
}

/// `|γ(B) ∩ B| ∈ {0, 1, |B|}` for every group element `γ`.
pub fn is_semi_imprimitive(action: &GroupAction, set: &VertexSet, cap: usize) -> Result<bool> {
    check_proper(action, set)?;
    Ok(set_orbit(action, set, cap)?
        .iter()
        .all(|c| c.bits == set.bits || c.bits.intersection_count(&set.bits) <= 1))
}

/// `γ(B) ∩ B ∈ {∅, B}` for every group element `γ`, i.e. `B` is a block.
pub fn is_imprimitive_set(action: &GroupAction, set: &VertexSet, cap: usize) -> Result<bool> {
    check_proper(action, set)?;
    Ok(set_orbit(action, set, cap)?
        .iter()
        .all(|c| c.bits == set.bits || c.bits.is_disjoint(&set.bits)))
}
