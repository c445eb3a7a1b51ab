//! Bipartite graphs with bit-vector adjacency in both directions, the
//! neighborhood operator, structural predicates, the builders for the four
//! graph families and a line-oriented text serialization.

mod build;
mod serial;

pub use build::{
    build_circulant_graph, build_permutation_graph, build_set_graph, build_subspace_graph, set_label,
    subset_masks, Family,
};
pub use serial::{deserialize, serialize};

use std::collections::HashSet;
use std::fmt;

use crate::bitset::BitSet;
use crate::{Error, Result};

/// One of the two parts of a bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::X => "X",
            Side::Y => "Y",
        })
    }
}

/// A subset of one part, tagged with that part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    pub side: Side,
    pub bits: BitSet,
}

impl VertexSet {
    pub fn new(side: Side, bits: BitSet) -> Self {
        VertexSet { side, bits }
    }

    pub fn empty(g: &BipartiteGraph, side: Side) -> Self {
        VertexSet::new(side, BitSet::new(g.part_len(side)))
    }

    pub fn from_indices(g: &BipartiteGraph, side: Side, indices: impl IntoIterator<Item = usize>) -> Self {
        VertexSet::new(side, BitSet::from_indices(g.part_len(side), indices))
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }
}

/// A bipartite graph `G(X,Y)`.
///
/// `adj_x[x]` is the neighborhood of `x` as a bit-vector over `Y` and
/// `adj_y` is its transpose. Labels are distinct within each part and
/// listed in the canonical vertex order of the family that built the graph.
#[derive(Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    x_labels: Vec<String>,
    y_labels: Vec<String>,
    adj_x: Vec<BitSet>,
    adj_y: Vec<BitSet>,
}

impl BipartiteGraph {
    /// Builds a graph from X-side adjacency rows, computing the transpose.
    pub fn from_rows(x_labels: Vec<String>, y_labels: Vec<String>, adj_x: Vec<BitSet>) -> Result<Self> {
        if x_labels.is_empty() || y_labels.is_empty() {
            return Err(Error::InvalidParameter("both parts must be nonempty".into()));
        }
        if adj_x.len() != x_labels.len() || adj_x.iter().any(|r| r.len() != y_labels.len()) {
            return Err(Error::InvalidParameter(
                "adjacency rows do not match part sizes".into(),
            ));
        }
        for labels in [&x_labels, &y_labels] {
            let mut seen = HashSet::new();
            if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
                return Err(Error::InvalidParameter(format!("duplicate label `{dup}`")));
            }
        }
        let mut adj_y = vec![BitSet::new(x_labels.len()); y_labels.len()];
        for (x, row) in adj_x.iter().enumerate() {
            for y in row.iter() {
                adj_y[y].insert(x);
            }
        }
        Ok(BipartiteGraph {
            x_labels,
            y_labels,
            adj_x,
            adj_y,
        })
    }

    /// Graph with default labels `x0.. / y0..` from X-side edge lists.
    pub fn from_edges(
        x_len: usize,
        y_len: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut rows = vec![BitSet::new(y_len); x_len];
        for (x, y) in edges {
            if x >= x_len || y >= y_len {
                return Err(Error::InvalidParameter(format!("edge ({x},{y}) out of range")));
            }
            rows[x].insert(y);
        }
        BipartiteGraph::from_rows(
            (0..x_len).map(|i| format!("x{i}")).collect(),
            (0..y_len).map(|i| format!("y{i}")).collect(),
            rows,
        )
    }

    pub fn x_len(&self) -> usize {
        self.x_labels.len()
    }

    pub fn y_len(&self) -> usize {
        self.y_labels.len()
    }

    pub fn part_len(&self, side: Side) -> usize {
        match side {
            Side::X => self.x_len(),
            Side::Y => self.y_len(),
        }
    }

    pub fn labels(&self, side: Side) -> &[String] {
        match side {
            Side::X => &self.x_labels,
            Side::Y => &self.y_labels,
        }
    }

    pub fn label(&self, side: Side, v: usize) -> &str {
        &self.labels(side)[v]
    }

    /// Adjacency rows of one side, each a bit-vector over the other side.
    pub fn rows(&self, side: Side) -> &[BitSet] {
        match side {
            Side::X => &self.adj_x,
            Side::Y => &self.adj_y,
        }
    }

    pub fn row(&self, side: Side, v: usize) -> &BitSet {
        &self.rows(side)[v]
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        self.adj_x[x].contains(y)
    }

    pub fn degree(&self, side: Side, v: usize) -> usize {
        self.row(side, v).count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj_x.iter().map(BitSet::count).sum()
    }

    /// `N(S)` for a raw bit-vector on `side`.
    pub fn neighborhood_bits(&self, side: Side, set: &BitSet) -> BitSet {
        let rows = self.rows(side);
        let mut out = BitSet::new(self.part_len(side.opposite()));
        for v in set.iter() {
            out.union_with(&rows[v]);
        }
        out
    }

    /// `N(S)`, tagged with the opposite side. `N(∅) = ∅`.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        VertexSet::new(set.side.opposite(), self.neighborhood_bits(set.side, &set.bits))
    }

    pub fn is_complete(&self) -> bool {
        self.adj_x.iter().all(BitSet::is_full)
    }

    /// Breadth-first connectivity over the union of both parts.
    pub fn is_connected(&self) -> bool {
        let mut seen_x = BitSet::new(self.x_len());
        let mut seen_y = BitSet::new(self.y_len());
        seen_x.insert(0);
        let mut frontier_x = seen_x.clone();
        loop {
            let mut new_y = self.neighborhood_bits(Side::X, &frontier_x);
            new_y.difference_with(&seen_y);
            seen_y.union_with(&new_y);
            let mut new_x = self.neighborhood_bits(Side::Y, &new_y);
            new_x.difference_with(&seen_x);
            seen_x.union_with(&new_x);
            if new_x.is_empty() {
                break;
            }
            frontier_x = new_x;
        }
        seen_x.is_full() && seen_y.is_full()
    }

    /// Common degrees `(d(X), d(Y))` when both parts are regular.
    pub fn biregular_degrees(&self) -> Option<(usize, usize)> {
        Some((self.regular_degree(Side::X)?, self.regular_degree(Side::Y)?))
    }

    /// Common degree of the vertices on `side`, if uniform.
    pub fn regular_degree(&self, side: Side) -> Option<usize> {
        let d = self.degree(side, 0);
        (1..self.part_len(side))
            .all(|v| self.degree(side, v) == d)
            .then_some(d)
    }

    /// The same graph with the roles of `X` and `Y` exchanged.
    pub fn transpose(&self) -> BipartiteGraph {
        BipartiteGraph {
            x_labels: self.y_labels.clone(),
            y_labels: self.x_labels.clone(),
            adj_x: self.adj_y.clone(),
            adj_y: self.adj_x.clone(),
        }
    }

    /// Labels of the members of `set`, in vertex order.
    pub fn set_labels(&self, set: &VertexSet) -> Vec<String> {
        set.bits
            .iter()
            .map(|v| self.label(set.side, v).to_string())
            .collect()
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BipartiteGraph({}+{}, {} edges)",
            self.x_len(),
            self.y_len(),
            self.edge_count()
        )
    }
}
