use crate::bigraph::{BipartiteGraph, Side};
use crate::bitset::BitSet;

const NONE: usize = usize::MAX;

/// A maximum matching; `pairing[x]` is the partner of `x` in `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    pub size: usize,
    pub pairing: Vec<Option<usize>>,
}

/// Maximum matching of the whole graph.
pub fn max_matching(g: &BipartiteGraph) -> MatchingResult {
    max_matching_within(g, &BitSet::full(g.x_len()), &BitSet::full(g.y_len()))
}

/// Maximum matching of the subgraph induced by `xs ∪ ys`, by layered
/// augmenting-path phases. Vertices and edges are scanned in increasing
/// index order, so the result is deterministic.
pub fn max_matching_within(g: &BipartiteGraph, xs: &BitSet, ys: &BitSet) -> MatchingResult {
    let nx = g.x_len();
    let adj: Vec<Vec<usize>> = (0..nx)
        .map(|x| {
            if xs.contains(x) {
                g.row(Side::X, x).intersection(ys).to_vec()
            } else {
                Vec::new()
            }
        })
        .collect();
    let left: Vec<usize> = xs.to_vec();
    let mut match_x = vec![NONE; nx];
    let mut match_y = vec![NONE; g.y_len()];
    let mut dist = vec![NONE; nx];
    let mut size = 0;
    let mut queue = Vec::with_capacity(left.len());
    loop {
        queue.clear();
        for &x in &left {
            if match_x[x] == NONE {
                dist[x] = 0;
                queue.push(x);
            } else {
                dist[x] = NONE;
            }
        }
        let mut found = false;
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &y in &adj[x] {
                let w = match_y[y];
                if w == NONE {
                    found = true;
                } else if dist[w] == NONE {
                    dist[w] = dist[x] + 1;
                    queue.push(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; nx];
        for &x in &left {
            if match_x[x] == NONE && augment(x, &adj, &mut match_x, &mut match_y, &mut dist, &mut next) {
                size += 1;
            }
        }
    }
    MatchingResult {
        size,
        pairing: match_x.into_iter().map(|y| (y != NONE).then_some(y)).collect(),
    }
}

/// Depth-first search for an augmenting path from `root` along the layers
/// in `dist`, with an explicit stack.
fn augment(
    root: usize,
    adj: &[Vec<usize>],
    match_x: &mut [usize],
    match_y: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&u) = stack.last() {
        if next[u] == adj[u].len() {
            dist[u] = NONE;
            stack.pop();
            continue;
        }
        let y = adj[u][next[u]];
        next[u] += 1;
        let w = match_y[y];
        if w == NONE {
            for &v in &stack {
                let vy = adj[v][next[v] - 1];
                match_x[v] = vy;
                match_y[vy] = v;
            }
            return true;
        }
        if dist[w] != NONE && dist[w] == dist[u] + 1 {
            stack.push(w);
        }
    }
    false
}

/// Maximum independent set of the subgraph induced by `xs ∪ ys`, as the
/// complement of a König minimum vertex cover.
pub fn max_independent_within(g: &BipartiteGraph, xs: &BitSet, ys: &BitSet) -> (BitSet, BitSet) {
    let m = max_matching_within(g, xs, ys);
    // Z: reachable from unmatched X vertices by alternating paths
    let mut zx = BitSet::new(g.x_len());
    let mut zy = BitSet::new(g.y_len());
    let mut stack: Vec<usize> = xs.iter().filter(|&x| m.pairing[x].is_none()).collect();
    for &x in &stack {
        zx.insert(x);
    }
    let mut match_y = vec![NONE; g.y_len()];
    for (x, y) in m.pairing.iter().enumerate() {
        if let Some(y) = *y {
            match_y[y] = x;
        }
    }
    while let Some(x) = stack.pop() {
        for y in g.row(Side::X, x).intersection(ys).iter() {
            if zy.contains(y) {
                continue;
            }
            zy.insert(y);
            let w = match_y[y];
            if w != NONE && !zx.contains(w) {
                zx.insert(w);
                stack.push(w);
            }
        }
    }
    // cover = (X \ Z) ∪ (Y ∩ Z); independent set is its complement
    let a = xs.intersection(&zx);
    let b = ys.difference(&zy);
    assert_eq!(
        a.count() + b.count() + m.size,
        xs.count() + ys.count(),
        "König complement has the wrong size"
    );
    (a, b)
}
