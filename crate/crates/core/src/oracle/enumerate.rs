use super::{alpha_nontrivial, NontrivialMisResult};
use crate::bigraph::{BipartiteGraph, Side, VertexSet};
use crate::bitset::BitSet;
use crate::{Budget, Error, Result};

struct Search {
    compat: Vec<BitSet>,
    nx: usize,
    target: usize,
    calls: usize,
    cap: usize,
    found: Vec<BitSet>,
}

impl Search {
    fn expand(&mut self, r: &mut Vec<usize>, p: BitSet, mut excl: BitSet) -> Result<()> {
        self.calls += 1;
        if self.calls > self.cap {
            return Err(Error::CapExceeded(self.cap));
        }
        if p.is_empty() {
            if excl.is_empty() {
                let mut clique = BitSet::new(p.len());
                r.iter().for_each(|&v| clique.insert(v));
                self.found.push(clique);
            }
            return Ok(());
        }
        if r.len() + p.count() < self.target {
            return Ok(());
        }
        let pivot = p
            .iter()
            .chain(excl.iter())
            .max_by_key(|&u| (p.intersection_count(&self.compat[u]), std::cmp::Reverse(u)))
            .expect("p is nonempty");
        let mut p = p;
        for v in p.difference(&self.compat[pivot]).iter() {
            r.push(v);
            self.expand(
                r,
                p.intersection(&self.compat[v]),
                excl.intersection(&self.compat[v]),
            )?;
            r.pop();
            p.remove(v);
            excl.insert(v);
            if r.len() + p.count() < self.target {
                break;
            }
        }
        Ok(())
    }
}

/// Every maximum nontrivial independent set, in canonical order.
///
/// Runs pivoting Bron–Kerbosch on the "not adjacent" relation over
/// `X ∪ Y` (vertices in the same part are always compatible), keeps the
/// maximal independent sets of size `α` that meet both parts, and
/// discards branches that cannot reach size `α`.
pub fn enumerate_max_nontrivial(g: &BipartiteGraph, budget: &Budget) -> Result<Vec<NontrivialMisResult>> {
    let (nx, ny) = (g.x_len(), g.y_len());
    if nx + ny > budget.enumeration_vertices {
        return Err(Error::budget(
            "enumeration vertices",
            nx + ny,
            budget.enumeration_vertices,
        ));
    }
    let alpha = alpha_nontrivial(g)?.size;
    let total = nx + ny;
    let mut compat = Vec::with_capacity(total);
    for x in 0..nx {
        let mut c = BitSet::new(total);
        (0..nx).filter(|&u| u != x).for_each(|u| c.insert(u));
        let row = g.row(Side::X, x);
        (0..ny)
            .filter(|&y| !row.contains(y))
            .for_each(|y| c.insert(nx + y));
        compat.push(c);
    }
    for y in 0..ny {
        let mut c = BitSet::new(total);
        (0..ny).filter(|&u| u != y).for_each(|u| c.insert(nx + u));
        let row = g.row(Side::Y, y);
        (0..nx).filter(|&x| !row.contains(x)).for_each(|x| c.insert(x));
        compat.push(c);
    }
    let mut search = Search {
        compat,
        nx,
        target: alpha,
        calls: 0,
        cap: budget.subsets,
        found: Vec::new(),
    };
    search.expand(&mut Vec::new(), BitSet::full(total), BitSet::new(total))?;
    let mut out: Vec<NontrivialMisResult> = search
        .found
        .into_iter()
        .filter(|c| c.count() == alpha)
        .map(|c| {
            let a = BitSet::from_indices(nx, c.iter().filter(|&v| v < search.nx));
            let b = BitSet::from_indices(ny, c.iter().filter(|&v| v >= search.nx).map(|v| v - search.nx));
            NontrivialMisResult {
                size: alpha,
                a: VertexSet::new(Side::X, a),
                b: VertexSet::new(Side::Y, b),
            }
        })
        .filter(|r| !r.a.is_empty() && !r.b.is_empty())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}
