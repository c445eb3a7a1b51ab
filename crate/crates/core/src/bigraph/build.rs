use std::fmt;

use rayon::prelude::*;

use super::BipartiteGraph;
use crate::bitset::BitSet;
use crate::exactmath::{
    binomial, cross_bound_permutations, cross_bound_sets, cross_bound_subspaces, factorial, BigNat,
};
use crate::fqlinalg::{combinations, enumerate_subspaces, intersection_dim, PrimeField};
use crate::perm::all_permutations;
use crate::{Budget, Error, Result};

/// `k`-subsets of `[n]` as bit masks (bit `i` is element `i+1`), in
/// lexicographic order of their sorted element lists.
pub fn subset_masks(n: u32, k: u32) -> Vec<u64> {
    combinations(n as usize, k as usize)
        .into_iter()
        .map(|c| c.into_iter().fold(0u64, |m, i| m | 1 << i))
        .collect()
}

/// `{1 2 5}` style label of a subset mask.
pub fn set_label(mask: u64) -> String {
    let elems: Vec<String> = (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", elems.join(" "))
}

fn check_part(what: &'static str, size: &BigNat, budget: &Budget) -> Result<usize> {
    if *size > BigNat::from(budget.vertices) {
        return Err(Error::budget(what, size, budget.vertices));
    }
    Ok(size.try_into().expect("fits in usize after budget check"))
}

fn rows_from<X: Sync, Y: Sync>(xs: &[X], ys: &[Y], edge: impl Fn(&X, &Y) -> bool + Sync) -> Vec<BitSet> {
    xs.par_iter()
        .map(|x| BitSet::from_indices(ys.len(), (0..ys.len()).filter(|&j| edge(x, &ys[j]))))
        .collect()
}

/// Cross-t-intersecting graph on `a`-subsets versus `b`-subsets of `[n]`:
/// `A ~ B` iff `|A ∩ B| < t`.
pub fn build_set_graph(n: u32, a: u32, b: u32, t: u32, budget: &Budget) -> Result<BipartiteGraph> {
    if n > 64 {
        return Err(Error::InvalidParameter(format!("n={n} exceeds 64")));
    }
    if a < 1 || b < 1 || a > n || b > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= a,b <= n, got a={a} b={b} n={n}"
        )));
    }
    if t < 1 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    check_part("a-subsets", &binomial(n, a as i64), budget)?;
    check_part("b-subsets", &binomial(n, b as i64), budget)?;
    let xs = subset_masks(n, a);
    let ys = subset_masks(n, b);
    let rows = rows_from(&xs, &ys, |x, y| (x & y).count_ones() < t);
    BipartiteGraph::from_rows(
        xs.iter().map(|&m| set_label(m)).collect(),
        ys.iter().map(|&m| set_label(m)).collect(),
        rows,
    )
}

/// Cross-t-intersecting graph on `a`-subspaces versus `b`-subspaces of
/// `F_q^n`: `A ~ B` iff `dim(A ∩ B) < t`. `q` must be prime.
pub fn build_subspace_graph(
    n: u32,
    q: u64,
    a: u32,
    b: u32,
    t: u32,
    budget: &Budget,
) -> Result<BipartiteGraph> {
    PrimeField::new(q)?;
    if a < 1 || b < 1 || a > n || b > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= a,b <= n, got a={a} b={b} n={n}"
        )));
    }
    if t < 1 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let xs = enumerate_subspaces(n as usize, q, a as usize, budget.vertices)?;
    let ys = enumerate_subspaces(n as usize, q, b as usize, budget.vertices)?;
    let rows = rows_from(&xs, &ys, |x, y| {
        intersection_dim(x, y).expect("same ambient space") < t as usize
    });
    BipartiteGraph::from_rows(
        xs.iter().map(|s| s.to_string()).collect(),
        ys.iter().map(|s| s.to_string()).collect(),
        rows,
    )
}

/// The Cayley graph on `S_n` generated by permutations with fewer than `t`
/// fixed points, as a bipartite double: both parts are `S_n` in
/// lexicographic one-line order, `σ ~ τ` iff they agree on fewer than `t`
/// points.
pub fn build_permutation_graph(n: u32, t: u32, budget: &Budget) -> Result<BipartiteGraph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("n={n} must be at least 3")));
    }
    if t < 1 || t + 2 > n {
        return Err(Error::InvalidParameter(format!("need 1 <= t <= n-2, got t={t}")));
    }
    check_part("permutations", &factorial(n), budget)?;
    let perms = all_permutations(n as usize);
    let rows = rows_from(&perms, &perms, |s, p| s.agreements(p) < t as usize);
    let labels: Vec<String> = perms.iter().map(|p| p.to_string()).collect();
    BipartiteGraph::from_rows(labels.clone(), labels, rows)
}

/// `x_i ~ y_j` iff `j ∈ {i, i+1, .., i+r-1} (mod n)`, vertices labelled
/// `x1..xn`, `y1..yn`.
pub fn build_circulant_graph(n: u32, r: u32) -> Result<BipartiteGraph> {
    if r < 1 || r >= n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= r < n, got r={r} n={n}"
        )));
    }
    let n = n as usize;
    let rows = (0..n)
        .map(|i| BitSet::from_indices(n, (0..r as usize).map(|s| (i + s) % n)))
        .collect();
    BipartiteGraph::from_rows(
        (1..=n).map(|i| format!("x{i}")).collect(),
        (1..=n).map(|i| format!("y{i}")).collect(),
        rows,
    )
}

/// A parameterized graph family with its canonical construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Sets { n: u32, a: u32, b: u32, t: u32 },
    Subspaces { n: u32, q: u64, a: u32, b: u32, t: u32 },
    Permutations { n: u32, t: u32 },
    Circulant { n: u32, r: u32 },
}

impl Family {
    /// Parses `name` (`sets`, `subspaces`, `perms`/`permutations`,
    /// `circulant`) with its positional integer parameters.
    pub fn parse(name: &str, params: &[u64]) -> Result<Family> {
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "family `{name}` takes {k} parameters, got {}",
                    params.len()
                )))
            }
        };
        let small = |v: u64| -> Result<u32> {
            u32::try_from(v).map_err(|_| Error::InvalidParameter(format!("parameter {v} too large")))
        };
        match name {
            "sets" => {
                arity(4)?;
                Ok(Family::Sets {
                    n: small(params[0])?,
                    a: small(params[1])?,
                    b: small(params[2])?,
                    t: small(params[3])?,
                })
            }
            "subspaces" => {
                arity(5)?;
                Ok(Family::Subspaces {
                    n: small(params[0])?,
                    q: params[1],
                    a: small(params[2])?,
                    b: small(params[3])?,
                    t: small(params[4])?,
                })
            }
            "perms" | "permutations" => {
                arity(2)?;
                Ok(Family::Permutations {
                    n: small(params[0])?,
                    t: small(params[1])?,
                })
            }
            "circulant" => {
                arity(2)?;
                Ok(Family::Circulant {
                    n: small(params[0])?,
                    r: small(params[1])?,
                })
            }
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Sets { .. } => "sets",
            Family::Subspaces { .. } => "subspaces",
            Family::Permutations { .. } => "perms",
            Family::Circulant { .. } => "circulant",
        }
    }

    pub fn params(&self) -> Vec<u64> {
        match *self {
            Family::Sets { n, a, b, t } => vec![n as u64, a as u64, b as u64, t as u64],
            Family::Subspaces { n, q, a, b, t } => vec![n as u64, q, a as u64, b as u64, t as u64],
            Family::Permutations { n, t } => vec![n as u64, t as u64],
            Family::Circulant { n, r } => vec![n as u64, r as u64],
        }
    }

    pub fn build(&self, budget: &Budget) -> Result<BipartiteGraph> {
        match *self {
            Family::Sets { n, a, b, t } => build_set_graph(n, a, b, t, budget),
            Family::Subspaces { n, q, a, b, t } => build_subspace_graph(n, q, a, b, t, budget),
            Family::Permutations { n, t } => build_permutation_graph(n, t, budget),
            Family::Circulant { n, r } => {
                if n as usize > budget.vertices {
                    return Err(Error::budget("circulant vertices", n, budget.vertices));
                }
                build_circulant_graph(n, r)
            }
        }
    }

    /// The closed-form bound on `|A| + |B|` with its side conditions
    /// checked. For the circulant family this is `n - r + 1`.
    pub fn bound(&self) -> Result<BigNat> {
        match *self {
            Family::Sets { n, a, b, t } => cross_bound_sets(n, a, b, t),
            Family::Subspaces { n, q, a, b, t } => cross_bound_subspaces(n, q, a, b, t),
            Family::Permutations { n, t } => cross_bound_permutations(n, t),
            Family::Circulant { n, r } => {
                if r < 1 || r >= n {
                    return Err(Error::hypothesis("1 <= r < n violated"));
                }
                Ok(BigNat::from(n - r + 1))
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(u64::to_string).collect();
        write!(f, "{}({})", self.name(), params.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::{Side, VertexSet};
    use crate::exactmath::{permutation_degree, set_degree, subspace_degree};

    fn budget() -> Budget {
        Budget::default()
    }

    fn degrees(g: &BipartiteGraph) -> (usize, usize) {
        g.biregular_degrees().expect("biregular")
    }

    #[test]
    fn set_graph_5221() {
        let g = build_set_graph(5, 2, 2, 1, &budget()).unwrap();
        assert_eq!((g.x_len(), g.y_len()), (10, 10));
        assert_eq!(degrees(&g), (3, 3));
        assert!(g.is_connected());
        assert_eq!(g.label(Side::X, 0), "{1 2}");
        let n = g.neighborhood(&VertexSet::from_indices(&g, Side::X, [0]));
        assert_eq!(g.set_labels(&n), ["{3 4}", "{3 5}", "{4 5}"]);
    }

    #[test]
    fn set_graph_degrees() {
        let g = build_set_graph(6, 2, 3, 1, &budget()).unwrap();
        assert_eq!((g.x_len(), g.y_len()), (15, 20));
        assert_eq!(degrees(&g), (4, 3));
        let g = build_set_graph(4, 2, 2, 2, &budget()).unwrap();
        assert_eq!((g.x_len(), g.y_len()), (6, 6));
        assert_eq!(degrees(&g), (5, 5));
    }

    #[test]
    fn set_graph_transpose_symmetry() {
        for (n, a, b, t) in [(6, 2, 3, 1), (7, 3, 2, 2), (5, 1, 4, 1)] {
            let g = build_set_graph(n, a, b, t, &budget()).unwrap();
            let h = build_set_graph(n, b, a, t, &budget()).unwrap();
            assert_eq!(g.transpose(), h);
        }
    }

    #[test]
    fn subspace_graphs() {
        let g = build_subspace_graph(4, 2, 2, 2, 1, &budget()).unwrap();
        assert_eq!((g.x_len(), g.y_len()), (35, 35));
        assert_eq!(degrees(&g), (16, 16));
        let g = build_subspace_graph(4, 2, 1, 1, 1, &budget()).unwrap();
        assert_eq!((g.x_len(), g.y_len()), (15, 15));
        assert_eq!(
            BigNat::from(degrees(&g).0),
            subspace_degree(4, 2, 1, 1, 1).unwrap()
        );
        assert_eq!(degrees(&g).0, 14);
        assert_eq!(
            build_subspace_graph(4, 4, 2, 2, 1, &budget()),
            Err(Error::NotPrime(4))
        );
    }

    #[test]
    fn permutation_graphs() {
        let g = build_permutation_graph(4, 1, &budget()).unwrap();
        assert_eq!((g.x_len(), g.y_len()), (24, 24));
        assert_eq!(degrees(&g), (9, 9));
        // N(id) = permutations with fewer than t fixed points
        for t in 1..=2u32 {
            let g = build_permutation_graph(4, t, &budget()).unwrap();
            let perms = all_permutations(4);
            let expected: Vec<usize> = (0..24)
                .filter(|&i| perms[i].fixed_points() < t as usize)
                .collect();
            assert_eq!(g.row(Side::X, 0).to_vec(), expected);
        }
        let g = build_permutation_graph(4, 2, &budget()).unwrap();
        assert_eq!(degrees(&g), (17, 17));
    }

    #[test]
    fn circulant_graphs() {
        let g = build_circulant_graph(5, 3).unwrap();
        assert_eq!(g.row(Side::X, 0).to_vec(), [0, 1, 2]);
        assert_eq!(degrees(&g), (3, 3));
        let n = g.neighborhood(&VertexSet::from_indices(&g, Side::X, [0, 1]));
        assert_eq!(g.set_labels(&n), ["y1", "y2", "y3", "y4"]);
        let m = build_circulant_graph(6, 1).unwrap();
        assert!((0..6).all(|i| m.row(Side::X, i).to_vec() == [i]));
        let g = build_circulant_graph(4, 2).unwrap();
        let n = g.neighborhood(&VertexSet::from_indices(&g, Side::X, [0, 1]));
        assert_eq!(g.set_labels(&n), ["y1", "y2", "y3"]);
        assert!(build_circulant_graph(4, 4).is_err());
    }

    #[test]
    fn budget_is_checked_before_building() {
        let tight = Budget {
            vertices: 100,
            ..Budget::default()
        };
        assert!(matches!(
            build_set_graph(10, 3, 3, 1, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            build_permutation_graph(5, 1, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            build_subspace_graph(5, 2, 2, 2, 1, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn measured_degrees_match_formulas() {
        for n in 4..=7u32 {
            for a in 1..n {
                for b in 1..n {
                    for t in 1..=a.min(b) {
                        let g = build_set_graph(n, a, b, t, &budget()).unwrap();
                        let (dx, dy) = degrees(&g);
                        assert_eq!(BigNat::from(dx), set_degree(n, a, b, t).unwrap());
                        assert_eq!(BigNat::from(dy), set_degree(n, b, a, t).unwrap());
                        assert_eq!(dx * g.x_len(), dy * g.y_len());
                    }
                }
            }
        }
        for (n, q, a, b, t) in [(4, 2, 2, 2, 1), (4, 3, 1, 2, 1), (4, 2, 3, 2, 2), (3, 5, 1, 2, 1)] {
            let g = build_subspace_graph(n, q, a, b, t, &budget()).unwrap();
            let (dx, dy) = degrees(&g);
            assert_eq!(BigNat::from(dx), subspace_degree(n, q, a, b, t).unwrap());
            assert_eq!(BigNat::from(dy), subspace_degree(n, q, b, a, t).unwrap());
        }
        for (n, t) in [(4, 1), (4, 2), (5, 1), (5, 2), (5, 3)] {
            let g = build_permutation_graph(n, t, &budget()).unwrap();
            let (dx, dy) = degrees(&g);
            assert_eq!(dx, dy);
            assert_eq!(BigNat::from(dx), permutation_degree(n, t).unwrap());
        }
        for n in 2..9 {
            for r in 1..n {
                assert_eq!(
                    degrees(&build_circulant_graph(n, r).unwrap()),
                    (r as usize, r as usize)
                );
            }
        }
    }

    #[test]
    fn family_parse_and_display() {
        let f = Family::parse("sets", &[5, 2, 2, 1]).unwrap();
        assert_eq!(f.to_string(), "sets(5,2,2,1)");
        assert_eq!(Family::parse("permutations", &[4, 2]).unwrap().name(), "perms");
        assert!(Family::parse("sets", &[5, 2]).is_err());
        assert_eq!(
            Family::parse("graphs", &[]),
            Err(Error::UnknownFamily("graphs".into()))
        );
    }
}
