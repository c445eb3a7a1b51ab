use super::*;
use crate::bigraph::Family;
use crate::bigraph::{build_circulant_graph, build_permutation_graph, build_set_graph};
use crate::groupact::{induced_symmetric_action, PartPermutation};
use crate::Budget;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn complete(a: usize, b: usize) -> BipartiteGraph {
    BipartiteGraph::from_edges(a, b, (0..a).flat_map(|x| (0..b).map(move |y| (x, y)))).unwrap()
}

fn random_graph(rng: &mut ChaCha8Rng, max_x: usize, max_y: usize) -> BipartiteGraph {
    let nx = rng.gen_range(1..=max_x);
    let ny = rng.gen_range(1..=max_y);
    let p: f64 = rng.gen_range(0.1..0.9);
    let edges: Vec<_> = (0..nx)
        .flat_map(|x| (0..ny).map(move |y| (x, y)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    BipartiteGraph::from_edges(nx, ny, edges).unwrap()
}

/// Exponential oracle: for every subset A of X, the best independent set
/// containing exactly A on the X side is A ∪ (Y \ N(A)).
fn brute_mis(g: &BipartiteGraph, nontrivial: bool) -> Option<usize> {
    let nx = g.x_len();
    let mut best = None;
    for mask in 0u64..1 << nx {
        let a = BitSet::from_indices(nx, (0..nx).filter(|&i| mask >> i & 1 == 1));
        let free = g.y_len() - g.neighborhood_bits(Side::X, &a).count();
        if nontrivial && (a.is_empty() || free == 0) {
            continue;
        }
        let s = a.count() + free;
        best = Some(best.map_or(s, |b: usize| b.max(s)));
    }
    best
}

fn brute_matching(g: &BipartiteGraph) -> usize {
    fn go(g: &BipartiteGraph, x: usize, used: &mut Vec<bool>) -> usize {
        if x == g.x_len() {
            return 0;
        }
        let mut best = go(g, x + 1, used);
        for y in g.row(Side::X, x).iter() {
            if !used[y] {
                used[y] = true;
                best = best.max(1 + go(g, x + 1, used));
                used[y] = false;
            }
        }
        best
    }
    go(g, 0, &mut vec![false; g.y_len()])
}

fn check_matching(g: &BipartiteGraph, m: &MatchingResult) {
    let mut seen = std::collections::HashSet::new();
    let mut n = 0;
    for (x, y) in m.pairing.iter().enumerate() {
        if let Some(y) = *y {
            assert!(g.adjacent(x, y));
            assert!(seen.insert(y));
            n += 1;
        }
    }
    assert_eq!(n, m.size);
}

#[test]
fn matching_examples() {
    assert_eq!(max_matching(&complete(3, 3)).size, 3);
    for n in 2..8 {
        let g = build_circulant_graph(n, 1).unwrap();
        assert_eq!(max_matching(&g).size, n as usize);
    }
    let g = build_set_graph(5, 2, 2, 1, &Budget::default()).unwrap();
    let m = max_matching(&g);
    check_matching(&g, &m);
    assert_eq!(m.size, 10);
    assert_eq!(brute_matching(&g), 10);
}

#[test]
fn mis_examples() {
    let g = BipartiteGraph::from_edges(3, 4, []).unwrap();
    assert_eq!(max_independent_set(&g).size(), 7);
    for (a, b) in [(1, 1), (2, 5), (4, 3), (3, 3)] {
        assert_eq!(max_independent_set(&complete(a, b)).size(), a.max(b));
    }
}

#[test]
fn konig_and_mis_match_brute_force_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let g = random_graph(&mut rng, 10, 10);
        let m = max_matching(&g);
        check_matching(&g, &m);
        assert_eq!(m.size, brute_matching(&g));
        let mis = max_independent_set(&g);
        assert_eq!(mis.size(), g.x_len() + g.y_len() - m.size);
        assert_eq!(Some(mis.size()), brute_mis(&g, false));
    }
}

#[test]
fn alpha_examples() {
    let b = Budget::default();
    let g = build_set_graph(5, 2, 2, 1, &b).unwrap();
    assert_eq!(alpha_nontrivial(&g).unwrap().size, 8);

    let g = build_circulant_graph(5, 3).unwrap();
    let r = alpha_nontrivial(&g).unwrap();
    assert_eq!(r.size, 3);
    assert_eq!(g.set_labels(&r.a), ["x1", "x2"]);
    assert_eq!(g.set_labels(&r.b), ["y5"]);

    let g = build_permutation_graph(4, 1, &b).unwrap();
    assert_eq!(alpha_nontrivial(&g).unwrap().size, 16);

    assert!(matches!(
        alpha_nontrivial(&complete(2, 3)),
        Err(Error::CompleteGraph)
    ));
}

#[test]
fn alpha_matches_brute_force_and_epsilon() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tested = 0;
    while tested < 150 {
        let g = random_graph(&mut rng, 9, 9);
        if g.is_complete() {
            continue;
        }
        tested += 1;
        let r = alpha_nontrivial(&g).unwrap();
        assert!(!r.a.is_empty() && !r.b.is_empty());
        assert!(is_independent(&g, &r.a.bits, &r.b.bits));
        assert_eq!(r.a.len() + r.b.len(), r.size);
        assert_eq!(Some(r.size), brute_mis(&g, true));
        let ex = epsilon_bruteforce(&g, Side::X).unwrap();
        let ey = epsilon_bruteforce(&g, Side::Y).unwrap();
        let via = (g.y_len() as i64 - ex).max(g.x_len() as i64 - ey);
        assert_eq!(via, r.size as i64);
        assert_eq!(g.y_len() as i64 - ex, g.x_len() as i64 - ey);
    }
}

#[test]
fn epsilon_examples() {
    let b = Budget::default();
    let g = build_circulant_graph(5, 3).unwrap();
    assert_eq!(epsilon_bruteforce(&g, Side::X).unwrap(), 2);
    let g = build_set_graph(5, 2, 2, 1, &b).unwrap();
    assert_eq!(epsilon_bruteforce(&g, Side::X).unwrap(), 2);
    let g = build_set_graph(6, 2, 3, 1, &b).unwrap();
    assert_eq!(epsilon_bruteforce(&g, Side::X).unwrap(), 3);
    assert!(matches!(
        epsilon_bruteforce(&complete(2, 2), Side::X),
        Err(Error::CompleteGraph)
    ));
    let big = BipartiteGraph::from_edges(25, 1, []).unwrap();
    assert!(matches!(
        epsilon_bruteforce(&big, Side::X),
        Err(Error::BudgetExceeded { .. })
    ));
    // an isolated X vertex gives a negative surplus
    let g = BipartiteGraph::from_edges(2, 2, [(0, 0)]).unwrap();
    assert_eq!(epsilon_bruteforce(&g, Side::X).unwrap(), -1);
}

fn saturated(g: &BipartiteGraph, r: &NontrivialMisResult) -> bool {
    g.neighborhood_bits(Side::X, &r.a.bits).complement() == r.b.bits
        && g.neighborhood_bits(Side::Y, &r.b.bits).complement() == r.a.bits
}

#[test]
fn enumeration_sets_5221() {
    let g = build_set_graph(5, 2, 2, 1, &Budget::default()).unwrap();
    let all = enumerate_max_nontrivial(&g, &Budget::default()).unwrap();
    assert_eq!(all.len(), 25);
    assert!(all.iter().all(|r| r.size == 8 && saturated(&g, r)));
    let singles_x = all.iter().filter(|r| r.a.len() == 1).count();
    let singles_y = all.iter().filter(|r| r.b.len() == 1).count();
    assert_eq!((singles_x, singles_y), (10, 10));
    // the star pairs: every 2-set through a common point on both sides
    let stars = all.iter().filter(|r| r.a.len() == 4 && r.b.len() == 4).count();
    assert_eq!(stars, 5);
}

#[test]
fn enumeration_circulant_and_sets_5332() {
    let g = build_circulant_graph(5, 3).unwrap();
    let all = enumerate_max_nontrivial(&g, &Budget::default()).unwrap();
    for i in 0..5 {
        let a = BitSet::from_indices(5, [i, (i + 1) % 5]);
        let b = BitSet::from_indices(5, [(i + 4) % 5]);
        assert!(all.iter().any(|r| r.a.bits == a && r.b.bits == b));
    }
    assert!(all.iter().all(|r| saturated(&g, r)));

    let g = build_set_graph(5, 3, 3, 2, &Budget::default()).unwrap();
    let all = enumerate_max_nontrivial(&g, &Budget::default()).unwrap();
    let fours: Vec<_> = all.iter().filter(|r| r.a.len() == 4 && r.b.len() == 4).collect();
    assert_eq!(fours.len(), 5);
    assert!(fours.iter().all(|r| r.a.bits == r.b.bits));
}

#[test]
fn enumeration_cap() {
    let g = build_set_graph(5, 2, 2, 1, &Budget::default()).unwrap();
    let tight = Budget {
        subsets: 3,
        ..Budget::default()
    };
    assert!(matches!(
        enumerate_max_nontrivial(&g, &tight),
        Err(Error::CapExceeded(3))
    ));
    let small = Budget {
        enumeration_vertices: 10,
        ..Budget::default()
    };
    assert!(matches!(
        enumerate_max_nontrivial(&g, &small),
        Err(Error::BudgetExceeded { .. })
    ));
}

fn relabel(g: &BipartiteGraph, px: &PartPermutation, py: &PartPermutation) -> BipartiteGraph {
    let edges: Vec<_> = (0..g.x_len())
        .flat_map(|x| g.row(Side::X, x).iter().map(move |y| (x, y)))
        .map(|(x, y)| (px.apply(x), py.apply(y)))
        .collect();
    BipartiteGraph::from_edges(g.x_len(), g.y_len(), edges).unwrap()
}

#[test]
fn alpha_invariant_under_generators() {
    let b = Budget::default();
    for fam in [
        Family::Sets {
            n: 5,
            a: 2,
            b: 2,
            t: 1,
        },
        Family::Permutations { n: 4, t: 1 },
    ] {
        let g = fam.build(&b).unwrap();
        let act = induced_symmetric_action(&fam, &g).unwrap();
        let alpha = alpha_nontrivial(&g).unwrap().size;
        for (px, py) in act.generators() {
            let h = relabel(&g, px, py);
            assert_eq!(h.rows(Side::X), g.rows(Side::X));
            assert_eq!(alpha_nontrivial(&h).unwrap().size, alpha);
        }
    }
    // a random relabeling that is not an automorphism still preserves α
    let g = build_circulant_graph(7, 3).unwrap();
    let px = PartPermutation::new(vec![3, 0, 6, 1, 5, 2, 4]).unwrap();
    let py = PartPermutation::new(vec![1, 2, 0, 4, 3, 6, 5]).unwrap();
    let h = relabel(&g, &px, &py);
    assert_eq!(
        alpha_nontrivial(&h).unwrap().size,
        alpha_nontrivial(&g).unwrap().size
    );
}

#[test]
fn witness_is_lex_least_enumerated_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut tested = 0;
    while tested < 60 {
        let g = random_graph(&mut rng, 7, 7);
        if g.is_complete() {
            continue;
        }
        tested += 1;
        let key = |r: &NontrivialMisResult| {
            let mut v = r.a.bits.to_vec();
            v.extend(r.b.bits.iter().map(|y| g.x_len() + y));
            v
        };
        let all = enumerate_max_nontrivial(&g, &Budget::default()).unwrap();
        let least = all.iter().min_by_key(|r| key(r)).unwrap();
        assert_eq!(key(&alpha_nontrivial(&g).unwrap()), key(least));
    }
}
