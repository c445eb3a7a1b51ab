use super::*;
use crate::bigraph::{build_circulant_graph, build_permutation_graph, build_set_graph, Family};
use crate::groupact::{induced_symmetric_action, natural_action, PartPermutation};
use crate::oracle::{enumerate_max_nontrivial, epsilon_bruteforce};
use crate::perm::{all_permutations, Perm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn b() -> Budget {
    Budget::default()
}

fn set(g: &BipartiteGraph, side: Side, idx: impl IntoIterator<Item = usize>) -> VertexSet {
    VertexSet::from_indices(g, side, idx)
}

/// Every subset scanned directly against the brute-force ε.
fn brute_fragments(g: &BipartiteGraph, side: Side) -> Vec<BitSet> {
    let n = g.part_len(side);
    let eps = epsilon_bruteforce(g, side).unwrap();
    let mut out = Vec::new();
    for mask in 1u64..1 << n {
        let s = BitSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1));
        let nb = g.neighborhood_bits(side, &s);
        if !nb.is_full() && nb.count() as i64 - s.count() as i64 == eps {
            out.push(s);
        }
    }
    out.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
    out
}

fn perm_index(n: usize, images: &[u8]) -> usize {
    let p = Perm::from_images(images.to_vec()).unwrap();
    all_permutations(n).iter().position(|q| *q == p).unwrap()
}

#[test]
fn epsilon_examples() {
    let g = build_set_graph(5, 2, 2, 1, &b()).unwrap();
    assert_eq!(epsilon(&g, Side::X).unwrap(), 2);
    assert_eq!(epsilon_bruteforce(&g, Side::X).unwrap(), 2);
    let g = build_permutation_graph(4, 1, &b()).unwrap();
    assert_eq!(epsilon(&g, Side::X).unwrap(), 8);
    let g = build_circulant_graph(5, 3).unwrap();
    assert_eq!(epsilon(&g, Side::X).unwrap(), 2);
}

#[test]
fn singletons_are_fragments() {
    for fam in [
        Family::Sets {
            n: 5,
            a: 2,
            b: 2,
            t: 1,
        },
        Family::Sets {
            n: 6,
            a: 2,
            b: 3,
            t: 1,
        },
        Family::Permutations { n: 4, t: 1 },
        Family::Permutations { n: 4, t: 2 },
        Family::Subspaces {
            n: 4,
            q: 2,
            a: 2,
            b: 2,
            t: 1,
        },
    ] {
        let g = fam.build(&b()).unwrap();
        let ctx = FragmentContext::new(&g).unwrap();
        for x in 0..g.x_len() {
            assert!(ctx.is_fragment(&set(&g, Side::X, [x])).unwrap(), "{fam} x={x}");
        }
    }
}

#[test]
fn klein_and_alternating_groups_are_not_fragments() {
    let v4 = [
        perm_index(4, &[0, 1, 2, 3]),
        perm_index(4, &[1, 0, 3, 2]),
        perm_index(4, &[2, 3, 0, 1]),
        perm_index(4, &[3, 2, 1, 0]),
    ];
    let a4: Vec<usize> = all_permutations(4)
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_even())
        .map(|(i, _)| i)
        .collect();
    assert_eq!(a4.len(), 12);
    for t in [1, 2] {
        let g = build_permutation_graph(4, t, &b()).unwrap();
        assert!(!is_fragment(&g, &set(&g, Side::X, v4)).unwrap());
    }
    let g = build_permutation_graph(4, 1, &b()).unwrap();
    let s = set(&g, Side::X, a4);
    assert!(!is_fragment(&g, &s).unwrap());
    assert!(g.neighborhood(&s).bits.is_full());
    assert!(matches!(
        is_fragment(&g, &VertexSet::empty(&g, Side::X)),
        Err(Error::EmptySet)
    ));
}

#[test]
fn phi_examples() {
    let g = build_set_graph(6, 2, 3, 1, &b()).unwrap();
    let ctx = FragmentContext::new(&g).unwrap();
    assert_eq!(ctx.alpha(), 17);
    let f = ctx.record(&set(&g, Side::X, [0])).unwrap();
    let p = ctx.phi(&f).unwrap();
    assert_eq!(p.side, Side::Y);
    assert_eq!(p.len(), 16);
    // the 16 3-sets meeting {1 2}
    let masks = crate::bigraph::subset_masks(6, 3);
    assert!(p.members.bits.iter().all(|i| masks[i] & 0b11 != 0));
    assert_eq!(ctx.phi(&p).unwrap().members, f.members);

    let g = build_set_graph(5, 2, 2, 1, &b()).unwrap();
    let ctx = FragmentContext::new(&g).unwrap();
    let masks = crate::bigraph::subset_masks(5, 2);
    for i in 0..5 {
        let star: Vec<usize> = (0..10).filter(|&j| masks[j] >> i & 1 == 1).collect();
        let f = ctx.record(&set(&g, Side::X, star.clone())).unwrap();
        assert!(f.is_balanced && !f.is_trivial);
        let p = ctx.phi(&f).unwrap();
        assert_eq!(p.members, set(&g, Side::Y, star));
    }
    let not = ctx.record(&set(&g, Side::X, [0, 9]));
    assert!(matches!(not, Err(Error::NotAFragment)));
}

#[test]
fn census_sets_6231_is_all_singletons() {
    let g = build_set_graph(6, 2, 3, 1, &b()).unwrap();
    let all = enumerate_fragments(&g, Side::X, EnumerationMode::Exhaustive, &b()).unwrap();
    assert_eq!(all.len(), 15);
    assert!(all.iter().all(|f| f.len() == 1 && f.is_trivial));
}

#[test]
fn census_sets_5221_and_classification() {
    let fam = Family::Sets {
        n: 5,
        a: 2,
        b: 2,
        t: 1,
    };
    let g = fam.build(&b()).unwrap();
    let mut all = enumerate_fragments(&g, Side::X, EnumerationMode::Exhaustive, &b()).unwrap();
    let count = |k: usize| all.iter().filter(|f| f.len() == k).count();
    assert_eq!((count(1), count(4), count(7)), (10, 5, 10));
    assert_eq!(all.len(), 25);
    let action = induced_symmetric_action(&fam, &g).unwrap();
    classify_semi_imprimitive(&mut all, &action, 1000).unwrap();
    for f in &all {
        match f.len() {
            1 => assert!(f.is_trivial && f.is_semi_imprimitive == Some(false)),
            4 => assert!(!f.is_trivial && f.is_balanced && f.is_semi_imprimitive == Some(true)),
            7 => assert!(f.is_trivial && !f.is_balanced),
            _ => unreachable!(),
        }
    }
}

#[test]
fn census_circulant_5_3() {
    let g = build_circulant_graph(5, 3).unwrap();
    let all = enumerate_fragments(&g, Side::X, EnumerationMode::Exhaustive, &b()).unwrap();
    let pairs: Vec<Vec<usize>> = all
        .iter()
        .filter(|f| f.len() == 2)
        .map(|f| f.members.bits.to_vec())
        .collect();
    assert_eq!(
        pairs,
        [vec![0, 1], vec![0, 4], vec![1, 2], vec![2, 3], vec![3, 4]]
    );
    assert_eq!(all.len(), 10);
}

#[test]
fn enumeration_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tested = 0;
    while tested < 80 {
        let nx = rng.gen_range(2..=9);
        let ny = rng.gen_range(2..=9);
        let p = rng.gen_range(0.2..0.8);
        let edges: Vec<_> = (0..nx)
            .flat_map(|x| (0..ny).map(move |y| (x, y)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = BipartiteGraph::from_edges(nx, ny, edges).unwrap();
        if g.is_complete() {
            continue;
        }
        tested += 1;
        let ctx = FragmentContext::new(&g).unwrap();
        for side in [Side::X, Side::Y] {
            let got: Vec<BitSet> = ctx
                .enumerate(side, EnumerationMode::Exhaustive, &b())
                .unwrap()
                .into_iter()
                .map(|f| f.members.bits)
                .collect();
            let want = brute_fragments(&g, side);
            assert_eq!(got, want);
            let bounded: Vec<BitSet> = ctx
                .enumerate(side, EnumerationMode::Bounded(2), &b())
                .unwrap()
                .into_iter()
                .map(|f| f.members.bits)
                .collect();
            let want2: Vec<BitSet> = want.into_iter().filter(|s| s.count() <= 2).collect();
            assert_eq!(bounded, want2);
        }
    }
}

#[test]
fn enumeration_budgets() {
    let g = BipartiteGraph::from_edges(25, 2, [(0, 0)]).unwrap();
    let ctx = FragmentContext::new(&g).unwrap();
    assert!(matches!(
        ctx.enumerate(Side::X, EnumerationMode::Exhaustive, &b()),
        Err(Error::BudgetExceeded { .. })
    ));
    let g = build_set_graph(6, 2, 3, 1, &b()).unwrap();
    let tight = Budget { subsets: 5, ..b() };
    assert!(matches!(
        enumerate_fragments(&g, Side::X, EnumerationMode::Exhaustive, &tight),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn two_fragment_graphs() {
    let g = build_circulant_graph(5, 3).unwrap();
    let ctx = FragmentContext::new(&g).unwrap();
    let h = two_fragment_graph(&ctx, Side::X).unwrap();
    assert!(h.is_hamiltonian_cycle());
    assert_eq!(h.edges, [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);

    let g = build_set_graph(5, 2, 2, 1, &b()).unwrap();
    let ctx = FragmentContext::new(&g).unwrap();
    let h = two_fragment_graph(&ctx, Side::X).unwrap();
    assert!(h.is_empty());
    assert!(h.components.iter().all(|c| c.1 == ComponentShape::Isolated));
    // pair rule: |N(x) ∩ N(y)| = d - 1 never holds here
    let d = g.regular_degree(Side::X).unwrap();
    for x in 0..10 {
        for y in x + 1..10 {
            assert!(g.row(Side::X, x).intersection_count(g.row(Side::X, y)) < d - 1);
        }
    }

    let g = build_permutation_graph(4, 1, &b()).unwrap();
    let ctx = FragmentContext::new(&g).unwrap();
    assert!(two_fragment_graph(&ctx, Side::X).unwrap().is_empty());

    let g = BipartiteGraph::from_edges(2, 2, [(0, 0)]).unwrap();
    let ctx = FragmentContext::with_alpha(&g, 3);
    assert!(matches!(
        two_fragment_graph(&ctx, Side::X),
        Err(Error::NotRegular)
    ));
}

#[test]
fn closure_examples() {
    let g = build_circulant_graph(6, 3).unwrap();
    let ctx = FragmentContext::new(&g).unwrap();
    assert_eq!(ctx.epsilon(Side::X), 2);
    let r = check_closure(&ctx, &set(&g, Side::X, [0, 1]), &set(&g, Side::X, [1, 2])).unwrap();
    assert!(r.hypotheses_hold());
    assert_eq!(r.meet_is_fragment, Some(true));
    assert!(r.union_is_fragment);
    assert!(r.implication_holds());

    let r = check_closure(&ctx, &set(&g, Side::X, [0, 1]), &set(&g, Side::X, [3, 4])).unwrap();
    assert!(!r.meet_nonempty && !r.hypotheses_hold() && r.implication_holds());
    assert_eq!(r.meet_is_fragment, None);

    assert!(matches!(
        check_closure(&ctx, &set(&g, Side::X, [0]), &set(&g, Side::Y, [0])),
        Err(Error::SideMismatch)
    ));
}

#[test]
fn group_closure_on_circulant_rotations() {
    let fam = Family::Circulant { n: 6, r: 3 };
    let g = fam.build(&b()).unwrap();
    let action = natural_action(&fam, &g).unwrap();
    let ctx = FragmentContext::new(&g).unwrap();
    let a = set(&g, Side::X, [0, 1]);
    let reports = check_orbit_closure(&ctx, &action, &a, 100).unwrap();
    assert_eq!(reports.len(), 6);
    let applicable: Vec<_> = reports.iter().filter(|r| r.hypotheses_hold()).collect();
    // {x1,x2} overlaps its rotations by one and minus one
    assert_eq!(applicable.len(), 2);
    assert!(reports.iter().all(GroupClosureReport::implication_holds));

    let rot = PartPermutation::new(vec![1, 2, 3, 4, 5, 0]).unwrap();
    let r = check_group_closure(&ctx, &action, &rot, &a).unwrap();
    assert!(r.hypotheses_hold() && r.implication_holds());
    assert_eq!(r.image, set(&g, Side::X, [1, 2]));

    // every fragment of every small circulant satisfies both rules
    for n in 4..9 {
        for rr in 1..n {
            let fam = Family::Circulant { n, r: rr };
            let g = fam.build(&b()).unwrap();
            let action = natural_action(&fam, &g).unwrap();
            let ctx = FragmentContext::new(&g).unwrap();
            let frags = ctx.enumerate(Side::X, EnumerationMode::Exhaustive, &b()).unwrap();
            for f in &frags {
                for r in check_orbit_closure(&ctx, &action, &f.members, 1000).unwrap() {
                    assert!(r.implication_holds());
                }
                for h in &frags {
                    assert!(check_closure(&ctx, &f.members, &h.members)
                        .unwrap()
                        .implication_holds());
                }
            }
        }
    }
}

#[test]
fn cayley_identity_examples() {
    let g = build_permutation_graph(4, 1, &b()).unwrap();
    let id = cayley_neighborhood_identity(&g, 4, 1, &set(&g, Side::X, [0])).unwrap();
    assert!(id.product_matches && id.fragment_condition);

    let v4 = [
        0,
        perm_index(4, &[1, 0, 3, 2]),
        perm_index(4, &[2, 3, 0, 1]),
        perm_index(4, &[3, 2, 1, 0]),
    ];
    let r = cayley_neighborhood_identity(&g, 4, 1, &set(&g, Side::X, v4)).unwrap();
    assert!(r.product_matches && !r.fragment_condition);

    let a4: Vec<usize> = (0..24).filter(|&i| all_permutations(4)[i].is_even()).collect();
    let s = set(&g, Side::X, a4);
    let r = cayley_neighborhood_identity(&g, 4, 1, &s).unwrap();
    assert!(r.product_matches && !r.fragment_condition);
    assert!(g.neighborhood(&s).bits.is_full());

    assert!(matches!(
        cayley_neighborhood_identity(&g, 4, 1, &set(&g, Side::X, [1, 2])),
        Err(Error::MissingIdentity)
    ));
}

#[test]
fn cayley_identity_random_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, t) in [(4usize, 1usize), (4, 2), (5, 1), (5, 2), (5, 3)] {
        let g = build_permutation_graph(n as u32, t as u32, &b()).unwrap();
        let ctx = FragmentContext::new(&g).unwrap();
        for _ in 0..20 {
            let k = rng.gen_range(1..g.x_len() / 2);
            let mut idx: Vec<usize> = (1..g.x_len())
                .filter(|_| rng.gen_bool(k as f64 / g.x_len() as f64))
                .collect();
            idx.push(0);
            let s = set(&g, Side::X, idx);
            let r = cayley_neighborhood_identity(&g, n, t, &s).unwrap();
            assert!(r.product_matches);
            // the condition is the fragment test whenever N(S) is not everything
            if !g.neighborhood(&s).bits.is_full() {
                assert_eq!(r.fragment_condition, ctx.is_fragment(&s).unwrap());
            }
        }
    }
}

#[test]
fn max_sets_decompose_into_fragment_pairs() {
    for fam in [
        Family::Sets {
            n: 5,
            a: 2,
            b: 2,
            t: 1,
        },
        Family::Sets {
            n: 5,
            a: 3,
            b: 3,
            t: 2,
        },
        Family::Circulant { n: 7, r: 4 },
        Family::Permutations { n: 4, t: 2 },
    ] {
        let g = fam.build(&b()).unwrap();
        let ctx = FragmentContext::new(&g).unwrap();
        for r in enumerate_max_nontrivial(&g, &b()).unwrap() {
            let f = ctx.record(&r.a).unwrap();
            assert_eq!(ctx.phi(&f).unwrap().members, r.b);
        }
    }
}

#[test]
fn minimal_nontrivial_fragments_are_balanced() {
    for fam in [
        Family::Sets {
            n: 5,
            a: 2,
            b: 2,
            t: 1,
        },
        Family::Sets {
            n: 5,
            a: 3,
            b: 3,
            t: 2,
        },
    ] {
        let g = fam.build(&b()).unwrap();
        let ctx = FragmentContext::new(&g).unwrap();
        let xs = ctx.enumerate(Side::X, EnumerationMode::Exhaustive, &b()).unwrap();
        let ys = ctx.enumerate(Side::Y, EnumerationMode::Exhaustive, &b()).unwrap();
        assert!(xs.iter().chain(&ys).all(|f| f.len() != 2));
        let nontrivial: Vec<_> = xs.iter().filter(|f| !f.is_trivial).collect();
        assert_eq!(nontrivial.len(), 5, "{fam}");
        assert!(nontrivial.iter().all(|f| f.is_balanced));
    }
}

fn report(fam: Family) -> VerificationReport {
    let g = fam.build(&b()).unwrap();
    let action = natural_action(&fam, &g).unwrap();
    verify_theorem(
        &g,
        &action,
        &VerifyOptions {
            family: Some(fam),
            ..VerifyOptions::default()
        },
    )
}

#[test]
fn verify_sets_6231() {
    let r = report(Family::Sets {
        n: 6,
        a: 2,
        b: 3,
        t: 1,
    });
    assert!(r.passed(), "{r}");
    let e = r.get("alpha.formula").unwrap();
    assert_eq!((e.status, e.actual.as_str()), (CheckStatus::Pass, "17"));
    assert_eq!(r.get("census.X").unwrap().actual, "15 fragments, sizes {1}");
    assert_eq!(r.status("extremal.structure"), Some(CheckStatus::Pass));
    assert_eq!(r.status("fragments.dichotomy"), Some(CheckStatus::Pass));
}

#[test]
fn verify_sets_5221() {
    let r = report(Family::Sets {
        n: 5,
        a: 2,
        b: 2,
        t: 1,
    });
    assert!(r.passed(), "{r}");
    assert_eq!(r.get("alpha.formula").unwrap().actual, "8");
    let bal = r.get("fragments.balanced").unwrap();
    assert_eq!(bal.status, CheckStatus::Pass);
    assert_eq!(bal.witness.len(), 5);
    let dich = r.get("fragments.dichotomy").unwrap();
    assert_eq!(dich.status, CheckStatus::Pass);
    assert!(!dich.witness.is_empty(), "stars explain the size-4 fragments");
    assert_eq!(r.get("extremal.structure").unwrap().expected, "25 sets");
}

#[test]
fn verify_perms_42() {
    let r = report(Family::Permutations { n: 4, t: 2 });
    assert!(r.passed(), "{r}");
    assert_eq!(r.get("alpha.formula").unwrap().actual, "8");
    assert_eq!(r.get("census.X").unwrap().actual, "48 fragments, sizes {1,7}");
    assert_eq!(r.status("hypothesis.part-transitive"), Some(CheckStatus::Pass));
}

#[test]
fn verify_reports_missing_hypotheses() {
    let fam = Family::Sets {
        n: 4,
        a: 2,
        b: 2,
        t: 1,
    };
    let r = report(fam);
    let e = r.get("alpha.family-bound").unwrap();
    assert_eq!(e.status, CheckStatus::Skipped);
    assert!(e.note.contains("(n,t)=(a+b,1)"), "{}", e.note);

    let g = BipartiteGraph::from_edges(2, 3, [(0, 0), (1, 1), (1, 2)]).unwrap();
    let r = verify_theorem(&g, &GroupAction::trivial(&g), &VerifyOptions::default());
    assert_eq!(r.status("hypothesis.part-transitive"), Some(CheckStatus::Skipped));
    assert_eq!(r.status("alpha.formula"), Some(CheckStatus::Skipped));
    assert!(r.passed());
    let names: Vec<&str> = r.entries.iter().map(|e| e.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}
