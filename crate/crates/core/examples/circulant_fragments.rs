//! The circulant example: interval fragments, the 2-fragment graph, the
//! closure rules, and the graph file format.
//!
//! ```bash
//! cargo run -p crossint --example circulant_fragments
//! ```

use crossint::bigraph::{build_circulant_graph, deserialize, serialize, Family, Side, VertexSet};
use crossint::fragments::{
    check_closure, check_orbit_closure, classify_semi_imprimitive, two_fragment_graph, EnumerationMode,
    FragmentContext,
};
use crossint::groupact::natural_action;
use crossint::Budget;

fn main() -> crossint::Result<()> {
    let budget = Budget::default();
    for (n, r) in [(5, 3), (7, 4)] {
        let fam = Family::Circulant { n, r };
        let g = fam.build(&budget)?;
        let ctx = FragmentContext::new(&g)?;
        let action = natural_action(&fam, &g)?;
        let mut frags = ctx.enumerate(Side::X, EnumerationMode::Exhaustive, &budget)?;
        classify_semi_imprimitive(&mut frags, &action, 1000)?;
        println!("{fam}: eps(X)={} alpha={}", ctx.epsilon(Side::X), ctx.alpha());
        for f in &frags {
            println!(
                "  {:<12} trivial={} balanced={} semi-imprimitive={:?}",
                g.set_labels(&f.members).join(","),
                f.is_trivial,
                f.is_balanced,
                f.is_semi_imprimitive
            );
        }
        let h = two_fragment_graph(&ctx, Side::X)?;
        println!(
            "  H(X) edges {:?}, single cycle: {}",
            h.edges,
            h.is_hamiltonian_cycle()
        );
    }

    let g = build_circulant_graph(6, 3)?;
    let ctx = FragmentContext::new(&g)?;
    let a = VertexSet::from_indices(&g, Side::X, [0, 1]);
    let b = VertexSet::from_indices(&g, Side::X, [1, 2]);
    let rep = check_closure(&ctx, &a, &b)?;
    println!("circulant(6,3) {{x1,x2}} and {{x2,x3}}: {rep:?}");
    let action = natural_action(&Family::Circulant { n: 6, r: 3 }, &g)?;
    for r in check_orbit_closure(&ctx, &action, &a, 100)? {
        if r.hypotheses_hold() {
            println!(
                "  rotation image {:?}: conclusion holds {}",
                g.set_labels(&r.image),
                r.implication_holds()
            );
        }
    }

    let text = serialize(&build_circulant_graph(5, 3)?);
    print!("{text}");
    assert_eq!(serialize(&deserialize(&text)?), text);
    Ok(())
}
