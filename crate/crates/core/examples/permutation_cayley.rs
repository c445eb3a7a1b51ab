//! Permutation graphs: the bound, the product identity N(S) = G_t S, and
//! why V_4 and A_4 are not fragments.
//!
//! ```bash
//! cargo run --release -p crossint --example permutation_cayley
//! ```

use crossint::bigraph::{build_permutation_graph, Side, VertexSet};
use crossint::exactmath::cross_bound_permutations;
use crossint::fragments::{cayley_neighborhood_identity, FragmentContext};
use crossint::oracle::alpha_nontrivial;
use crossint::perm::all_permutations;
use crossint::Budget;

fn main() -> crossint::Result<()> {
    for (n, t) in [(4, 1), (4, 2), (5, 1), (5, 2), (5, 3)] {
        let g = build_permutation_graph(n, t, &Budget::default())?;
        let alpha = alpha_nontrivial(&g)?.size;
        println!(
            "perms({n},{t}): alpha={alpha} bound={}",
            cross_bound_permutations(n, t)?
        );
    }

    let perms = all_permutations(4);
    let index = |images: [u8; 4]| perms.iter().position(|p| p.images() == images).unwrap();
    let v4 = [
        index([0, 1, 2, 3]),
        index([1, 0, 3, 2]),
        index([2, 3, 0, 1]),
        index([3, 2, 1, 0]),
    ];
    let a4: Vec<usize> = (0..24).filter(|&i| perms[i].is_even()).collect();

    let g = build_permutation_graph(4, 1, &Budget::default())?;
    let ctx = FragmentContext::new(&g)?;
    for (name, members) in [("V_4", v4.to_vec()), ("A_4", a4)] {
        let s = VertexSet::from_indices(&g, Side::X, members);
        let id = cayley_neighborhood_identity(&g, 4, 1, &s)?;
        println!(
            "{name}: |N(S)|={} N(S)=G_1 S: {} |G_1 S* \\ G_1| = |S*|: {} fragment: {}",
            g.neighborhood(&s).len(),
            id.product_matches,
            id.fragment_condition,
            ctx.is_fragment(&s)?
        );
    }
    Ok(())
}
