//! Builds cross-t-intersecting set graphs and compares the exact maximum
//! nontrivial independent set with the closed form.
//!
//! ```bash
//! cargo run --release -p crossint --example set_alpha
//! ```

use crossint::bigraph::{build_set_graph, Side};
use crossint::exactmath::cross_bound_sets;
use crossint::oracle::{alpha_nontrivial, max_matching};
use crossint::Budget;

fn main() -> crossint::Result<()> {
    let budget = Budget::default();
    for (n, a, b, t) in [
        (5, 2, 2, 1),
        (6, 2, 3, 1),
        (5, 3, 3, 2),
        (7, 2, 3, 1),
        (7, 3, 3, 1),
    ] {
        let g = build_set_graph(n, a, b, t, &budget)?;
        let mis = alpha_nontrivial(&g)?;
        let bound = cross_bound_sets(n, a, b, t)?;
        println!(
            "sets({n},{a},{b},{t}): |X|={} |Y|={} d(X)={} matching={} alpha={} bound={bound}",
            g.x_len(),
            g.y_len(),
            g.degree(Side::X, 0),
            max_matching(&g).size,
            mis.size,
        );
        println!("  A = {}", g.set_labels(&mis.a).join(" "));
        println!("  B = {} sets", mis.b.len());
    }
    Ok(())
}
