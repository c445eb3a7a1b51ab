//! Subspace graphs over F_2: construction, the GL(n,2) action and the
//! exact bound check.
//!
//! ```bash
//! cargo run --release -p crossint --example subspace_alpha
//! ```

use std::time::Instant;

use crossint::bigraph::build_subspace_graph;
use crossint::bigraph::Side;
use crossint::exactmath::cross_bound_subspaces;
use crossint::groupact::{induced_gl_action, is_part_transitive, is_primitive};
use crossint::oracle::alpha_nontrivial;
use crossint::Budget;

fn main() -> crossint::Result<()> {
    for (n, q, a, b, t) in [(4, 2, 2, 2, 1), (5, 2, 2, 2, 1)] {
        let start = Instant::now();
        let g = build_subspace_graph(n, q, a, b, t, &Budget::default())?;
        let action = induced_gl_action(n, q, a, b, &g)?;
        let mis = alpha_nontrivial(&g)?;
        println!(
            "subspaces({n},{q},{a},{b},{t}): parts {}+{}, transitive={}, primitive on X={}, alpha={} bound={} ({:.2?})",
            g.x_len(),
            g.y_len(),
            is_part_transitive(&g, &action),
            is_primitive(&action, Side::X),
            mis.size,
            cross_bound_subspaces(n, q, a, b, t)?,
            start.elapsed(),
        );
        println!("  witness A = {}", g.set_labels(&mis.a).join(" "));
    }
    Ok(())
}
