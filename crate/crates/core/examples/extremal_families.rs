//! Every maximum nontrivial independent set, grouped by shape.
//!
//! ```bash
//! cargo run -p crossint --example extremal_families
//! ```

use std::collections::BTreeMap;

use crossint::bigraph::Family;
use crossint::oracle::enumerate_max_nontrivial;
use crossint::Budget;

fn main() -> crossint::Result<()> {
    let budget = Budget::default();
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
        Family::Sets {
            n: 6,
            a: 2,
            b: 3,
            t: 1,
        },
        Family::Permutations { n: 4, t: 1 },
        Family::Circulant { n: 7, r: 4 },
    ] {
        let g = fam.build(&budget)?;
        let all = enumerate_max_nontrivial(&g, &budget)?;
        let mut shapes: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for r in &all {
            *shapes.entry((r.a.len(), r.b.len())).or_default() += 1;
        }
        println!("{fam}: {} maximum sets of size {}", all.len(), all[0].size);
        for ((a, b), count) in shapes {
            println!("  |A|={a} |B|={b}: {count}");
        }
    }
    Ok(())
}
