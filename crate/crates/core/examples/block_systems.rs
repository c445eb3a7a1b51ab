//! Block systems and primitivity of the induced actions.
//!
//! ```bash
//! cargo run -p crossint --example block_systems
//! ```

use crossint::bigraph::{Family, Side};
use crossint::groupact::{
    induced_symmetric_action, is_primitive, minimal_block_system, natural_action, orbit,
};
use crossint::Budget;

fn main() -> crossint::Result<()> {
    let budget = Budget::default();

    // S_4 on 2-subsets keeps {A, complement of A} together
    let fam = Family::Sets {
        n: 4,
        a: 2,
        b: 2,
        t: 1,
    };
    let g = fam.build(&budget)?;
    let action = induced_symmetric_action(&fam, &g)?;
    let blocks = minimal_block_system(&action, Side::X, 0, 5);
    let named: Vec<Vec<String>> = blocks
        .iter()
        .map(|b| b.iter().map(|&i| g.label(Side::X, i).to_string()).collect())
        .collect();
    println!("S_4 on pairs, block of {{1 2}} and {{3 4}}: {named:?}");
    println!("S_4 on pairs primitive: {}", is_primitive(&action, Side::X));

    let fam = Family::Sets {
        n: 5,
        a: 2,
        b: 2,
        t: 1,
    };
    let g = fam.build(&budget)?;
    println!(
        "S_5 on pairs primitive: {}",
        is_primitive(&induced_symmetric_action(&fam, &g)?, Side::X)
    );

    // two-sided action on S_4: blocks through the identity
    let fam = Family::Permutations { n: 4, t: 1 };
    let g = fam.build(&budget)?;
    let action = natural_action(&fam, &g)?;
    for v in 1..24 {
        let blocks = minimal_block_system(&action, Side::X, 0, v);
        if blocks.len() > 1 {
            let first = &blocks[0];
            let labels: Vec<&str> = first.iter().map(|&i| g.label(Side::X, i)).collect();
            println!(
                "identity with {}: {} blocks of {}: {}",
                g.label(Side::X, v),
                blocks.len(),
                first.len(),
                labels.join(" ")
            );
        }
    }

    let fam = Family::Subspaces {
        n: 4,
        q: 2,
        a: 2,
        b: 2,
        t: 1,
    };
    let g = fam.build(&budget)?;
    let action = natural_action(&fam, &g)?;
    println!(
        "GL(4,2) orbit of one plane: {} of {}",
        orbit(&action, Side::X, 0).len(),
        g.x_len()
    );
    Ok(())
}
