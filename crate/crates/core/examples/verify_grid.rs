//! Runs the full theorem verifier over a grid file and prints each report.
//!
//! ```bash
//! cargo run --release -p crossint --example verify_grid -- crates/core/grids/acceptance.grid
//! ```

use crossint::cli::parse_grid;
use crossint::fragments::{verify_theorem, VerifyOptions};
use crossint::groupact::natural_action;
use crossint::Budget;

fn main() -> crossint::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/grids/acceptance.grid").to_string());
    let text = std::fs::read_to_string(&path).expect("readable grid file");
    for entry in parse_grid(&text, Budget::default())? {
        let g = match entry.family.build(&entry.budget) {
            Ok(g) => g,
            Err(e) => {
                println!("{}: skipped ({e})", entry.family);
                continue;
            }
        };
        let action = natural_action(&entry.family, &g)?;
        let opts = VerifyOptions {
            family: Some(entry.family),
            budget: entry.budget,
            ..VerifyOptions::default()
        };
        let report = verify_theorem(&g, &action, &opts);
        print!("{report}");
        println!("passed: {}\n", report.passed());
    }
    Ok(())
}
