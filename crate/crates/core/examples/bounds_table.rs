//! Closed-form bounds for the three families, plus the Hilton and
//! two-family bounds, with hypothesis failures shown by name.
//!
//! ```bash
//! cargo run -p crossint --example bounds_table
//! ```

use crossint::exactmath::{
    cross_bound_permutations, cross_bound_sets, cross_bound_subspaces, hilton_bound, hm_ft_bound,
};

fn main() {
    println!("sets (n,a,b,t)");
    for (n, a, b, t) in [
        (5, 2, 2, 1),
        (6, 2, 3, 1),
        (5, 3, 3, 2),
        (7, 2, 3, 1),
        (4, 2, 2, 1),
        (8, 3, 4, 2),
    ] {
        match cross_bound_sets(n, a, b, t) {
            Ok(v) => println!("  ({n},{a},{b},{t}) -> {v}"),
            Err(e) => println!("  ({n},{a},{b},{t}) -> not applicable: {e}"),
        }
    }

    println!("subspaces over F_q (n,q,a,b,t)");
    for (n, q, a, b, t) in [(4, 2, 2, 2, 1), (5, 2, 2, 2, 1), (6, 3, 2, 3, 1)] {
        match cross_bound_subspaces(n, q, a, b, t) {
            Ok(v) => println!("  ({n},{q},{a},{b},{t}) -> {v}"),
            Err(e) => println!("  ({n},{q},{a},{b},{t}) -> not applicable: {e}"),
        }
    }

    println!("permutations (n,t)");
    for n in 4..=10 {
        let row: Vec<String> = (1..=n - 2)
            .map(|t| cross_bound_permutations(n, t).unwrap().to_string())
            .collect();
        println!("  n={n}: {}", row.join(" "));
    }

    // exact arithmetic keeps going well past u64
    println!("perms(30,1) -> {}", cross_bound_permutations(30, 1).unwrap());

    println!("hilton (n,k,m) -> {}", hilton_bound(10, 3, 4).unwrap());
    println!(
        "two-family (n,a,b) = (10,3,4) -> {}",
        hm_ft_bound(10, 3, 4).unwrap()
    );
}
