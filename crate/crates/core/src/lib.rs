//! Exact verification of maximum nontrivial independent sets in
//! part-transitive bipartite graphs.
//!
//! The crate builds the cross-t-intersecting bipartite graphs over finite
//! sets, subspaces of prime-field vector spaces and permutations (plus a
//! small circulant family), computes the maximum nontrivial independent set
//! size `α(X,Y)` with a matching-based oracle, enumerates and classifies
//! fragments, and checks the closed-form bounds against all of it.
//!
//! Every count is an exact integer; nothing here uses floating point.
//!
//! ```
//! use crossint::bigraph::build_set_graph;
//! use crossint::exactmath::cross_bound_sets;
//! use crossint::oracle::alpha_nontrivial;
//! use crossint::Budget;
//!
//! let g = build_set_graph(5, 2, 2, 1, &Budget::default()).unwrap();
//! let alpha = alpha_nontrivial(&g).unwrap();
//! assert_eq!(alpha.size, 8);
//! assert_eq!(cross_bound_sets(5, 2, 2, 1).unwrap(), 8u32.into());
//! ```

pub mod bigraph;
pub mod bitset;
pub mod cli;
mod error;
pub mod exactmath;
pub mod fqlinalg;
pub mod fragments;
pub mod groupact;
pub mod oracle;
pub mod perm;

pub use error::{Error, Result};

/// Size limits shared by graph builders and exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of vertices in a single part.
    pub vertices: usize,
    /// Maximum number of intermediate sets an enumeration may visit.
    pub subsets: usize,
    /// Largest part that is scanned exhaustively (`2^part` subsets).
    pub exhaustive_part: usize,
    /// Largest `|X| + |Y|` handed to maximal independent set enumeration.
    pub enumeration_vertices: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            vertices: 1 << 14,
            subsets: 1_000_000,
            exhaustive_part: 24,
            enumeration_vertices: 400,
        }
    }
}
