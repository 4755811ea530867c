//! Decides whether the Leavitt path algebra of a finite directed multigraph
//! has Invariant Basis Number, and builds checkable evidence when it does not.
//!
//! ```
//! use ibn_core::{decide_ibn, format::parse_gtf};
//!
//! let g = parse_gtf("vertex v\nedges v v 2\n").unwrap();
//! let verdict = decide_ibn(&g).unwrap();
//! assert!(!verdict.has_ibn);
//! assert_eq!(verdict.witness.unwrap().m, 2u32.into());
//! ```

pub mod classify;
pub mod criterion;
pub mod cycles;
pub mod error;
pub mod families;
pub mod format;
pub mod graph;
pub mod linalg;
pub mod monoid;
pub mod transforms;

pub use classify::{classify_sufficient, cycles_pairwise_disjoint, Rule, SufficiencyResult};
pub use criterion::{
    construct_scaled_witness, construct_witness, criterion_ranks, decide_ibn, verify_witness,
    IbnVerdict, Witness,
};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, Graph, VertexId};
pub use monoid::{MonoidVector, RewriteTrace, SearchBudget};
