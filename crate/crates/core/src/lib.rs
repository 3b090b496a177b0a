//! Triangle-free segment intersection graphs whose independence ratio tends
//! to zero.
//!
//! The crate builds the recursive probe construction ([`construction`]),
//! checks its combinatorial properties exactly ([`oracle`]), certifies the
//! optimality of its weighting with an exact rational LP ([`lp`]) and
//! realizes it as a family of line segments with rational coordinates
//! ([`geometry`]).
//!
//! ```
//! use tfseg::construction::{build_structure, build_tilde};
//! use tfseg::oracle::max_weight_independent_set;
//!
//! let g3 = build_structure(3).unwrap();
//! assert_eq!(g3.vertex_count(), 13);
//! let (best, _) = max_weight_independent_set(&g3.graph, &g3.weights).unwrap();
//! assert_eq!(best, 8);
//!
//! let t2 = build_tilde(&build_structure(2).unwrap()).unwrap();
//! assert_eq!(t2.graph.edge_count(), 5);
//! ```

mod bits;
pub mod certificate;
pub mod construction;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod lp;
pub mod oracle;
pub mod rational;

pub use certificate::{Certificate, Verdict, Witness};
pub use construction::{build_structure, build_tilde, Probe, Structure};
pub use graph::{blow_up, Graph, VertexId, WeightMap};

// The guide's code blocks run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/construction.md")]
    mod construction {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/lp.md")]
    mod lp {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
