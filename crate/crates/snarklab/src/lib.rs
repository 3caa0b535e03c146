//! snarklab: snarks, Hists, and outer-cycle profiles.
//!
//! A snark is a cyclically 4-edge-connected cubic graph of girth 5 with
//! no proper 3-edge-coloring. A Hist is a spanning tree whose vertices
//! all have degree 1 or 3; the non-tree edges of a graph with a Hist
//! induce vertex-disjoint cycles on the leaves (the outer cycles), and
//! the multiset of their lengths is the outer-cycle profile.
//!
//! The crate provides:
//!
//! - an immutable cubic-graph model ([`graph`]),
//! - parsers and writers for graph6, a parenthesized adjacency text,
//!   and DOT ([`formats`]),
//! - exhaustive snark certification ([`certify`]),
//! - Hist search, outer-cycle extraction, and a cycle double cover
//!   probe ([`hist`]),
//! - snark-preserving surgeries that track Hists and profiles
//!   ([`constructions`]),
//! - a fixture catalog and a planner that constructs a certified snark
//!   realizing any admissible profile ([`realizer`]).
//!
//! ```
//! use snarklab::{certify_snark, find_hist, outer_cycles, realize};
//! use snarklab::graph::petersen;
//!
//! // The Petersen graph is a snark whose every Hist has profile {6}.
//! let p10 = petersen();
//! assert!(certify_snark(&p10).unwrap().is_snark);
//! let hist = find_hist(&p10).unwrap().unwrap();
//! let (_, profile) = outer_cycles(&p10, &hist).unwrap();
//! assert_eq!(profile.as_slice(), &[6]);
//!
//! // Any admissible profile can be realized by an explicit snark.
//! let snark = realize(&[5, 7, 11].into()).unwrap();
//! assert_eq!(snark.profile.as_slice(), &[5, 7, 11]);
//! assert_eq!(snark.graph.n(), 2 * (5 + 7 + 11 - 1));
//! ```

pub mod bits;
pub mod certify;
pub mod constructions;
pub mod fixtures;
pub mod formats;
pub mod graph;
pub mod hist;
pub mod realizer;

pub use bits::{EdgeSet, VertexSet};
pub use certify::{certify_snark, girth, is_three_edge_colorable, SnarkCertificate};
pub use constructions::{ConstructedHistSnark, Provenance};
pub use graph::{CubicGraph, EdgeRef};
pub use hist::{enumerate_hists, find_hist, outer_cycles, Hist, OuterCycleProfile};
pub use realizer::{fixture, is_admissible, realize, scan_for_hists, Fixture, ProfileSpec};

// The guide's code blocks run as doctests so the book stays in sync
// with the crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cubic-graphs.md")]
    mod cubic_graphs {}
    #[doc = include_str!("../../../book/src/certification.md")]
    mod certification {}
    #[doc = include_str!("../../../book/src/hists.md")]
    mod hists {}
    #[doc = include_str!("../../../book/src/surgeries.md")]
    mod surgeries {}
    #[doc = include_str!("../../../book/src/realization.md")]
    mod realization {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
