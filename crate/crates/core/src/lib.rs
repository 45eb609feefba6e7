//! Exact construction and cross-verification of b-parking-function
//! polytopes.
//!
//! For a vector `b` of positive integers with partial sums
//! `S_i = b_1 + .. + b_i`, a b-parking function is an integer sequence whose
//! sorted rearrangement stays below `S_1, .., S_n`. Their convex hull is a
//! simple polytope whose vertices, facets, edges, face numbers and
//! optimization behavior are computed here in exact arithmetic, each with
//! an independent brute-force check in [`oracle`].
//!
//! ```
//! use gpfp::{polytope, BVector};
//!
//! let b: BVector = "2,3,4".parse().unwrap();
//! assert_eq!(polytope::vertices(&b).len(), 16);
//! assert_eq!(polytope::facets(&b).len(), 10);
//! ```

pub mod birkhoff;
pub mod budget;
pub mod counting;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod minkowski;
pub mod nestedsets;
pub mod oracle;
pub mod parking;
pub mod polymatroid;
pub mod polytope;
pub mod subset;

pub use budget::Budget;
pub use error::{Error, Result};
pub use parking::{BVector, Int, Point, VertexDescriptor};
pub use subset::Subset;

/// Snippets from the guide in `book/`, compiled and run as doctests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/parking-functions.md")]
    pub struct ParkingFunctions;
    #[doc = include_str!("../../../book/src/facets-and-edges.md")]
    pub struct FacetsAndEdges;
    #[doc = include_str!("../../../book/src/counting.md")]
    pub struct Counting;
    #[doc = include_str!("../../../book/src/nested-sets.md")]
    pub struct NestedSets;
    #[doc = include_str!("../../../book/src/minkowski.md")]
    pub struct Minkowski;
    #[doc = include_str!("../../../book/src/polymatroid.md")]
    pub struct Polymatroid;
    #[doc = include_str!("../../../book/src/birkhoff.md")]
    pub struct Birkhoff;
    #[doc = include_str!("../../../book/src/verification.md")]
    pub struct Verification;
}
