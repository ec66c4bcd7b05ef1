//! Exact independent Roman domination.
//!
//! An independent Roman dominating function (IRDF) labels every vertex
//! with 0, 1 or 2 so that the positively labelled vertices are pairwise
//! non-adjacent and every 0-vertex has a neighbor labelled 2. This crate
//! computes the minimum total weight `i_R(G)` together with an optimal
//! labeling for three graph classes:
//!
//! * distance-hereditary graphs ([`dh`]), by dynamic programming over a
//!   decomposition tree,
//! * split graphs ([`split`]), in closed form from the maximum degree,
//! * P4-sparse graphs ([`p4`]), along the union / join / spider
//!   decomposition,
//!
//! plus an exhaustive [`oracle`] for small graphs of any kind and seeded
//! instance [`generate`]ors.

pub mod dh;
pub mod generate;
pub mod graph;
pub mod labeling;
pub mod oracle;
pub mod p4;
pub mod solver;
pub mod split;

pub use graph::{Graph, ParseError, Vertex};
pub use labeling::{validate_irdf, weight, Label, RomanLabeling, ValidationReport, Violation};

/// An optimum value with a labeling attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub value: usize,
    pub certificate: RomanLabeling,
}
