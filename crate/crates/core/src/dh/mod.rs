//! Distance-hereditary graphs: decomposition trees and the exact solver.

mod build;
mod solve;
pub(crate) mod tree;

use thiserror::Error;

pub use build::{build_decomposition, Elimination};
pub use solve::{extract_certificate, solve_tree, ExtNat, NodeTable, State, TreeTables};
pub use tree::{DecompTree, Node, NodeId, Op, TreeError};

use crate::graph::{Graph, Vertex};
use crate::labeling::RomanLabeling;
use crate::Solution;

#[derive(Debug, Error)]
pub enum DhError {
    #[error("a decomposition tree needs at least one vertex")]
    EmptyGraph,
    #[error(
        "not distance-hereditary: {} vertices remain with no pendant vertex and no twins",
        remaining.len()
    )]
    NotDistanceHereditary {
        /// Original ids of the vertices left when elimination got stuck.
        remaining: Vec<Vertex>,
        /// The subgraph they induce, relabelled in `remaining` order.
        residual: Graph,
    },
}

/// The graph represented by `tree`.
pub fn graph_from_tree(tree: &DecompTree) -> Graph {
    tree.to_graph()
}

/// Optimum and certificate for a graph given by its decomposition tree.
pub fn solve_dh_tree(tree: &DecompTree) -> Solution {
    let tables = solve_tree(tree);
    let certificate = extract_certificate(tree, &tables);
    debug_assert_eq!(certificate.weight() as u64, tables.value());
    Solution {
        value: tables.value() as usize,
        certificate,
    }
}

/// `i_R` of a distance-hereditary graph, via its decomposition tree.
pub fn solve_dh(graph: &Graph) -> Result<Solution, DhError> {
    if graph.n() == 0 {
        return Ok(Solution {
            value: 0,
            certificate: RomanLabeling::default(),
        });
    }
    let tree = build_decomposition(graph)?;
    Ok(solve_dh_tree(&tree))
}
