//! Exhaustive reference solvers for `i_R(G)` and `i(G)`.
//!
//! These favour obviousness over speed and refuse inputs above a vertex
//! cap. Property tests and the CLI fallback rely on them.

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::labeling::{Label, RomanLabeling};

pub const DEFAULT_ORACLE_CAP: usize = 15;

/// The bitmask enumeration for `exact_i` needs `n < 64`.
const HARD_CAP: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, exhaustive search is capped at {cap}")]
    TooLarge { n: usize, cap: usize },
}

fn check_cap(graph: &Graph, cap: usize) -> Result<(), OracleError> {
    let cap = cap.min(HARD_CAP);
    if graph.n() > cap {
        Err(OracleError::TooLarge { n: graph.n(), cap })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrdfSolution {
    pub value: usize,
    /// Lexicographically smallest optimal labeling.
    pub witness: RomanLabeling,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentDominatingSolution {
    pub value: usize,
    /// Sorted members of a minimum independent dominating set.
    pub witness: Vec<Vertex>,
}

/// Minimum weight over all independent Roman dominating functions.
///
/// Depth-first search over labelings in lexicographic order (vertex 0
/// most significant, labels tried as 0, 1, 2). A branch is cut only when
/// it assigns a positive label next to an earlier positive vertex, when
/// its partial weight already reaches the best weight found, or when a
/// 0-labelled vertex whose neighbors are all assigned has no 2-neighbor.
/// Every cut branch is either infeasible or cannot beat the incumbent, and
/// the first optimum reached is the lexicographically smallest one.
pub fn exact_irdf(graph: &Graph, cap: usize) -> Result<IrdfSolution, OracleError> {
    check_cap(graph, cap)?;
    let n = graph.n();
    // Vertices whose neighborhoods are fully assigned once `v` is.
    let mut closing: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for u in 0..n {
        let last = graph.neighbors(u).iter().copied().chain([u]).max().unwrap();
        closing[last].push(u);
    }
    let mut search = Search {
        graph,
        closing: &closing,
        current: vec![Label::Zero; n],
        best: None,
    };
    search.descend(0, 0);
    let (value, labels) = search
        .best
        .expect("labeling every vertex 1 or 2 is always feasible");
    Ok(IrdfSolution {
        value,
        witness: RomanLabeling::from_labels(labels),
    })
}

struct Search<'a> {
    graph: &'a Graph,
    closing: &'a [Vec<Vertex>],
    current: Vec<Label>,
    best: Option<(usize, Vec<Label>)>,
}

impl Search<'_> {
    fn descend(&mut self, v: Vertex, weight: usize) {
        if v == self.graph.n() {
            if self.best.as_ref().is_none_or(|(b, _)| weight < *b) {
                self.best = Some((weight, self.current.clone()));
            }
            return;
        }
        for label in Label::ALL {
            let w = weight + label.value();
            if self.best.as_ref().is_some_and(|(b, _)| w >= *b) {
                break;
            }
            if label.is_positive()
                && self
                    .graph
                    .neighbors(v)
                    .iter()
                    .any(|&u| u < v && self.current[u].is_positive())
            {
                continue;
            }
            self.current[v] = label;
            if self.closing[v].iter().all(|&u| self.dominated(u)) {
                self.descend(v + 1, w);
            }
        }
        self.current[v] = Label::Zero;
    }

    fn dominated(&self, u: Vertex) -> bool {
        self.current[u] != Label::Zero
            || self
                .graph
                .neighbors(u)
                .iter()
                .any(|&x| self.current[x] == Label::Two)
    }
}

/// Minimum cardinality of an independent dominating set (equivalently, of a
/// maximal independent set), by enumerating all vertex subsets.
pub fn exact_i(graph: &Graph, cap: usize) -> Result<IndependentDominatingSolution, OracleError> {
    check_cap(graph, cap)?;
    let n = graph.n();
    let masks: Vec<u64> = (0..n)
        .map(|v| graph.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let mut best: Option<u64> = None;
    for set in 0..=full {
        if best.is_some_and(|b| set.count_ones() >= b.count_ones()) {
            continue;
        }
        let mut covered = set;
        let mut independent = true;
        for v in (0..n).filter(|&v| set >> v & 1 == 1) {
            if masks[v] & set != 0 {
                independent = false;
                break;
            }
            covered |= masks[v];
        }
        if independent && covered == full {
            best = Some(set);
        }
    }
    let set = best.unwrap_or(0);
    Ok(IndependentDominatingSolution {
        value: set.count_ones() as usize,
        witness: (0..n).filter(|&v| set >> v & 1 == 1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::validate_irdf;

    /// Plain 3^n enumeration with no pruning.
    fn brute_irdf(g: &Graph) -> (usize, RomanLabeling) {
        let n = g.n();
        let mut best: Option<(usize, RomanLabeling)> = None;
        for code in 0..3usize.pow(n as u32) {
            let mut digits = vec![0u8; n];
            let mut c = code;
            for v in (0..n).rev() {
                digits[v] = (c % 3) as u8;
                c /= 3;
            }
            let l = RomanLabeling::from_digits(&digits).unwrap();
            if validate_irdf(g, &l).unwrap().is_valid()
                && best.as_ref().is_none_or(|(w, _)| l.weight() < *w)
            {
                best = Some((l.weight(), l));
            }
        }
        best.unwrap()
    }

    #[test]
    fn irdf_small_values() {
        // Frozen from brute_irdf.
        let cases = [
            (Graph::path(4), 3),
            (Graph::empty(1), 1),
            (Graph::empty(4), 4),
            (Graph::cycle(5), 4),
            (Graph::cycle(4), 3),
            (Graph::complete(5), 2),
            (Graph::path(3), 2),
        ];
        for (g, expected) in cases {
            assert_eq!(brute_irdf(&g).0, expected, "{g:?}");
            let sol = exact_irdf(&g, DEFAULT_ORACLE_CAP).unwrap();
            assert_eq!(sol.value, expected, "{g:?}");
        }
    }

    #[test]
    fn witness_is_lexicographically_smallest_optimum() {
        for g in [
            Graph::path(4),
            Graph::cycle(5),
            Graph::cycle(6),
            Graph::complete_bipartite(2, 3),
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)]).unwrap(),
        ] {
            let (w, l) = brute_irdf(&g);
            let sol = exact_irdf(&g, DEFAULT_ORACLE_CAP).unwrap();
            assert_eq!((sol.value, sol.witness), (w, l));
        }
    }

    #[test]
    fn independent_domination_values() {
        assert_eq!(exact_i(&Graph::path(4), 15).unwrap().value, 2);
        assert_eq!(exact_i(&Graph::complete(5), 15).unwrap().value, 1);
        assert_eq!(exact_i(&Graph::cycle(5), 15).unwrap().value, 2);
        assert_eq!(exact_i(&Graph::empty(0), 15).unwrap().value, 0);
        let sol = exact_i(&Graph::path(4), 15).unwrap();
        let g = Graph::path(4);
        assert!(g.is_independent(&sol.witness) && g.is_dominating(&sol.witness));
    }

    #[test]
    fn empty_graph() {
        let sol = exact_irdf(&Graph::empty(0), 15).unwrap();
        assert_eq!(sol.value, 0);
        assert!(sol.witness.is_empty());
    }

    #[test]
    fn refuses_above_cap() {
        assert_eq!(
            exact_irdf(&Graph::empty(16), 15),
            Err(OracleError::TooLarge { n: 16, cap: 15 })
        );
        assert!(exact_i(&Graph::empty(9), 8).is_err());
        assert!(exact_irdf(&Graph::empty(9), 9).is_ok());
    }
}
