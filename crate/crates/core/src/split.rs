//! Split graphs: recognition and the closed-form optimum.
//!
//! For a connected split graph `K + I` with an edge, the optimum is
//! `n - deg(x) + 1` for a maximum-degree clique vertex `x`: label `x` with 2,
//! every independent vertex outside `N(x)` with 1, everything else 0.

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::labeling::{Label, RomanLabeling};
use crate::Solution;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("not a split graph")]
    NotSplit,
}

/// A clique `K` and an independent set `I` covering all vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPartition {
    pub clique: Vec<Vertex>,
    pub independent: Vec<Vertex>,
}

impl SplitPartition {
    /// Checks all partition invariants against `graph`.
    pub fn verify(&self, graph: &Graph) -> bool {
        let mut seen = vec![false; graph.n()];
        for &v in self.clique.iter().chain(&self.independent) {
            if v >= graph.n() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
            && graph.is_clique(&self.clique)
            && graph.is_independent(&self.independent)
    }
}

/// Degree-sequence splittance test. With degrees sorted descending and
/// `k = max{i : d_i >= i - 1}`, the graph is split iff
/// `sum_{i<=k} d_i = k(k-1) + sum_{i>k} d_i`, and then the `k` highest
/// degree vertices form a clique. The partition is verified before it is
/// returned; a failed check falls back to swapping boundary vertices of
/// equal degree.
pub fn recognize_split(graph: &Graph) -> Result<SplitPartition, SplitError> {
    let n = graph.n();
    let mut order: Vec<Vertex> = (0..n).collect();
    // Descending degree, ties by ascending id.
    order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
    let degrees: Vec<usize> = order.iter().map(|&v| graph.degree(v)).collect();
    let k = (1..=n)
        .take_while(|&i| degrees[i - 1] + 1 >= i)
        .last()
        .unwrap_or(0);
    let head: usize = degrees[..k].iter().sum();
    let tail: usize = degrees[k..].iter().sum();
    if head != k * k.saturating_sub(1) + tail {
        return Err(SplitError::NotSplit);
    }

    let mut partition = partition_at(&order, k);
    if partition.verify(graph) {
        return Ok(normalize(graph, partition));
    }
    // Vertices of the boundary degree may be ordered either way round.
    let boundary = degrees[k.saturating_sub(1)];
    let inside: Vec<usize> = (0..k).filter(|&i| degrees[i] == boundary).collect();
    let outside: Vec<usize> = (k..n).filter(|&i| degrees[i] == boundary).collect();
    for &i in &inside {
        for &j in &outside {
            order.swap(i, j);
            partition = partition_at(&order, k);
            if partition.verify(graph) {
                return Ok(normalize(graph, partition));
            }
            order.swap(i, j);
        }
    }
    Err(SplitError::NotSplit)
}

/// When `I` is non-empty, a clique vertex with no neighbor in `I` may sit
/// on either side. It is moved to `I` (the largest such id) so stars come
/// out as centre plus leaves; cliques with `I` empty stay whole.
fn normalize(graph: &Graph, mut p: SplitPartition) -> SplitPartition {
    if p.independent.is_empty() || p.clique.len() < 2 {
        return p;
    }
    let free = p
        .clique
        .iter()
        .rposition(|&v| graph.degree(v) + 1 == p.clique.len());
    if let Some(pos) = free {
        let v = p.clique.remove(pos);
        let at = p.independent.partition_point(|&x| x < v);
        p.independent.insert(at, v);
    }
    p
}

fn partition_at(order: &[Vertex], k: usize) -> SplitPartition {
    let mut clique = order[..k].to_vec();
    let mut independent = order[k..].to_vec();
    clique.sort_unstable();
    independent.sort_unstable();
    SplitPartition {
        clique,
        independent,
    }
}

/// `i_R` of a split graph, summed over components.
pub fn solve_split(graph: &Graph) -> Result<Solution, SplitError> {
    let partition = recognize_split(graph)?;
    let mut labeling = RomanLabeling::zeros(graph.n());
    let mut in_clique = vec![false; graph.n()];
    for &v in &partition.clique {
        in_clique[v] = true;
    }
    for component in graph.connected_components() {
        if component.len() == 1 {
            labeling.set(component[0], Label::One);
            continue;
        }
        // The only component with edges; it contains every clique vertex
        // that has a neighbor.
        let hub = best_clique_vertex(graph, &component, &in_clique);
        label_component(graph, &component, &in_clique, hub, &mut labeling);
    }
    Ok(Solution {
        value: labeling.weight(),
        certificate: labeling,
    })
}

/// Smallest-id clique vertex of maximum degree within `component`.
fn best_clique_vertex(graph: &Graph, component: &[Vertex], in_clique: &[bool]) -> Vertex {
    let hub = component
        .iter()
        .copied()
        .filter(|&v| in_clique[v])
        .max_by_key(|&v| (graph.degree(v), std::cmp::Reverse(v)))
        .expect("a split component with an edge meets the clique");
    let overall = component.iter().map(|&v| graph.degree(v)).max().unwrap();
    assert_eq!(
        graph.degree(hub),
        overall,
        "maximum degree of a connected split graph lies in the clique"
    );
    hub
}

fn label_component(
    graph: &Graph,
    component: &[Vertex],
    in_clique: &[bool],
    hub: Vertex,
    labeling: &mut RomanLabeling,
) {
    labeling.set(hub, Label::Two);
    for &y in component {
        if !in_clique[y] && !graph.has_edge(hub, y) {
            labeling.set(y, Label::One);
        }
    }
    debug_assert_eq!(
        component
            .iter()
            .map(|&v| labeling.get(v).value())
            .sum::<usize>(),
        component.len() - graph.degree(hub) + 1
    );
}
