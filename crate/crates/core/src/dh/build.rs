//! Decomposition tree construction by pendant and twin elimination.

use std::collections::{BTreeSet, HashMap};

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::tree::{DecompTree, LeafSplitter, Op};
use super::DhError;
use crate::graph::{Graph, Vertex};

/// How a vertex was eliminated, relative to its partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elimination {
    Pendant,
    TrueTwin,
    FalseTwin,
}

impl Elimination {
    fn op(self) -> Op {
        match self {
            Elimination::Pendant => Op::Attachment,
            Elimination::TrueTwin => Op::TrueTwin,
            Elimination::FalseTwin => Op::FalseTwin,
        }
    }
}

/// Builds a decomposition tree whose graph equals `graph` vertex for vertex.
///
/// Repeatedly removes the smallest vertex `w` that is a pendant, a true
/// twin or a false twin (checked in that order, smallest partner first),
/// then replays the removals backwards by splitting the partner's leaf.
/// Fails with the stuck residual graph if no vertex can be removed.
pub fn build_decomposition(graph: &Graph) -> Result<DecompTree, DhError> {
    let n = graph.n();
    if n == 0 {
        return Err(DhError::EmptyGraph);
    }
    let mut state = Eliminator::new(graph);
    let mut removed = Vec::with_capacity(n - 1);
    while state.alive_count > 1 {
        match state.next_elimination() {
            Some((w, u, kind)) => {
                state.remove(w);
                removed.push((w, u, kind));
            }
            None => {
                let remaining: Vec<Vertex> = (0..n).filter(|&v| state.alive[v]).collect();
                return Err(DhError::NotDistanceHereditary {
                    residual: graph.induced_subgraph(&remaining),
                    remaining,
                });
            }
        }
    }
    let last = (0..n)
        .find(|&v| state.alive[v])
        .expect("one vertex remains");
    let mut splitter = LeafSplitter::new(n, last);
    for &(w, u, kind) in removed.iter().rev() {
        splitter.split(u, w, kind.op());
    }
    let tree = splitter.finish();
    assert_eq!(
        &tree.to_graph(),
        graph,
        "decomposition tree does not reproduce its input graph"
    );
    Ok(tree)
}

/// Shrinking graph with additive neighborhood fingerprints: the open
/// fingerprint of `v` is the wrapping sum of random keys over `N(v)`, the
/// closed one adds the key of `v`. Equal closed (open) fingerprints flag
/// true (false) twin candidates, which are then verified exactly.
struct Eliminator {
    adj: Vec<BTreeSet<Vertex>>,
    alive: Vec<bool>,
    alive_count: usize,
    key: Vec<u64>,
    open: Vec<u64>,
    open_buckets: HashMap<u64, BTreeSet<Vertex>>,
    closed_buckets: HashMap<u64, BTreeSet<Vertex>>,
}

impl Eliminator {
    fn new(graph: &Graph) -> Self {
        let n = graph.n();
        let mut rng = SplitMix64::seed_from_u64(0x05ee_d0f7_a1e5);
        let key: Vec<u64> = (0..n).map(|_| rng.next_u64()).collect();
        let adj: Vec<BTreeSet<Vertex>> = (0..n)
            .map(|v| graph.neighbors(v).iter().copied().collect())
            .collect();
        let open: Vec<u64> = adj
            .iter()
            .map(|nb| nb.iter().fold(0u64, |h, &u| h.wrapping_add(key[u])))
            .collect();
        let mut this = Eliminator {
            adj,
            alive: vec![true; n],
            alive_count: n,
            key,
            open,
            open_buckets: HashMap::new(),
            closed_buckets: HashMap::new(),
        };
        for v in 0..n {
            this.bucket_insert(v);
        }
        this
    }

    fn closed(&self, v: Vertex) -> u64 {
        self.open[v].wrapping_add(self.key[v])
    }

    fn bucket_insert(&mut self, v: Vertex) {
        let (o, c) = (self.open[v], self.closed(v));
        self.open_buckets.entry(o).or_default().insert(v);
        self.closed_buckets.entry(c).or_default().insert(v);
    }

    fn bucket_remove(&mut self, v: Vertex) {
        let (o, c) = (self.open[v], self.closed(v));
        for (buckets, h) in [(&mut self.open_buckets, o), (&mut self.closed_buckets, c)] {
            if let Some(set) = buckets.get_mut(&h) {
                set.remove(&v);
                if set.is_empty() {
                    buckets.remove(&h);
                }
            }
        }
    }

    fn next_elimination(&self) -> Option<(Vertex, Vertex, Elimination)> {
        (0..self.alive.len())
            .filter(|&w| self.alive[w])
            .find_map(|w| self.eliminable(w).map(|(u, kind)| (w, u, kind)))
    }

    fn eliminable(&self, w: Vertex) -> Option<(Vertex, Elimination)> {
        if self.adj[w].len() == 1 {
            let u = *self.adj[w].first().unwrap();
            // An isolated edge is a true-twin pair before it is a pendant.
            let kind = if self.adj[u].len() == 1 {
                Elimination::TrueTwin
            } else {
                Elimination::Pendant
            };
            return Some((u, kind));
        }
        let true_twin = self.closed_buckets[&self.closed(w)]
            .iter()
            .copied()
            .find(|&u| u != w && self.are_true_twins(u, w));
        if let Some(u) = true_twin {
            return Some((u, Elimination::TrueTwin));
        }
        self.open_buckets[&self.open[w]]
            .iter()
            .copied()
            .find(|&u| u != w && self.adj[u] == self.adj[w])
            .map(|u| (u, Elimination::FalseTwin))
    }

    fn are_true_twins(&self, u: Vertex, w: Vertex) -> bool {
        self.adj[u].len() == self.adj[w].len()
            && self.adj[u].contains(&w)
            && self.adj[w]
                .iter()
                .all(|&x| x == u || self.adj[u].contains(&x))
    }

    fn remove(&mut self, w: Vertex) {
        self.bucket_remove(w);
        let neighbors = std::mem::take(&mut self.adj[w]);
        for &x in &neighbors {
            self.bucket_remove(x);
            self.adj[x].remove(&w);
            self.open[x] = self.open[x].wrapping_sub(self.key[w]);
            self.bucket_insert(x);
        }
        self.alive[w] = false;
        self.alive_count -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dh::tree::Node;

    #[test]
    fn k2_is_a_single_twin_node() {
        let t = build_decomposition(&Graph::complete(2)).unwrap();
        let Node::Internal { op, left, right } = t.nodes()[t.root()] else {
            panic!("expected an internal root")
        };
        assert_eq!(op, Op::TrueTwin);
        let mut leaves = [t.nodes()[left], t.nodes()[right]];
        leaves.sort_by_key(|n| matches!(n, Node::Leaf(1)));
        assert_eq!(leaves, [Node::Leaf(0), Node::Leaf(1)]);
    }

    #[test]
    fn p3_round_trips() {
        let g = Graph::path(3);
        assert_eq!(build_decomposition(&g).unwrap().to_graph(), g);
    }

    #[test]
    fn c5_is_rejected_with_residual() {
        match build_decomposition(&Graph::cycle(5)) {
            Err(DhError::NotDistanceHereditary {
                residual,
                remaining,
            }) => {
                assert_eq!(remaining, vec![0, 1, 2, 3, 4]);
                assert_eq!(residual, Graph::cycle(5));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn residual_is_the_stuck_part() {
        // C5 plus a pendant hanging off vertex 0: the pendant goes first.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)]).unwrap();
        let Err(DhError::NotDistanceHereditary { remaining, .. }) = build_decomposition(&g) else {
            panic!()
        };
        assert_eq!(remaining, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn empty_graph_is_a_contract_error() {
        assert!(matches!(
            build_decomposition(&Graph::empty(0)),
            Err(DhError::EmptyGraph)
        ));
    }

    #[test]
    fn disconnected_and_cograph_inputs() {
        for g in [
            Graph::empty(5),
            Graph::complete(3).disjoint_union(&Graph::path(4)),
            Graph::complete_bipartite(3, 4),
            Graph::complete(6),
            Graph::cycle(4),
            Graph::empty(1),
        ] {
            assert_eq!(build_decomposition(&g).unwrap().to_graph(), g);
        }
    }

    #[test]
    fn no_pendant_or_twin_means_rejected() {
        // Brute-force definition check on C5: no vertex of degree 1, and no
        // pair with equal open or closed neighborhoods.
        let g = Graph::cycle(5);
        for w in 0..5 {
            assert_ne!(g.degree(w), 1);
            for u in 0..5 {
                if u != w {
                    assert_ne!(g.neighbors(u), g.neighbors(w));
                    let mut a: Vec<_> = g.neighbors(u).iter().copied().chain([u]).collect();
                    let mut b: Vec<_> = g.neighbors(w).iter().copied().chain([w]).collect();
                    a.sort();
                    b.sort();
                    assert_ne!(a, b);
                }
            }
        }
        assert!(build_decomposition(&g).is_err());
    }
}
