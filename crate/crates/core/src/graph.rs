//! Simple undirected graphs on vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Vertex identifier, always in `0..graph.n()`.
pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("input is empty: expected a vertex count on the first line")]
    MissingHeader,
    #[error("line {line}: cannot parse {token:?} as a non-negative integer")]
    BadToken { line: usize, token: String },
    #[error("line {line}: expected exactly two vertex ids, found {found} tokens")]
    BadArity { line: usize, found: usize },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    OutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("labeling has length {found}, graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("label {label:?} at position {position} is not one of 0, 1, 2")]
    BadLabel { position: usize, label: String },
}

/// Construction errors for [`Graph::from_edges`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EdgeError {
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
}

/// A simple undirected graph.
///
/// Neighbor lists are sorted and duplicate free, so adjacency tests are a
/// binary search and iteration order is deterministic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge iterator. Duplicate edges (in either
    /// orientation) collapse; self-loops and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, EdgeError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(EdgeError::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(EdgeError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adj))
    }

    /// Sorts and dedups symmetric raw adjacency lists.
    pub(crate) fn from_raw_adjacency(mut adj: Vec<Vec<Vertex>>) -> Self {
        let mut twice_m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice_m += list.len();
        }
        Graph {
            adj,
            m: twice_m / 2,
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect();
        Graph {
            adj,
            m: n * n.saturating_sub(1) / 2,
        }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Self::from_edges(a + b, edges).expect("bipartite edges are valid")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|list| list.iter().map(|&u| u + shift).collect()),
        );
        Graph {
            adj,
            m: self.m + other.m,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// All edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut adj = Vec::with_capacity(n);
        for v in 0..n {
            let mut list = Vec::with_capacity(n - 1 - self.degree(v).min(n - 1));
            let mut it = self.adj[v].iter().peekable();
            for u in 0..n {
                if it.peek() == Some(&&u) {
                    it.next();
                } else if u != v {
                    list.push(u);
                }
            }
            adj.push(list);
        }
        let m = n * n.saturating_sub(1) / 2 - self.m;
        Graph { adj, m }
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in
    /// the given order. Position `i` of the result corresponds to
    /// `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<Vertex> = self.adj[v]
                    .iter()
                    .filter_map(|&u| (local[u] != usize::MAX).then_some(local[u]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Self::from_raw_adjacency(adj)
    }

    /// Whether `set` is pairwise non-adjacent.
    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        let mut member = vec![false; self.n()];
        for &v in set {
            member[v] = true;
        }
        set.iter().all(|&v| self.adj[v].iter().all(|&u| !member[u]))
    }

    /// Whether `set` is pairwise adjacent.
    pub fn is_clique(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Whether every vertex is in `set` or has a neighbor in it.
    pub fn is_dominating(&self, set: &[Vertex]) -> bool {
        let mut covered = vec![false; self.n()];
        for &v in set {
            covered[v] = true;
            for &u in &self.adj[v] {
                covered[u] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }

    /// Connected components, each sorted, ordered by minimum vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected components of the complement, computed without building
    /// it: BFS over non-neighbors, keeping the unvisited vertices in a list
    /// that shrinks as they are discovered.
    pub fn co_components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut unvisited: Vec<Vertex> = (0..n).collect();
        let mut mark = vec![false; n];
        let mut out = Vec::new();
        while let Some(s) = unvisited.first().copied() {
            unvisited.swap_remove(0);
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &u in &self.adj[v] {
                    mark[u] = true;
                }
                let mut keep = Vec::with_capacity(unvisited.len());
                for &u in &unvisited {
                    if mark[u] {
                        keep.push(u);
                    } else {
                        comp.push(u);
                    }
                }
                for &u in &self.adj[v] {
                    mark[u] = false;
                }
                unvisited = keep;
            }
            comp.sort_unstable();
            out.push(comp);
            unvisited.sort_unstable();
        }
        out.sort_by_key(|c| c[0]);
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    /// Parses the edge-list text format: the first non-comment line holds
    /// `n`, each further line holds `u v`. Lines starting with `#` and blank
    /// lines are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
        let header_tokens: Vec<&str> = header.split_whitespace().collect();
        if header_tokens.len() != 1 {
            return Err(ParseError::BadArity {
                line: header_line,
                found: header_tokens.len(),
            });
        }
        let n = parse_usize(header_tokens[0], header_line)?;

        let mut edges = Vec::new();
        for (line, content) in lines {
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(ParseError::BadArity {
                    line,
                    found: tokens.len(),
                });
            }
            let u = parse_usize(tokens[0], line)?;
            let v = parse_usize(tokens[1], line)?;
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(ParseError::OutOfRange { line, vertex, n });
                }
            }
            if u == v {
                return Err(ParseError::SelfLoop { line, vertex: u });
            }
            edges.push((u, v));
        }
        Ok(Graph::from_edges(n, edges).expect("edges validated while parsing"))
    }

    /// Serializes to the edge-list format with edges sorted, `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

pub(crate) fn parse_usize(token: &str, line: usize) -> Result<usize, ParseError> {
    token.parse::<usize>().map_err(|_| ParseError::BadToken {
        line,
        token: token.to_string(),
    })
}
