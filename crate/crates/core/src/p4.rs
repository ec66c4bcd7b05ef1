//! P4-sparse graphs: spider detection, recursive decomposition, and the
//! exact solver.
//!
//! A P4-sparse graph with two or more vertices is a disjoint union, a join,
//! or a spider `(S, C, R)` whose head `G[R]` is again P4-sparse. The
//! optimum follows the decomposition:
//!
//! * union: sum of the parts;
//! * join `G1 + G2`: one side keeps an IRDF of its own (which contains a 2
//!   as soon as that side has an edge) and the other side is all 0; an
//!   edgeless side instead takes one 2 and 1 everywhere else;
//! * spider with a head: `|C| + 1` when thin, `3` when thick;
//! * spider without a head: a split graph.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::labeling::{Label, RomanLabeling};
use crate::split::solve_split;
use crate::Solution;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum P4Error {
    #[error(
        "not P4-sparse: the subgraph on {vertices:?} is connected, co-connected and not a spider"
    )]
    NotP4Sparse { vertices: Vec<Vertex> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpiderKind {
    /// `N(s_i) = {c_i}`.
    Thin,
    /// `N(s_i) = C \ {c_i}`.
    Thick,
}

/// A verified spider partition. `legs[i]` and `body[i]` are `s_i` and
/// `c_i`; legs are sorted by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiderPartition {
    pub legs: Vec<Vertex>,
    pub body: Vec<Vertex>,
    pub head: Vec<Vertex>,
    pub kind: SpiderKind,
}

impl SpiderPartition {
    pub fn k(&self) -> usize {
        self.legs.len()
    }

    /// Checks every spider invariant against `graph`.
    pub fn verify(&self, graph: &Graph) -> bool {
        let k = self.k();
        if k < 2 || self.body.len() != k {
            return false;
        }
        let mut seen = vec![false; graph.n()];
        for &v in self.legs.iter().chain(&self.body).chain(&self.head) {
            if v >= graph.n() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        if !seen.into_iter().all(|s| s) {
            return false;
        }
        if !graph.is_clique(&self.body) || !graph.is_independent(&self.legs) {
            return false;
        }
        let head_ok = self.head.iter().all(|&r| {
            self.body.iter().all(|&c| graph.has_edge(r, c))
                && self.legs.iter().all(|&s| !graph.has_edge(r, s))
        });
        let legs_ok = self
            .legs
            .iter()
            .zip(&self.body)
            .all(|(&s, &c)| match self.kind {
                SpiderKind::Thin => graph.degree(s) == 1 && graph.has_edge(s, c),
                SpiderKind::Thick => {
                    graph.degree(s) == k - 1
                        && !graph.has_edge(s, c)
                        && self.body.iter().all(|&x| x == c || graph.has_edge(s, x))
                }
            });
        head_ok && legs_ok
    }

    fn map(&self, ids: &[Vertex]) -> SpiderPartition {
        let mut pairs: Vec<(Vertex, Vertex)> = self
            .legs
            .iter()
            .zip(&self.body)
            .map(|(&s, &c)| (ids[s], ids[c]))
            .collect();
        pairs.sort_unstable();
        let mut head: Vec<Vertex> = self.head.iter().map(|&r| ids[r]).collect();
        head.sort_unstable();
        SpiderPartition {
            legs: pairs.iter().map(|p| p.0).collect(),
            body: pairs.iter().map(|p| p.1).collect(),
            head,
            kind: self.kind,
        }
    }
}

/// Finds a spider partition, trying the thin shape first.
///
/// Thin candidate: legs are the degree-1 vertices, body their neighbors.
/// Thick candidate: legs are the `δ + 1` vertices of minimum degree `δ`,
/// body the union of their neighborhoods. A candidate is returned only if
/// it passes [`SpiderPartition::verify`].
pub fn detect_spider(graph: &Graph) -> Option<SpiderPartition> {
    thin_candidate(graph)
        .filter(|p| p.verify(graph))
        .or_else(|| thick_candidate(graph).filter(|p| p.verify(graph)))
}

fn thin_candidate(graph: &Graph) -> Option<SpiderPartition> {
    let legs: Vec<Vertex> = (0..graph.n()).filter(|&v| graph.degree(v) == 1).collect();
    let body: Vec<Vertex> = legs.iter().map(|&s| graph.neighbors(s)[0]).collect();
    Some(with_head(graph, legs, body, SpiderKind::Thin))
}

fn thick_candidate(graph: &Graph) -> Option<SpiderPartition> {
    let min_degree = (0..graph.n()).map(|v| graph.degree(v)).min()?;
    let legs: Vec<Vertex> = (0..graph.n())
        .filter(|&v| graph.degree(v) == min_degree)
        .collect();
    if legs.len() != min_degree + 1 {
        return None;
    }
    let mut in_body = vec![false; graph.n()];
    for &s in &legs {
        for &c in graph.neighbors(s) {
            in_body[c] = true;
        }
    }
    let body_set: Vec<Vertex> = (0..graph.n()).filter(|&v| in_body[v]).collect();
    // Pair each leg with the single body vertex it misses.
    let body = legs
        .iter()
        .map(|&s| {
            let mut missing = body_set.iter().filter(|&&c| !graph.has_edge(s, c));
            match (missing.next(), missing.next()) {
                (Some(&c), None) => Some(c),
                _ => None,
            }
        })
        .collect::<Option<Vec<_>>>()?;
    Some(with_head(graph, legs, body, SpiderKind::Thick))
}

fn with_head(
    graph: &Graph,
    legs: Vec<Vertex>,
    body: Vec<Vertex>,
    kind: SpiderKind,
) -> SpiderPartition {
    let mut used = vec![false; graph.n()];
    for &v in legs.iter().chain(&body) {
        used[v] = true;
    }
    SpiderPartition {
        head: (0..graph.n()).filter(|&v| !used[v]).collect(),
        legs,
        body,
        kind,
    }
}

/// Recursive decomposition; vertex ids refer to the decomposed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum P4Decomposition {
    Single(Vertex),
    /// Connected components, ordered by minimum vertex.
    Union(Vec<P4Decomposition>),
    /// Co-components, ordered by minimum vertex.
    Join(Vec<P4Decomposition>),
    Spider {
        partition: SpiderPartition,
        head: Option<Box<P4Decomposition>>,
    },
}

impl P4Decomposition {
    /// All vertices covered by this node, sorted.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        self.collect_vertices(&mut out);
        out.sort_unstable();
        out
    }

    fn collect_vertices(&self, out: &mut Vec<Vertex>) {
        match self {
            P4Decomposition::Single(v) => out.push(*v),
            P4Decomposition::Union(parts) | P4Decomposition::Join(parts) => {
                parts.iter().for_each(|p| p.collect_vertices(out))
            }
            P4Decomposition::Spider { partition, .. } => {
                out.extend(&partition.legs);
                out.extend(&partition.body);
                out.extend(&partition.head);
            }
        }
    }

    /// Whether any spider node occurs, i.e. the graph is not a cograph.
    pub fn has_spider(&self) -> bool {
        match self {
            P4Decomposition::Single(_) => false,
            P4Decomposition::Union(parts) | P4Decomposition::Join(parts) => {
                parts.iter().any(P4Decomposition::has_spider)
            }
            P4Decomposition::Spider { .. } => true,
        }
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        match self {
            P4Decomposition::Single(v) => writeln!(f, "{pad}vertex {v}"),
            P4Decomposition::Union(parts) | P4Decomposition::Join(parts) => {
                let name = if matches!(self, P4Decomposition::Union(_)) {
                    "union"
                } else {
                    "join"
                };
                writeln!(f, "{pad}{name} ({} parts)", parts.len())?;
                parts
                    .iter()
                    .try_for_each(|p| p.write_indented(f, depth + 1))
            }
            P4Decomposition::Spider { partition, head } => {
                let kind = match partition.kind {
                    SpiderKind::Thin => "thin",
                    SpiderKind::Thick => "thick",
                };
                writeln!(
                    f,
                    "{pad}{kind} spider k={} S={:?} C={:?} R={:?}",
                    partition.k(),
                    partition.legs,
                    partition.body,
                    partition.head
                )?;
                match head {
                    Some(h) => h.write_indented(f, depth + 1),
                    None => Ok(()),
                }
            }
        }
    }
}

impl fmt::Display for P4Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

/// Splits `graph` into single vertices, unions, joins and spiders. The
/// empty graph decomposes into an empty union.
pub fn decompose_p4sparse(graph: &Graph) -> Result<P4Decomposition, P4Error> {
    let ids: Vec<Vertex> = (0..graph.n()).collect();
    decompose_local(graph, &ids)
}

/// `graph` is an induced subgraph relabelled to `0..`, `ids` maps back.
fn decompose_local(graph: &Graph, ids: &[Vertex]) -> Result<P4Decomposition, P4Error> {
    if graph.n() == 1 {
        return Ok(P4Decomposition::Single(ids[0]));
    }
    let parts = |sets: Vec<Vec<Vertex>>| -> Result<Vec<P4Decomposition>, P4Error> {
        sets.iter()
            .map(|set| {
                let sub_ids: Vec<Vertex> = set.iter().map(|&v| ids[v]).collect();
                decompose_local(&graph.induced_subgraph(set), &sub_ids)
            })
            .collect()
    };
    let components = graph.connected_components();
    if components.len() != 1 {
        return Ok(P4Decomposition::Union(parts(components)?));
    }
    let co_components = graph.co_components();
    if co_components.len() > 1 {
        return Ok(P4Decomposition::Join(parts(co_components)?));
    }
    let Some(partition) = detect_spider(graph) else {
        let mut vertices = ids.to_vec();
        vertices.sort_unstable();
        return Err(P4Error::NotP4Sparse { vertices });
    };
    let head = if partition.head.is_empty() {
        None
    } else {
        let head_ids: Vec<Vertex> = partition.head.iter().map(|&v| ids[v]).collect();
        Some(Box::new(decompose_local(
            &graph.induced_subgraph(&partition.head),
            &head_ids,
        )?))
    };
    Ok(P4Decomposition::Spider {
        partition: partition.map(ids),
        head,
    })
}

/// Summary of one join operand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JoinOperand {
    pub value: usize,
    pub size: usize,
    pub edgeless: bool,
}

/// How the optimum of `G1 + G2` is realised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinChoice {
    /// Keep the first operand's own certificate, zero the second.
    KeepFirst,
    KeepSecond,
    /// Edgeless first operand: one 2, all other vertices 1; second zeroed.
    StarFirst,
    StarSecond,
}

/// Binary join rule; ties go to the first alternative listed per case.
pub fn join(a: JoinOperand, b: JoinOperand) -> (JoinOperand, JoinChoice) {
    let (value, choice) = match (a.edgeless, b.edgeless) {
        (true, true) if a.size <= b.size => (a.size + 1, JoinChoice::StarFirst),
        (true, true) => (b.size + 1, JoinChoice::StarSecond),
        (true, false) if a.size < b.value => (a.size + 1, JoinChoice::StarFirst),
        (true, false) => (b.value, JoinChoice::KeepSecond),
        (false, true) if a.value <= b.size + 1 => (a.value, JoinChoice::KeepFirst),
        (false, true) => (b.size + 1, JoinChoice::StarSecond),
        (false, false) if a.value <= b.value => (a.value, JoinChoice::KeepFirst),
        (false, false) => (b.value, JoinChoice::KeepSecond),
    };
    let joined = JoinOperand {
        value,
        size: a.size + b.size,
        edgeless: false,
    };
    (joined, choice)
}

/// `i_R` of a P4-sparse graph with a certificate.
pub fn solve_p4(graph: &Graph) -> Result<Solution, P4Error> {
    let decomposition = decompose_p4sparse(graph)?;
    Ok(solve_decomposition(graph, &decomposition))
}

/// Solves along an existing decomposition of `graph`.
pub fn solve_decomposition(graph: &Graph, decomposition: &P4Decomposition) -> Solution {
    let mut labeling = RomanLabeling::zeros(graph.n());
    let value = solve_node(graph, decomposition, &mut labeling);
    debug_assert_eq!(value, labeling.weight());
    Solution {
        value,
        certificate: labeling,
    }
}

/// Writes an optimal labeling of the node's vertex set into `labeling`
/// and returns its weight. Labels outside the node are left untouched.
fn solve_node(graph: &Graph, node: &P4Decomposition, labeling: &mut RomanLabeling) -> usize {
    match node {
        P4Decomposition::Single(v) => {
            labeling.set(*v, Label::One);
            1
        }
        P4Decomposition::Union(parts) => parts.iter().map(|p| solve_node(graph, p, labeling)).sum(),
        P4Decomposition::Join(parts) => {
            let solved: Vec<(JoinOperand, Vec<Vertex>)> = parts
                .iter()
                .map(|p| {
                    let value = solve_node(graph, p, labeling);
                    let vertices = p.vertices();
                    let edgeless = vertices.iter().all(|&v| {
                        graph
                            .neighbors(v)
                            .iter()
                            .all(|u| vertices.binary_search(u).is_err())
                    });
                    let operand = JoinOperand {
                        value,
                        size: vertices.len(),
                        edgeless,
                    };
                    (operand, vertices)
                })
                .collect();
            // Fold from the right: H1 + (H2 + (... + Hh)).
            let mut iter = solved.into_iter().rev();
            let (mut acc, mut acc_vertices) = iter.next().expect("a join has parts");
            for (first, first_vertices) in iter {
                let (joined, choice) = join(first, acc);
                match choice {
                    JoinChoice::KeepFirst => zero(labeling, &acc_vertices),
                    JoinChoice::KeepSecond => zero(labeling, &first_vertices),
                    JoinChoice::StarFirst => {
                        star(labeling, &first_vertices);
                        zero(labeling, &acc_vertices);
                    }
                    JoinChoice::StarSecond => {
                        star(labeling, &acc_vertices);
                        zero(labeling, &first_vertices);
                    }
                }
                acc = joined;
                acc_vertices.extend(first_vertices);
            }
            acc.value
        }
        P4Decomposition::Spider { partition, head } => match head {
            None => {
                let mut vertices = partition.legs.clone();
                vertices.extend(&partition.body);
                let sub = solve_split(&graph.induced_subgraph(&vertices))
                    .expect("a headless spider is a split graph");
                for (i, &v) in vertices.iter().enumerate() {
                    labeling.set(v, sub.certificate.get(i));
                }
                sub.value
            }
            Some(_) => {
                let touched = partition
                    .legs
                    .iter()
                    .chain(&partition.body)
                    .chain(&partition.head);
                for &v in touched {
                    labeling.set(v, Label::Zero);
                }
                labeling.set(partition.body[0], Label::Two);
                match partition.kind {
                    SpiderKind::Thin => {
                        for &s in &partition.legs[1..] {
                            labeling.set(s, Label::One);
                        }
                        partition.k() + 1
                    }
                    SpiderKind::Thick => {
                        labeling.set(partition.legs[0], Label::One);
                        3
                    }
                }
            }
        },
    }
}

fn zero(labeling: &mut RomanLabeling, vertices: &[Vertex]) {
    for &v in vertices {
        labeling.set(v, Label::Zero);
    }
}

/// One 2 on the smallest vertex, 1 on the rest.
fn star(labeling: &mut RomanLabeling, vertices: &[Vertex]) {
    let first = *vertices.iter().min().expect("non-empty operand");
    for &v in vertices {
        labeling.set(v, if v == first { Label::Two } else { Label::One });
    }
}
