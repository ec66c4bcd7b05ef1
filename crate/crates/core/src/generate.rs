//! Seeded instance generators for every supported graph class.
//!
//! All randomness comes from [`Prng`]: xoshiro256** seeded through
//! splitmix64. Integers below `m` are drawn as the high 64 bits of
//! `next_u64() * m`, reals in `[0, 1)` as `(next_u64() >> 11) * 2^-53`.
//! Given the same [`GenSpec`] every generator returns the same graph on
//! every platform.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use thiserror::Error;

use crate::dh::tree::LeafSplitter;
use crate::dh::{DecompTree, Op};
use crate::graph::{Graph, Vertex};

/// Deterministic random stream.
#[derive(Debug, Clone)]
pub struct Prng(Xoshiro256StarStar);

impl Prng {
    pub fn new(seed: u64) -> Self {
        Prng(Xoshiro256StarStar::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0, "empty range");
        ((self.next_u64() as u128 * bound as u128) >> 64) as usize
    }

    /// Uniform integer in `lo..=hi`.
    pub fn range_inclusive(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    /// Uniform real in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    /// Index drawn proportionally to `weights`; zero weights never win.
    pub fn weighted(&mut self, weights: &[f64]) -> usize {
        let total: f64 = weights.iter().sum();
        let x = self.unit() * total;
        let mut acc = 0.0;
        for (i, &w) in weights.iter().enumerate() {
            acc += w;
            if w > 0.0 && x < acc {
                return i;
            }
        }
        weights
            .iter()
            .rposition(|&w| w > 0.0)
            .expect("some weight is positive")
    }

    /// Fisher-Yates, from the back.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Dh,
    Split,
    P4Sparse,
    Cograph,
    Gnp,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}

/// Everything a generator needs. Knobs irrelevant to `class` are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub class: GraphClass,
    pub n: usize,
    pub seed: u64,
    /// Relative weights of pendant, true-twin and false-twin insertions.
    pub dh_weights: [f64; 3],
    /// Share of vertices placed in the clique of a split graph.
    pub clique_fraction: f64,
    /// Probability of each extra clique-to-independent edge.
    pub cross_p: f64,
    /// Relative weights of union, join and spider nodes.
    pub p4_weights: [f64; 3],
    pub spider_k_min: usize,
    pub spider_k_max: usize,
    /// Generate spiders without a head (requires an even vertex count
    /// wherever a spider is placed).
    pub empty_head: bool,
    pub edge_p: f64,
}

impl GenSpec {
    pub fn new(class: GraphClass, n: usize, seed: u64) -> Self {
        GenSpec {
            class,
            n,
            seed,
            dh_weights: [1.0, 1.0, 1.0],
            clique_fraction: 0.4,
            cross_p: 0.3,
            p4_weights: [1.0, 1.0, 1.0],
            spider_k_min: 2,
            spider_k_max: 8,
            empty_head: false,
            edge_p: 0.3,
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |msg: String| Err(GenError::InvalidSpec(msg));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        let prob = |name: &str, p: f64| -> Result<(), GenError> {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                bad(format!("{name} = {p} is not a probability"))
            }
        };
        let weights = |name: &str, w: &[f64]| -> Result<(), GenError> {
            if w.iter().any(|x| !x.is_finite() || *x < 0.0) || w.iter().all(|&x| x == 0.0) {
                bad(format!(
                    "{name} must be non-negative and not all zero, got {w:?}"
                ))
            } else {
                Ok(())
            }
        };
        match self.class {
            GraphClass::Dh => weights("dh weights", &self.dh_weights),
            GraphClass::Split => {
                prob("clique fraction", self.clique_fraction)?;
                prob("cross-edge probability", self.cross_p)
            }
            GraphClass::P4Sparse | GraphClass::Cograph => {
                weights("p4 weights", &self.p4_weights)?;
                if self.spider_k_min < 2 || self.spider_k_max < self.spider_k_min {
                    return bad(format!(
                        "spider k range {}..={} must satisfy 2 <= min <= max",
                        self.spider_k_min, self.spider_k_max
                    ));
                }
                let only_spiders = self.p4_weights[0] == 0.0 && self.p4_weights[1] == 0.0;
                if self.class == GraphClass::P4Sparse
                    && only_spiders
                    && self.empty_head
                    && self.n % 2 == 1
                {
                    return bad("headless spiders need an even vertex count".into());
                }
                Ok(())
            }
            GraphClass::Gnp => prob("edge probability", self.edge_p),
        }
    }
}

/// Generates a graph of `spec.class`.
pub fn generate(spec: &GenSpec) -> Result<Graph, GenError> {
    match spec.class {
        GraphClass::Dh => gen_dh(spec).map(|(g, _)| g),
        GraphClass::Split => gen_split(spec),
        GraphClass::P4Sparse | GraphClass::Cograph => gen_p4sparse(spec),
        GraphClass::Gnp => gen_gnp(spec),
    }
}

fn expect_class(spec: &GenSpec, allowed: &[GraphClass]) -> Result<(), GenError> {
    if allowed.contains(&spec.class) {
        spec.validate()
    } else {
        Err(GenError::InvalidSpec(format!(
            "generator for {allowed:?} called with class {:?}",
            spec.class
        )))
    }
}

/// Random distance-hereditary graph together with its decomposition tree.
pub fn gen_dh(spec: &GenSpec) -> Result<(Graph, DecompTree), GenError> {
    let tree = gen_dh_tree(spec)?;
    Ok((tree.to_graph(), tree))
}

/// The tree half of [`gen_dh`], without materialising the graph.
///
/// Vertices arrive one at a time as a pendant, true twin or false twin of
/// a uniformly chosen earlier vertex; ids are a random permutation of the
/// arrival order.
pub fn gen_dh_tree(spec: &GenSpec) -> Result<DecompTree, GenError> {
    expect_class(spec, &[GraphClass::Dh])?;
    let mut rng = Prng::new(spec.seed);
    let mut ids: Vec<Vertex> = (0..spec.n).collect();
    rng.shuffle(&mut ids);
    let mut splitter = LeafSplitter::new(spec.n, ids[0]);
    for v in 1..spec.n {
        let u = rng.below(v);
        let op = [Op::Attachment, Op::TrueTwin, Op::FalseTwin][rng.weighted(&spec.dh_weights)];
        splitter.split(ids[u], ids[v], op);
    }
    Ok(splitter.finish())
}

/// Random split graph: a clique of `round(clique_fraction * n)` vertices
/// (at least one), each other vertex tied to one random clique vertex plus
/// independent extra clique edges with probability `cross_p`.
pub fn gen_split(spec: &GenSpec) -> Result<Graph, GenError> {
    expect_class(spec, &[GraphClass::Split])?;
    let mut rng = Prng::new(spec.seed);
    let n = spec.n;
    let k = ((spec.clique_fraction * n as f64).round() as usize).clamp(1, n);
    let mut ids: Vec<Vertex> = (0..n).collect();
    rng.shuffle(&mut ids);
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            edges.push((ids[a], ids[b]));
        }
    }
    for y in k..n {
        let anchor = rng.below(k);
        for x in 0..k {
            if x == anchor || rng.bernoulli(spec.cross_p) {
                edges.push((ids[x], ids[y]));
            }
        }
    }
    Ok(Graph::from_edges(n, edges).expect("generated edges are valid"))
}

/// Random P4-sparse graph built top-down from union, join and spider
/// nodes; cographs are the same process with spiders disabled.
pub fn gen_p4sparse(spec: &GenSpec) -> Result<Graph, GenError> {
    expect_class(spec, &[GraphClass::P4Sparse, GraphClass::Cograph])?;
    let mut weights = spec.p4_weights;
    if spec.class == GraphClass::Cograph {
        weights[2] = 0.0;
        if weights[0] == 0.0 && weights[1] == 0.0 {
            weights = [1.0, 1.0, 0.0];
        }
    }
    let mut builder = P4Builder {
        rng: Prng::new(spec.seed),
        spec,
        weights,
        next: 0,
        edges: Vec::new(),
    };
    builder.build(spec.n);
    let P4Builder { mut rng, edges, .. } = builder;
    let mut ids: Vec<Vertex> = (0..spec.n).collect();
    rng.shuffle(&mut ids);
    Ok(
        Graph::from_edges(spec.n, edges.into_iter().map(|(a, b)| (ids[a], ids[b])))
            .expect("generated edges are valid"),
    )
}

struct P4Builder<'a> {
    rng: Prng,
    spec: &'a GenSpec,
    weights: [f64; 3],
    next: Vertex,
    edges: Vec<(Vertex, Vertex)>,
}

impl P4Builder<'_> {
    /// Builds a part on `n` fresh vertices and returns them.
    fn build(&mut self, n: usize) -> Vec<Vertex> {
        if n == 1 {
            self.next += 1;
            return vec![self.next - 1];
        }
        let spider_range = self.spider_range(n);
        let mut weights = self.weights;
        if spider_range.is_none() {
            weights[2] = 0.0;
        }
        if weights.iter().all(|&w| w == 0.0) {
            weights = [1.0, 1.0, 0.0];
        }
        match self.rng.weighted(&weights) {
            kind @ (0 | 1) => {
                let a = 1 + self.rng.below(n - 1);
                let left = self.build(a);
                let right = self.build(n - a);
                if kind == 1 {
                    for &x in &left {
                        for &y in &right {
                            self.edges.push((x, y));
                        }
                    }
                }
                left.into_iter().chain(right).collect()
            }
            _ => {
                let (lo, hi) = spider_range.expect("spider weight is zero when infeasible");
                let k = self.rng.range_inclusive(lo, hi);
                let thick = self.rng.bernoulli(0.5);
                let legs: Vec<Vertex> = (self.next..self.next + k).collect();
                let body: Vec<Vertex> = (self.next + k..self.next + 2 * k).collect();
                self.next += 2 * k;
                let head = if n > 2 * k {
                    self.build(n - 2 * k)
                } else {
                    Vec::new()
                };
                for i in 0..k {
                    for j in 0..k {
                        if (i == j) != thick {
                            self.edges.push((legs[i], body[j]));
                        }
                        if i < j {
                            self.edges.push((body[i], body[j]));
                        }
                    }
                    for &r in &head {
                        self.edges.push((body[i], r));
                    }
                }
                legs.into_iter().chain(body).chain(head).collect()
            }
        }
    }

    /// Admissible leg counts for a spider on `n` vertices.
    fn spider_range(&self, n: usize) -> Option<(usize, usize)> {
        if self.spec.empty_head {
            return (n.is_multiple_of(2) && n >= 4).then_some((n / 2, n / 2));
        }
        let hi = self.spec.spider_k_max.min(n / 2);
        (hi >= self.spec.spider_k_min).then_some((self.spec.spider_k_min, hi))
    }
}

/// Erdos-Renyi `G(n, p)`; pairs are visited as `(i, j)`, `i < j`, in
/// lexicographic order.
pub fn gen_gnp(spec: &GenSpec) -> Result<Graph, GenError> {
    expect_class(spec, &[GraphClass::Gnp])?;
    let mut rng = Prng::new(spec.seed);
    let n = spec.n;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.bernoulli(spec.edge_p) {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_edges(n, edges).expect("generated edges are valid"))
}
