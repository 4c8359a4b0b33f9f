//! Random regular (multi)graphs in the configuration model.
//!
//! A graph is stored as a pairing of labeled half-edges: vertex `v` of degree
//! `d` owns `d` consecutive half-edge indices, and `pairing` is a fixed-point
//! free involution on all half-edges. In the regular case vertex `v` owns
//! indices `[v*r, (v+1)*r)`, which fixes a canonical labeling for
//! reproducibility. Every pair `{h, pairing[h]}` is one (multi)edge; the
//! canonical undirected edge key is `min(h, pairing[h])`.

mod io;
mod spectral;

pub use io::{export_edge_list, import_edge_list};
pub use spectral::estimate_lambda2;

use crate::error::{Error, Result};
use crate::rng::{rng_for, Stream};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha12Rng;

/// Sentinel for an unpaired half-edge in partial configurations.
pub const UNPAIRED: u32 = u32::MAX;

/// A prescribed degree sequence with a degree cap.
#[derive(Debug, Clone)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
    max_degree: usize,
}

impl DegreeSequence {
    /// Validates that the sum of degrees is even and every degree is at most
    /// `max_degree`.
    pub fn new(degrees: Vec<usize>, max_degree: usize) -> Result<Self> {
        let total: usize = degrees.iter().sum();
        if total % 2 != 0 {
            return Err(Error::OddDegreeSum(total));
        }
        for (vertex, &degree) in degrees.iter().enumerate() {
            if degree > max_degree {
                return Err(Error::DegreeTooLarge {
                    vertex,
                    degree,
                    max: max_degree,
                });
            }
        }
        Ok(Self {
            degrees,
            max_degree,
        })
    }

    /// The constant sequence of an r-regular graph on n vertices.
    pub fn regular(n: usize, r: usize) -> Result<Self> {
        if n * r % 2 != 0 {
            return Err(Error::OddDegreeSum(n * r));
        }
        Ok(Self {
            degrees: vec![r; n],
            max_degree: r,
        })
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn total(&self) -> usize {
        self.degrees.iter().sum()
    }
}

/// An r-regular (multi)graph, or more generally a bounded-degree multigraph,
/// represented as a pairing of labeled half-edges.
#[derive(Debug, Clone)]
pub struct HalfEdgeGraph {
    n: usize,
    /// `offsets[v]..offsets[v+1]` are the half-edges owned by `v`.
    offsets: Vec<u32>,
    /// Owner vertex of each half-edge.
    owner: Vec<u32>,
    /// Fixed-point free involution on half-edges.
    pairing: Vec<u32>,
}

impl HalfEdgeGraph {
    /// Builds the graph from per-vertex degrees and an explicit pairing over
    /// the canonical half-edge layout.
    pub fn from_pairing(degrees: &[usize], pairing: Vec<u32>) -> Result<Self> {
        let n = degrees.len();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut owner = Vec::new();
        offsets.push(0u32);
        for (v, &d) in degrees.iter().enumerate() {
            owner.extend(std::iter::repeat_n(v as u32, d));
            offsets.push(offsets[v] + d as u32);
        }
        if pairing.len() != owner.len() {
            return Err(Error::InvalidParameters(format!(
                "pairing covers {} half-edges, degrees require {}",
                pairing.len(),
                owner.len()
            )));
        }
        for (h, &p) in pairing.iter().enumerate() {
            let h = h as u32;
            if p == h || p as usize >= pairing.len() || pairing[p as usize] != h {
                return Err(Error::InvalidParameters(format!(
                    "pairing is not a fixed-point free involution at half-edge {h}"
                )));
            }
        }
        Ok(Self {
            n,
            offsets,
            owner,
            pairing,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges (pairs).
    pub fn m(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn num_half_edges(&self) -> usize {
        self.pairing.len()
    }

    pub fn degree(&self, v: u32) -> usize {
        (self.offsets[v as usize + 1] - self.offsets[v as usize]) as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n as u32).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `Some(r)` when every vertex has degree `r`.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let r = self.degree(0);
        (1..self.n as u32).all(|v| self.degree(v) == r).then_some(r)
    }

    /// Half-edge indices owned by `v`.
    pub fn half_edges(&self, v: u32) -> std::ops::Range<u32> {
        self.offsets[v as usize]..self.offsets[v as usize + 1]
    }

    pub fn owner(&self, h: u32) -> u32 {
        self.owner[h as usize]
    }

    pub fn mate(&self, h: u32) -> u32 {
        self.pairing[h as usize]
    }

    /// Canonical undirected edge key of the pair containing `h`.
    pub fn edge_id(&self, h: u32) -> u32 {
        h.min(self.pairing[h as usize])
    }

    /// Neighbor reached by departing along half-edge `h`.
    pub fn head(&self, h: u32) -> u32 {
        self.owner[self.pairing[h as usize] as usize]
    }

    /// Per-vertex adjacency derived from the pairing: `(neighbor, half-edge)`.
    pub fn adjacency(&self, v: u32) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.half_edges(v).map(move |h| (self.head(h), h))
    }

    /// All edges as `(u, v)` with `u <= v`, one entry per pair.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.pairing.len() as u32).filter_map(move |h| {
            let p = self.pairing[h as usize];
            (h < p).then(|| {
                let a = self.owner[h as usize];
                let b = self.owner[p as usize];
                (a.min(b), a.max(b))
            })
        })
    }

    /// Canonically sorted edge list: by (min endpoint, max endpoint), parallel
    /// edges repeated.
    pub fn canonical_edge_list(&self) -> Vec<(u32, u32)> {
        let mut edges: Vec<(u32, u32)> = self.edges().collect();
        edges.sort_unstable();
        edges
    }

    /// True iff the graph has no loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        for h in 0..self.pairing.len() as u32 {
            if self.owner[h as usize] == self.owner[self.pairing[h as usize] as usize] {
                return false;
            }
        }
        let mut edges = self.canonical_edge_list();
        let before = edges.len();
        edges.dedup();
        edges.len() == before
    }

    /// True iff all vertices are reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::from([0u32]);
        seen[0] = true;
        let mut count = 1usize;
        while let Some(v) = queue.pop_front() {
            for h in self.half_edges(v) {
                let w = self.head(h);
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }
}

/// Uniform random pairing over the canonical half-edge layout of `degrees`.
fn sample_pairing(degrees: &[usize], rng: &mut ChaCha12Rng) -> Vec<u32> {
    let total: usize = degrees.iter().sum();
    let mut points: Vec<u32> = (0..total as u32).collect();
    points.shuffle(rng);
    let mut pairing = vec![UNPAIRED; total];
    for pair in points.chunks_exact(2) {
        pairing[pair[0] as usize] = pair[1];
        pairing[pair[1] as usize] = pair[0];
    }
    pairing
}

/// Samples a uniformly random configuration-model multigraph with `n` vertices
/// of degree `r`. Deterministic given `(n, r, seed)`.
pub fn sample_regular_configuration(n: usize, r: usize, seed: u64) -> Result<HalfEdgeGraph> {
    let seq = DegreeSequence::regular(n, r)?;
    let mut rng = rng_for(seed, Stream::Graph);
    let pairing = sample_pairing(seq.degrees(), &mut rng);
    HalfEdgeGraph::from_pairing(seq.degrees(), pairing)
}

/// Samples a uniform multigraph with the given degree sequence.
pub fn sample_with_degree_sequence(seq: &DegreeSequence, seed: u64) -> Result<HalfEdgeGraph> {
    let mut rng = rng_for(seed, Stream::Graph);
    let pairing = sample_pairing(seq.degrees(), &mut rng);
    HalfEdgeGraph::from_pairing(seq.degrees(), pairing)
}

/// Rejection-samples configurations until one is simple. The result is
/// uniform over simple r-regular graphs. Returns the graph together with the
/// number of rejected configurations.
pub fn sample_simple_regular(
    n: usize,
    r: usize,
    seed: u64,
    max_retries: usize,
) -> Result<(HalfEdgeGraph, usize)> {
    if n <= r {
        return Err(Error::InvalidParameters(format!(
            "need n > r for a simple r-regular graph (n = {n}, r = {r})"
        )));
    }
    let seq = DegreeSequence::regular(n, r)?;
    let mut rng = rng_for(seed, Stream::Graph);
    for retries in 0..=max_retries {
        let pairing = sample_pairing(seq.degrees(), &mut rng);
        let g = HalfEdgeGraph::from_pairing(seq.degrees(), pairing)?;
        if g.is_simple() {
            return Ok((g, retries));
        }
    }
    Err(Error::SimpleRejectionExhausted {
        retries: max_retries,
    })
}

/// Default locality-check radius exponent.
pub const DEFAULT_EPS1: f64 = 0.25;

/// Tree-likeness radius `max(2, floor(eps1 * log n / log r))`. Desk-scale n
/// makes the raw value tiny, so the lower clamp keeps the check meaningful.
pub fn nice_depth(n: usize, r: usize, eps1: f64) -> usize {
    let raw = (eps1 * (n as f64).ln() / (r as f64).ln()).floor();
    (raw as usize).max(2)
}

/// The set of vertices whose distance-`depth` ball induces a tree.
#[derive(Debug, Clone)]
pub struct NiceSet {
    pub nice: Vec<bool>,
    pub nice_count: usize,
    pub depth: usize,
}

impl NiceSet {
    pub fn non_nice_count(&self) -> usize {
        self.nice.len() - self.nice_count
    }
}

/// BFS with cycle detection around every vertex. A vertex is nice when the
/// subgraph induced by its distance-`depth` ball is a tree.
pub fn nice_vertices(g: &HalfEdgeGraph, depth: usize) -> NiceSet {
    assert!(depth >= 1, "depth must be at least 1");
    let n = g.n();
    let mut nice = vec![false; n];
    let mut nice_count = 0usize;
    // Stamped visit marks avoid clearing between roots.
    let mut stamp = vec![u32::MAX; n];
    let mut dist = vec![0u32; n];
    let mut parent_edge = vec![UNPAIRED; n];
    let mut queue: Vec<u32> = Vec::new();

    for root in 0..n as u32 {
        queue.clear();
        queue.push(root);
        stamp[root as usize] = root;
        dist[root as usize] = 0;
        parent_edge[root as usize] = UNPAIRED;
        let mut tree = true;
        let mut head = 0usize;
        'bfs: while head < queue.len() {
            let v = queue[head];
            head += 1;
            let dv = dist[v as usize];
            for h in g.half_edges(v) {
                if h == parent_edge[v as usize] {
                    continue;
                }
                let w = g.head(h);
                if stamp[w as usize] == root {
                    // Second route into an in-ball vertex: the ball has a cycle.
                    tree = false;
                    break 'bfs;
                }
                if dv < depth as u32 {
                    stamp[w as usize] = root;
                    dist[w as usize] = dv + 1;
                    parent_edge[w as usize] = g.mate(h);
                    queue.push(w);
                }
            }
        }
        if tree {
            nice[root as usize] = true;
            nice_count += 1;
        }
    }
    NiceSet {
        nice,
        nice_count,
        depth,
    }
}

/// Summary diagnostics of a sampled graph.
#[derive(Debug, Clone)]
pub struct GraphStats {
    pub n: usize,
    pub r: usize,
    pub simple: bool,
    pub nice_count: usize,
    /// Distinct non-tree edges discovered inside the niceness balls; a proxy
    /// count of short-cycle witnesses.
    pub small_cycle_count: usize,
    pub lambda2_estimate: Option<f64>,
}

/// Computes simplicity, niceness at `depth`, and short-cycle witnesses.
/// `lambda2_estimate` is left to `estimate_lambda2` (diagnostic only).
pub fn graph_stats(g: &HalfEdgeGraph, depth: usize) -> GraphStats {
    let nice = nice_vertices(g, depth);
    let mut cycle_edges = std::collections::HashSet::new();
    // Re-walk the balls of non-nice vertices, recording closing edges.
    for root in 0..g.n() as u32 {
        if nice.nice[root as usize] {
            continue;
        }
        let mut dist = std::collections::HashMap::new();
        let mut parent_edge = std::collections::HashMap::new();
        dist.insert(root, 0u32);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[&v];
            for h in g.half_edges(v) {
                if parent_edge.get(&v) == Some(&h) {
                    continue;
                }
                let w = g.head(h);
                if let std::collections::hash_map::Entry::Vacant(slot) = dist.entry(w) {
                    if dv < depth as u32 {
                        slot.insert(dv + 1);
                        parent_edge.insert(w, g.mate(h));
                        queue.push_back(w);
                    }
                } else {
                    cycle_edges.insert(g.edge_id(h));
                }
            }
        }
    }
    GraphStats {
        n: g.n(),
        r: g.max_degree(),
        simple: g.is_simple(),
        nice_count: nice.nice_count,
        small_cycle_count: cycle_edges.len(),
        lambda2_estimate: None,
    }
}

/// Builds a deterministic cycle graph on `n` vertices (test and demo helper).
pub fn cycle_graph(n: usize) -> HalfEdgeGraph {
    assert!(n >= 3);
    let degrees = vec![2usize; n];
    let mut pairing = vec![UNPAIRED; 2 * n];
    // Half-edges of v: 2v (towards v+1), 2v+1 (towards v-1).
    for v in 0..n {
        let next = (v + 1) % n;
        pairing[2 * v] = (2 * next + 1) as u32;
        pairing[2 * next + 1] = (2 * v) as u32;
    }
    HalfEdgeGraph::from_pairing(&degrees, pairing).expect("cycle pairing is valid")
}

/// Builds the complete graph K_m as a half-edge pairing (test helper).
pub fn complete_graph(m: usize) -> HalfEdgeGraph {
    assert!(m >= 2);
    let degrees = vec![m - 1; m];
    let offset = |v: usize| (v * (m - 1)) as u32;
    let mut pairing = vec![UNPAIRED; m * (m - 1)];
    let mut slot = vec![0usize; m];
    for u in 0..m {
        for v in (u + 1)..m {
            let hu = offset(u) + slot[u] as u32;
            let hv = offset(v) + slot[v] as u32;
            slot[u] += 1;
            slot[v] += 1;
            pairing[hu as usize] = hv;
            pairing[hv as usize] = hu;
        }
    }
    HalfEdgeGraph::from_pairing(&degrees, pairing).expect("complete-graph pairing is valid")
}

impl HalfEdgeGraph {
    /// Consistency check used by tests: involution without fixed points,
    /// owners match the offset layout.
    pub fn check_invariants(&self) {
        for h in 0..self.pairing.len() as u32 {
            assert_ne!(self.pairing[h as usize], h, "self-paired half-edge {h}");
            assert_eq!(
                self.pairing[self.pairing[h as usize] as usize],
                h,
                "pairing is not an involution at {h}"
            );
        }
        for v in 0..self.n as u32 {
            for h in self.half_edges(v) {
                assert_eq!(self.owner(h), v);
            }
        }
    }
}
