//! Component structure of the vacant set and vacant net, red-edge moments,
//! and the Molloy-Reed criticality statistics.

use crate::error::{Error, Result};
use crate::graphgen::{self, HalfEdgeGraph, NiceSet};
use crate::theory;
use crate::walks::{self, Start, VisitTracker, WalkKind};
use rayon::prelude::*;
use serde::Serialize;

/// Disjoint-set forest with union by size and path compression.
#[derive(Debug)]
pub struct DisjointSet {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }

    pub fn component_size(&mut self, x: u32) -> u32 {
        let r = self.find(x);
        self.size[r as usize]
    }
}

/// A subgraph extracted from a walk snapshot, reindexed to 0..k.
#[derive(Debug, Clone)]
pub struct Subgraph {
    /// Original vertex ids of the members.
    pub vertices: Vec<u32>,
    /// Edges between members, in the reindexed id space.
    pub edges: Vec<(u32, u32)>,
}

impl Subgraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Component sizes in descending order.
#[derive(Debug, Clone, Default)]
pub struct ComponentSummary {
    pub sizes: Vec<u32>,
    pub c1: u32,
    pub c2: u32,
    pub component_count: usize,
}

/// The subgraph of `g` induced by the unvisited vertices: vertices are R(t),
/// edges are the edges of g with both endpoints unvisited.
pub fn vacant_set_subgraph(g: &HalfEdgeGraph, tracker: &VisitTracker) -> Subgraph {
    let n = g.n();
    let mut new_id = vec![u32::MAX; n];
    let mut vertices = Vec::new();
    for v in 0..n as u32 {
        if !tracker.vertex_visited(v) {
            new_id[v as usize] = vertices.len() as u32;
            vertices.push(v);
        }
    }
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let (nu, nv) = (new_id[u as usize], new_id[v as usize]);
        if nu != u32::MAX && nv != u32::MAX {
            edges.push((nu, nv));
        }
    }
    Subgraph { vertices, edges }
}

/// The subgraph induced by the unvisited edges: edge set U(t), vertex set the
/// endpoints of U(t). Fully visited isolated vertices are excluded from the
/// component sizes (the red-degree histogram keeps d_0 separately).
pub fn vacant_net_subgraph(g: &HalfEdgeGraph, tracker: &VisitTracker) -> Subgraph {
    let n = g.n();
    let mut new_id = vec![u32::MAX; n];
    let mut vertices = Vec::new();
    for v in 0..n as u32 {
        if tracker.red_degree(v) > 0 {
            new_id[v as usize] = vertices.len() as u32;
            vertices.push(v);
        }
    }
    let mut edges = Vec::new();
    for h in 0..g.num_half_edges() as u32 {
        let mate = g.mate(h);
        if h < mate && !tracker.edge_visited(h) {
            let (u, v) = (g.owner(h), g.owner(mate));
            edges.push((new_id[u as usize], new_id[v as usize]));
        }
    }
    Subgraph { vertices, edges }
}

/// Connected components by union-find.
pub fn components(sub: &Subgraph) -> ComponentSummary {
    let n = sub.vertex_count();
    if n == 0 {
        return ComponentSummary::default();
    }
    let mut dsu = DisjointSet::new(n);
    for &(u, v) in &sub.edges {
        dsu.union(u, v);
    }
    let mut size_of_root = std::collections::HashMap::new();
    for v in 0..n as u32 {
        let r = dsu.find(v);
        *size_of_root.entry(r).or_insert(0u32) += 1;
    }
    let mut sizes: Vec<u32> = size_of_root.into_values().collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let c1 = sizes.first().copied().unwrap_or(0);
    let c2 = sizes.get(1).copied().unwrap_or(0);
    ComponentSummary {
        component_count: sizes.len(),
        sizes,
        c1,
        c2,
    }
}

/// BFS component oracle, independent of the union-find path.
pub fn components_bfs_oracle(sub: &Subgraph) -> ComponentSummary {
    let n = sub.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &sub.edges {
        adj[u as usize].push(v);
        adj[v as usize].push(u);
    }
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for s in 0..n as u32 {
        if seen[s as usize] {
            continue;
        }
        seen[s as usize] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        let mut size = 0u32;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in &adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let c1 = sizes.first().copied().unwrap_or(0);
    let c2 = sizes.get(1).copied().unwrap_or(0);
    ComponentSummary {
        component_count: sizes.len(),
        sizes,
        c1,
        c2,
    }
}

/// Counts of vertices by unvisited-edge degree.
#[derive(Debug, Clone)]
pub struct RedDegreeHistogram {
    /// counts[s] = number of vertices with exactly s unvisited incident edges.
    pub counts: Vec<u64>,
    /// True when restricted to nice vertices only.
    pub nice_only: bool,
}

impl RedDegreeHistogram {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        Self {
            counts,
            nice_only: false,
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// The sums over vertices of C(d_R(v), s) for s = 1, 2, 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MomentVector {
    pub m1: u64,
    pub m2: u64,
    pub m3: u64,
}

impl MomentVector {
    pub fn from_histogram(hist: &RedDegreeHistogram) -> Self {
        let mut m = MomentVector { m1: 0, m2: 0, m3: 0 };
        for (s, &count) in hist.counts.iter().enumerate() {
            let s = s as u64;
            m.m1 += count * s;
            m.m2 += count * s * s.saturating_sub(1) / 2;
            m.m3 += count * s * s.saturating_sub(1) * s.saturating_sub(2) / 6;
        }
        m
    }
}

/// Vertex scope for red moments.
#[derive(Debug, Clone, Copy)]
pub enum MomentScope<'a> {
    All,
    NiceOnly(&'a NiceSet),
}

/// Red-degree histogram and the moment sums M(1), M(2), M(3). The default
/// scope is all vertices; the nice-only scope exists for strict replication of
/// the locally tree-like bookkeeping.
pub fn red_moments(
    g: &HalfEdgeGraph,
    tracker: &VisitTracker,
    scope: MomentScope<'_>,
) -> (RedDegreeHistogram, MomentVector) {
    let max_degree = g.max_degree();
    let mut counts = vec![0u64; max_degree + 1];
    match scope {
        MomentScope::All => {
            for &d in tracker.red_degrees() {
                counts[d as usize] += 1;
            }
        }
        MomentScope::NiceOnly(nice) => {
            for (v, &d) in tracker.red_degrees().iter().enumerate() {
                if nice.nice[v] {
                    counts[d as usize] += 1;
                }
            }
        }
    }
    let hist = RedDegreeHistogram {
        counts,
        nice_only: matches!(scope, MomentScope::NiceOnly(_)),
    };
    let moments = MomentVector::from_histogram(&hist);
    (hist, moments)
}

/// Degree histogram of the vacant-set induced subgraph: for each unvisited
/// vertex, the number of unvisited neighbors (counting multi-edges).
pub fn vacant_set_degree_histogram(g: &HalfEdgeGraph, tracker: &VisitTracker) -> RedDegreeHistogram {
    let mut counts = vec![0u64; g.max_degree() + 1];
    for v in 0..g.n() as u32 {
        if tracker.vertex_visited(v) {
            continue;
        }
        let mut d = 0usize;
        for h in g.half_edges(v) {
            if !tracker.vertex_visited(g.head(h)) {
                d += 1;
            }
        }
        counts[d] += 1;
    }
    RedDegreeHistogram::from_counts(counts)
}

/// Molloy-Reed sum L = sum_s s(s-2) D_s / sum_s D_s.
pub fn molloy_reed_l(hist: &RedDegreeHistogram) -> Result<f64> {
    let total = hist.total();
    if total == 0 {
        return Err(Error::EmptyHistogram);
    }
    Ok(q_sum(hist) as f64 / total as f64)
}

/// Q = sum_s s(s-2) D_s as an exact integer.
fn q_sum(hist: &RedDegreeHistogram) -> i128 {
    hist.counts
        .iter()
        .enumerate()
        .map(|(s, &count)| (s as i128) * (s as i128 - 2) * count as i128)
        .sum()
}

/// The moment form of the Molloy-Reed sum, with the excluded-vertex count
/// reported alongside as the error-term budget.
#[derive(Debug, Clone, Copy)]
pub struct QStatistic {
    pub q: f64,
    pub excluded_vertices: u64,
}

pub fn q_statistic(m: &MomentVector, excluded_vertices: u64) -> QStatistic {
    QStatistic {
        q: 2.0 * m.m2 as f64 - m.m1 as f64,
        excluded_vertices,
    }
}

/// (6 M3 - 2 M2 + M1) / M1, the dispersion statistic of the scaling window.
pub fn r_statistic(m: &MomentVector) -> Result<f64> {
    if m.m1 == 0 {
        return Err(Error::OutOfDomain("R statistic needs M1 > 0".into()));
    }
    Ok((6.0 * m.m3 as f64 - 2.0 * m.m2 as f64 + m.m1 as f64) / m.m1 as f64)
}

/// Phase classification thresholds. All constants are configurable; the
/// asymptotic statements leave them unspecified.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CriticalityConfig {
    pub super_frac: f64,
    pub dominance_ratio: f64,
    pub log_const: f64,
}

impl Default for CriticalityConfig {
    fn default() -> Self {
        Self {
            super_frac: 0.005,
            dominance_ratio: 10.0,
            log_const: 60.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Phase {
    SubCritical,
    SuperCritical,
    Window,
}

impl Phase {
    pub fn label(&self) -> &'static str {
        match self {
            Phase::SubCritical => "sub",
            Phase::SuperCritical => "super",
            Phase::Window => "window",
        }
    }
}

/// Classification together with its evidence.
#[derive(Debug, Clone, Copy)]
pub struct Criticality {
    pub phase: Phase,
    pub c1: u32,
    pub c2: u32,
    pub sub_cutoff: f64,
    pub super_cutoff: f64,
    pub dominance_ratio: f64,
}

/// SubCritical iff C1 <= log_const ln n; SuperCritical iff C1 >=
/// super_frac * subgraph size and C1 dominates C2; else Window. `ambient_n`
/// is the vertex count of the walked graph (the n of the O(log n) statements).
pub fn classify(
    summary: &ComponentSummary,
    subgraph_size: usize,
    ambient_n: usize,
    cfg: &CriticalityConfig,
) -> Criticality {
    let sub_cutoff = cfg.log_const * (ambient_n.max(2) as f64).ln();
    let super_cutoff = cfg.super_frac * subgraph_size as f64;
    let c1 = summary.c1 as f64;
    let dominance = if summary.c2 == 0 {
        f64::INFINITY
    } else {
        c1 / summary.c2 as f64
    };
    let phase = if c1 <= sub_cutoff {
        Phase::SubCritical
    } else if c1 >= super_cutoff && dominance >= cfg.dominance_ratio {
        Phase::SuperCritical
    } else {
        Phase::Window
    };
    Criticality {
        phase,
        c1: summary.c1,
        c2: summary.c2,
        sub_cutoff,
        super_cutoff,
        dominance_ratio: cfg.dominance_ratio,
    }
}

/// One measurement row of the scaling probe.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingProbeRow {
    pub n: usize,
    pub offset: f64,
    pub t: u64,
    pub median_c1: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingProbe {
    pub rows: Vec<ScalingProbeRow>,
    /// OLS slope of log median C1 against log n at offset 0.
    pub exponent_at_zero: f64,
}

/// Measures C1 of the vacant-set subgraph at t = threshold*n + offset*n^{2/3}
/// for each n, and fits the growth exponent at offset 0.
pub fn scaling_window_probe(
    kind: WalkKind,
    r: usize,
    n_list: &[usize],
    seeds: &[u64],
    offsets: &[f64],
) -> Result<ScalingProbe> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameters(
            "n_list must be strictly ascending".into(),
        ));
    }
    let model = theory::WalkModel::new(kind, r)?;
    let threshold = theory::threshold(&model, theory::ThresholdObject::VacantSet)?;

    let mut rows = Vec::new();
    for &n in n_list {
        for &offset in offsets {
            let t = (threshold * n as f64 + offset * (n as f64).powf(2.0 / 3.0)).round();
            if t < 0.0 {
                return Err(Error::OutOfDomain(format!(
                    "offset {offset} yields negative checkpoint at n = {n}"
                )));
            }
            let t = t as u64;
            let mut c1s: Vec<f64> = seeds
                .par_iter()
                .map(|&seed| -> Result<f64> {
                    let g = graphgen::sample_regular_configuration(n, r, seed)?;
                    let (mut state, mut tracker) =
                        walks::init_walk(&g, kind, Start::Vertex(0), seed)?;
                    walks::advance_to(&mut state, &mut tracker, &g, t, walks::Clock::Total, u64::MAX);
                    let sub = vacant_set_subgraph(&g, &tracker);
                    Ok(components(&sub).c1 as f64)
                })
                .collect::<Result<_>>()?;
            c1s.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let median = if c1s.is_empty() {
                0.0
            } else if c1s.len() % 2 == 1 {
                c1s[c1s.len() / 2]
            } else {
                (c1s[c1s.len() / 2 - 1] + c1s[c1s.len() / 2]) / 2.0
            };
            rows.push(ScalingProbeRow {
                n,
                offset,
                t,
                median_c1: median,
            });
        }
    }

    let at_zero: Vec<(f64, f64)> = rows
        .iter()
        .filter(|row| row.offset == 0.0 && row.median_c1 > 0.0)
        .map(|row| ((row.n as f64).ln(), row.median_c1.ln()))
        .collect();
    if at_zero.len() < 2 {
        return Err(Error::InvalidParameters(
            "need offset 0 at two or more sizes to fit an exponent".into(),
        ));
    }
    let exponent_at_zero = ols_slope(&at_zero);
    Ok(ScalingProbe {
        rows,
        exponent_at_zero,
    })
}

fn ols_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::{complete_graph, cycle_graph, import_edge_list, sample_regular_configuration};
    use crate::walks::{init_walk, step};

    fn summary_of(edges: &[(u32, u32)], n: usize) -> ComponentSummary {
        let sub = Subgraph {
            vertices: (0..n as u32).collect(),
            edges: edges.to_vec(),
        };
        components(&sub)
    }

    #[test]
    fn components_trivia() {
        let empty = Subgraph {
            vertices: vec![],
            edges: vec![],
        };
        let s = components(&empty);
        assert_eq!(s.c1, 0);
        assert_eq!(s.component_count, 0);

        // Two disjoint triangles.
        let s = summary_of(&[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)], 6);
        assert_eq!(s.sizes, vec![3, 3]);
    }

    #[test]
    fn union_find_matches_bfs_on_all_k6_subsets() {
        // Exhaustive: all 2^15 edge subsets of K6.
        let k6: Vec<(u32, u32)> = complete_graph(6).canonical_edge_list();
        assert_eq!(k6.len(), 15);
        for mask in 0u32..(1 << 15) {
            let edges: Vec<(u32, u32)> = k6
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let sub = Subgraph {
                vertices: (0..6).collect(),
                edges,
            };
            let a = components(&sub);
            let b = components_bfs_oracle(&sub);
            assert_eq!(a.sizes, b.sizes, "mask {mask:#x}");
        }
    }

    #[test]
    fn union_find_matches_bfs_on_random_snapshots() {
        for seed in 0..20u64 {
            let g = sample_regular_configuration(1000, 3, seed).unwrap();
            let (mut s, mut t) = init_walk(&g, WalkKind::Simple, Start::Vertex(0), seed).unwrap();
            for _ in 0..2_000 {
                step(&mut s, &mut t, &g);
            }
            for sub in [vacant_set_subgraph(&g, &t), vacant_net_subgraph(&g, &t)] {
                let a = components(&sub);
                let b = components_bfs_oracle(&sub);
                assert_eq!(a.sizes, b.sizes);
            }
        }
    }

    #[test]
    fn vacant_subgraphs_small_cases() {
        // Path a-b-c with only b visited: two isolated vacant vertices.
        let path = import_edge_list("3 2\n0 1\n1 2\n".as_bytes()).unwrap();
        let (_state, t) = init_walk(&path, WalkKind::Simple, Start::Vertex(1), 0).unwrap();
        let sub = vacant_set_subgraph(&path, &t);
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(sub.edge_count(), 0);
        assert_eq!(components(&sub).sizes, vec![1, 1]);

        // Triangle with one edge visited: the vacant net is a 2-edge path.
        let tri = cycle_graph(3);
        let (mut s, mut t) = init_walk(&tri, WalkKind::Simple, Start::Vertex(0), 0).unwrap();
        step(&mut s, &mut t, &tri);
        let sub = vacant_net_subgraph(&tri, &t);
        assert_eq!(sub.edge_count(), 2);
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(components(&sub).c1, 3);
    }

    #[test]
    fn vacant_net_at_t0_is_whole_graph() {
        let g = sample_regular_configuration(100, 3, 1).unwrap();
        let (_, t) = init_walk(&g, WalkKind::Simple, Start::Vertex(0), 0).unwrap();
        let sub = vacant_net_subgraph(&g, &t);
        assert_eq!(sub.edge_count(), g.m());
        assert_eq!(sub.vertex_count(), g.n());
        // Vacant set at t=0 misses only the start.
        let set = vacant_set_subgraph(&g, &t);
        assert_eq!(set.vertex_count(), g.n() - 1);
    }

    #[test]
    fn moments_at_t0_and_after_cover() {
        let n = 100usize;
        let g = sample_regular_configuration(n, 3, 7).unwrap();
        let (mut s, mut t) = init_walk(&g, WalkKind::Simple, Start::Vertex(0), 2).unwrap();
        let (hist, m) = red_moments(&g, &t, MomentScope::All);
        assert_eq!(hist.total(), n as u64);
        assert_eq!(m.m1, (n * 3) as u64);
        assert_eq!(m.m2, (n * 3) as u64); // C(3,2) = 3
        assert_eq!(m.m3, n as u64); // C(3,3) = 1

        while t.visited_edge_count() < g.m() as u64 {
            step(&mut s, &mut t, &g);
        }
        let (_, m) = red_moments(&g, &t, MomentScope::All);
        assert_eq!(m, MomentVector { m1: 0, m2: 0, m3: 0 });
    }

    #[test]
    fn moment_identities_hold_at_checkpoints() {
        let g = sample_regular_configuration(500, 3, 9).unwrap();
        let (mut s, mut t) = init_walk(&g, WalkKind::Simple, Start::Vertex(0), 5).unwrap();
        for _ in 0..10 {
            for _ in 0..150 {
                step(&mut s, &mut t, &g);
            }
            let (hist, m) = red_moments(&g, &t, MomentScope::All);
            assert_eq!(hist.total(), 500);
            let unvisited = g.m() as u64 - t.visited_edge_count();
            assert_eq!(m.m1, 2 * unvisited);
            // Q from the moment form equals the direct histogram sum.
            let q = q_statistic(&m, 0);
            assert_eq!(q.q, q_sum(&hist) as f64);
        }
    }

    #[test]
    fn one_red_pair_moment_example() {
        // r=3, one vertex with 2 red edges, rest 0 -> M = (2, 1, 0).
        let hist = RedDegreeHistogram::from_counts(vec![9, 0, 1, 0]);
        let m = MomentVector::from_histogram(&hist);
        assert_eq!((m.m1, m.m2, m.m3), (2, 1, 0));
    }

    #[test]
    fn molloy_reed_values() {
        let all3 = RedDegreeHistogram::from_counts(vec![0, 0, 0, 10]);
        assert_eq!(molloy_reed_l(&all3).unwrap(), 3.0);
        let all1 = RedDegreeHistogram::from_counts(vec![0, 10]);
        assert_eq!(molloy_reed_l(&all1).unwrap(), -1.0);
        let half = RedDegreeHistogram::from_counts(vec![0, 5, 0, 5]);
        assert_eq!(molloy_reed_l(&half).unwrap(), 1.0);
        let empty = RedDegreeHistogram::from_counts(vec![]);
        assert!(molloy_reed_l(&empty).is_err());
    }

    #[test]
    fn r_statistic_values() {
        // All degree 3: (6*1 - 2*3 + 3)/3 = 1.
        let m = MomentVector { m1: 3, m2: 3, m3: 1 };
        assert_eq!(r_statistic(&m).unwrap(), 1.0);
        // All degree 1.
        let m = MomentVector { m1: 1, m2: 0, m3: 0 };
        assert_eq!(r_statistic(&m).unwrap(), 1.0);
        // All degree 2: (0 - 2 + 2)/2 = 0 per vertex.
        let m = MomentVector { m1: 10, m2: 5, m3: 0 };
        assert_eq!(r_statistic(&m).unwrap(), 0.0);
        assert!(r_statistic(&MomentVector { m1: 0, m2: 0, m3: 0 }).is_err());
    }

    #[test]
    fn q_sign_matches_l_sign() {
        for counts in [
            vec![5u64, 3, 2, 10],
            vec![0, 20, 1, 0],
            vec![7, 0, 0, 0],
            vec![1, 2, 3, 4],
        ] {
            let hist = RedDegreeHistogram::from_counts(counts);
            let m = MomentVector::from_histogram(&hist);
            let q = q_statistic(&m, 0).q;
            if let Ok(l) = molloy_reed_l(&hist) {
                if q != 0.0 && l != 0.0 {
                    assert_eq!(q.signum(), l.signum());
                }
            }
        }
    }

    #[test]
    fn classification_rules() {
        let cfg = CriticalityConfig::default();
        let n = 100_000;
        // C1 = 0 is subcritical.
        let s = ComponentSummary::default();
        assert_eq!(classify(&s, 0, n, &cfg).phase, Phase::SubCritical);

        // A connected subgraph far above the log cutoff is supercritical.
        let s = ComponentSummary {
            sizes: vec![50_000],
            c1: 50_000,
            c2: 0,
            component_count: 1,
        };
        assert_eq!(classify(&s, 50_000, n, &cfg).phase, Phase::SuperCritical);

        // Two comparable mesoscopic components fail dominance: window.
        let s = ComponentSummary {
            sizes: vec![2_154, 2_154],
            c1: 2_154,
            c2: 2_154,
            component_count: 2,
        };
        assert_eq!(classify(&s, 40_000, n, &cfg).phase, Phase::Window);
    }
}
