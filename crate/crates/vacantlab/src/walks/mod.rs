//! The three walk processes and their visit tracking.
//!
//! All walks run on a `HalfEdgeGraph`. A transition departs along a half-edge
//! of the current vertex and arrives at the owner of its mate, so loops and
//! parallel edges are handled uniformly (a loop carries twice the weight of a
//! single edge for the simple walk, matching the configuration model).

mod reveal;

pub use reveal::{extend_pairing_for_vacant_set, walk_generate, PartialConfiguration};

use crate::error::{Error, Result};
use crate::graphgen::HalfEdgeGraph;
use crate::rng::{rng_for, Stream};
use rand::Rng;
use rand_chacha::ChaCha12Rng;

/// Which walk process drives the transitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkKind {
    /// Next vertex uniform over incident half-edges.
    Simple,
    /// Uniform over incident half-edges excluding the reversal of the arrival
    /// edge (predictions require r >= 3; degree-1 vertices backtrack).
    NonBacktracking,
    /// Moves along a uniformly random unvisited incident edge when one
    /// exists, otherwise along a uniformly random incident edge. Predictions
    /// require even r >= 4; the engine itself runs for any r >= 2.
    EdgeProcess,
}

impl WalkKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "simple" => Some(Self::Simple),
            "nbw" | "non-backtracking" => Some(Self::NonBacktracking),
            "edge" | "edge-process" => Some(Self::EdgeProcess),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Simple => "simple",
            Self::NonBacktracking => "nbw",
            Self::EdgeProcess => "edge",
        }
    }
}

/// Start position of a walk.
#[derive(Debug, Clone, Copy)]
pub enum Start {
    Vertex(u32),
    Uniform,
}

/// Clock used when advancing to checkpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clock {
    /// Plain step count `t`.
    Total,
    /// Red (unvisited-edge) steps of the edge-process.
    Red,
}

impl Clock {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "total" => Some(Self::Total),
            "red" => Some(Self::Red),
            _ => None,
        }
    }
}

/// Edge color of a transition: red crosses a previously unvisited edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    Red,
    Blue,
}

/// One transition of a walk.
#[derive(Debug, Clone, Copy)]
pub struct TransitionRecord {
    pub from: u32,
    pub to: u32,
    /// Departure half-edge.
    pub half_edge: u32,
    /// Canonical edge id of the crossed edge.
    pub edge: u32,
    pub was_edge_new: bool,
    pub was_vertex_new: bool,
    pub color: Color,
}

/// Mutable walk position and per-kind bookkeeping.
#[derive(Debug, Clone)]
pub struct WalkState {
    pub kind: WalkKind,
    pub current: u32,
    /// Departure half-edge of the previous transition, owned by the matched
    /// neighbor side of `current` (the arrival half-edge). `None` before the
    /// first step.
    pub prev_half_edge: Option<u32>,
    pub t: u64,
    /// Red (new-edge) steps; edge-process clock.
    pub t_red: u64,
    /// Blue steps of the edge-process.
    pub t_blue: u64,
    /// Start vertex of the red phase in progress.
    pub phase_start: Option<u32>,
    /// Completed red phases J.
    pub phase_count: u64,
    in_red_phase: bool,
    /// Even-regular graphs satisfy the red-phase parity law; checked in debug.
    even_regular: bool,
    rng: ChaCha12Rng,
}

/// Visited-vertex and visited-edge bit-sets with counts, plus the per-vertex
/// unvisited-edge degree d_R.
#[derive(Debug, Clone)]
pub struct VisitTracker {
    visited_vertices: Vec<bool>,
    visited_vertex_count: u64,
    /// Indexed by canonical edge id (min half-edge of the pair).
    visited_edges: Vec<bool>,
    visited_edge_count: u64,
    red_degree: Vec<u16>,
    /// Number of vertices with odd d_R; O(1) parity witness for the
    /// edge-process phase law.
    odd_red_count: usize,
}

impl VisitTracker {
    fn new(g: &HalfEdgeGraph) -> Self {
        let red_degree: Vec<u16> = (0..g.n() as u32).map(|v| g.degree(v) as u16).collect();
        let odd_red_count = red_degree.iter().filter(|&&d| d % 2 == 1).count();
        Self {
            visited_vertices: vec![false; g.n()],
            visited_vertex_count: 0,
            visited_edges: vec![false; g.num_half_edges()],
            visited_edge_count: 0,
            red_degree,
            odd_red_count,
        }
    }

    pub fn visited_vertex_count(&self) -> u64 {
        self.visited_vertex_count
    }

    pub fn visited_edge_count(&self) -> u64 {
        self.visited_edge_count
    }

    pub fn vertex_visited(&self, v: u32) -> bool {
        self.visited_vertices[v as usize]
    }

    /// Edge visited, keyed by canonical edge id.
    pub fn edge_visited(&self, edge_id: u32) -> bool {
        self.visited_edges[edge_id as usize]
    }

    pub fn red_degree(&self, v: u32) -> u16 {
        self.red_degree[v as usize]
    }

    pub fn red_degrees(&self) -> &[u16] {
        &self.red_degree
    }

    /// Histogram of d_R over all vertices; index s counts vertices with
    /// exactly s unvisited incident edges.
    pub fn red_degree_histogram(&self, max_degree: usize) -> Vec<u64> {
        let mut hist = vec![0u64; max_degree + 1];
        for &d in &self.red_degree {
            hist[d as usize] += 1;
        }
        hist
    }

    fn mark_vertex(&mut self, v: u32) -> bool {
        if self.visited_vertices[v as usize] {
            false
        } else {
            self.visited_vertices[v as usize] = true;
            self.visited_vertex_count += 1;
            true
        }
    }

    fn decrement_red(&mut self, v: u32) {
        let d = &mut self.red_degree[v as usize];
        debug_assert!(*d > 0);
        *d -= 1;
        if *d % 2 == 1 {
            self.odd_red_count += 1;
        } else {
            self.odd_red_count -= 1;
        }
    }

    fn mark_edge(&mut self, g: &HalfEdgeGraph, edge_id: u32) -> bool {
        if self.visited_edges[edge_id as usize] {
            false
        } else {
            self.visited_edges[edge_id as usize] = true;
            self.visited_edge_count += 1;
            self.decrement_red(g.owner(edge_id));
            self.decrement_red(g.owner(g.mate(edge_id)));
            true
        }
    }

    /// Recomputes |S(t)| from the bit-set; test oracle for the running count.
    pub fn recount_visited_edges(&self) -> u64 {
        self.visited_edges.iter().filter(|&&b| b).count() as u64
    }
}

/// Light per-checkpoint summary emitted by `run_to`.
#[derive(Debug, Clone)]
pub struct WalkSnapshot {
    pub t: u64,
    pub t_red: u64,
    pub visited_vertices: u64,
    pub visited_edges: u64,
    pub red_degree_histogram: Vec<u64>,
}

/// Initializes a walk: all edges unvisited, the start vertex visited, t = 0.
pub fn init_walk(
    g: &HalfEdgeGraph,
    kind: WalkKind,
    start: Start,
    seed: u64,
) -> Result<(WalkState, VisitTracker)> {
    if g.n() == 0 {
        return Err(Error::InvalidParameters("empty graph".into()));
    }
    let mut rng = rng_for(seed, Stream::Walk);
    let start = match start {
        Start::Vertex(v) => {
            if v as usize >= g.n() {
                return Err(Error::InvalidStart(v as usize, g.n()));
            }
            v
        }
        Start::Uniform => rng.gen_range(0..g.n() as u32),
    };
    if g.degree(start) == 0 {
        return Err(Error::InvalidParameters(format!(
            "start vertex {start} has degree 0"
        )));
    }
    let even_regular = matches!(g.regular_degree(), Some(r) if r % 2 == 0);
    let mut tracker = VisitTracker::new(g);
    tracker.mark_vertex(start);
    let state = WalkState {
        kind,
        current: start,
        prev_half_edge: None,
        t: 0,
        t_red: 0,
        t_blue: 0,
        phase_start: None,
        phase_count: 0,
        in_red_phase: false,
        even_regular,
        rng,
    };
    Ok((state, tracker))
}

/// Picks the departure half-edge according to the walk kind.
fn choose_departure(state: &mut WalkState, tracker: &VisitTracker, g: &HalfEdgeGraph) -> u32 {
    let v = state.current;
    let range = g.half_edges(v);
    let deg = (range.end - range.start) as usize;
    match state.kind {
        WalkKind::Simple => range.start + state.rng.gen_range(0..deg as u32),
        WalkKind::NonBacktracking => {
            let excluded = state.prev_half_edge.map(|h| g.mate(h));
            match excluded {
                Some(ex) if deg > 1 => {
                    // Uniform over the deg-1 half-edges excluding the reversal.
                    let pick = range.start + state.rng.gen_range(0..(deg as u32 - 1));
                    if pick >= ex {
                        pick + 1
                    } else {
                        pick
                    }
                }
                Some(ex) => ex, // degree 1: forced backtrack
                None => range.start + state.rng.gen_range(0..deg as u32),
            }
        }
        WalkKind::EdgeProcess => {
            let red = tracker.red_degree(v);
            if red > 0 {
                // Uniform over unvisited incident half-edges; parallel red
                // edges weighted by multiplicity, loops counted twice.
                let target = state.rng.gen_range(0..red as u32);
                let mut seen = 0u32;
                for h in range {
                    if !tracker.edge_visited(g.edge_id(h)) {
                        if seen == target {
                            return h;
                        }
                        seen += 1;
                    }
                }
                unreachable!("red degree count disagrees with edge bit-set");
            } else {
                range.start + state.rng.gen_range(0..deg as u32)
            }
        }
    }
}

/// Advances the walk by one step. The walk is total: this never fails.
pub fn step(state: &mut WalkState, tracker: &mut VisitTracker, g: &HalfEdgeGraph) -> TransitionRecord {
    let from = state.current;
    let red_available = tracker.red_degree(from) > 0;
    let h = choose_departure(state, tracker, g);
    let edge = g.edge_id(h);
    let to = g.head(h);

    let was_edge_new = tracker.mark_edge(g, edge);
    let was_vertex_new = tracker.mark_vertex(to);
    state.t += 1;

    if state.kind == WalkKind::EdgeProcess {
        if red_available {
            debug_assert!(was_edge_new);
            state.t_red += 1;
            if !state.in_red_phase {
                state.in_red_phase = true;
                state.phase_start = Some(from);
            }
            if tracker.red_degree(to) == 0 {
                // Red phase complete; on even-regular graphs it must close at
                // its own start vertex.
                if state.even_regular {
                    debug_assert_eq!(Some(to), state.phase_start);
                }
                state.in_red_phase = false;
                state.phase_count += 1;
            } else if state.even_regular {
                debug_assert!(phase_parity_holds(state, tracker, to));
            }
        } else {
            debug_assert!(!was_edge_new);
            state.t_blue += 1;
        }
        debug_assert_eq!(state.t, state.t_red + state.t_blue);
        debug_assert_eq!(tracker.visited_edge_count, state.t_red);
    }

    state.prev_half_edge = Some(h);
    state.current = to;
    TransitionRecord {
        from,
        to,
        half_edge: h,
        edge,
        was_edge_new,
        was_vertex_new,
        color: if was_edge_new { Color::Red } else { Color::Blue },
    }
}

/// Inside a red phase on an even-regular graph, every vertex other than the
/// phase start and the walk position has even red degree.
fn phase_parity_holds(state: &WalkState, tracker: &VisitTracker, current: u32) -> bool {
    let start = match state.phase_start {
        Some(s) => s,
        None => return false,
    };
    let mut expected = 0usize;
    expected += (tracker.red_degree(start) % 2 == 1) as usize;
    if current != start {
        expected += (tracker.red_degree(current) % 2 == 1) as usize;
    }
    tracker.odd_red_count == expected
}

/// Advances until the clock reaches `target`, or the step budget runs out.
/// Returns true when the target was reached. On the red clock the budget
/// guards against checkpoints beyond the walk's reach.
pub fn advance_to(
    state: &mut WalkState,
    tracker: &mut VisitTracker,
    g: &HalfEdgeGraph,
    target: u64,
    clock: Clock,
    budget: u64,
) -> bool {
    let reading = |s: &WalkState| match clock {
        Clock::Total => s.t,
        Clock::Red => s.t_red,
    };
    while reading(state) < target {
        if state.t >= budget {
            return false;
        }
        step(state, tracker, g);
    }
    true
}

/// Advances the walk, emitting a snapshot at each checkpoint. Checkpoints are
/// total-step counts, sorted ascending; the snapshot at t reflects steps 1..t.
pub fn run_to(
    state: &mut WalkState,
    tracker: &mut VisitTracker,
    g: &HalfEdgeGraph,
    checkpoints: &[u64],
) -> Result<Vec<WalkSnapshot>> {
    if checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameters(
            "checkpoints must be sorted ascending".into(),
        ));
    }
    let max_degree = g.max_degree();
    let mut out = Vec::with_capacity(checkpoints.len());
    for &target in checkpoints {
        advance_to(state, tracker, g, target, Clock::Total, u64::MAX);
        out.push(WalkSnapshot {
            t: state.t,
            t_red: state.t_red,
            visited_vertices: tracker.visited_vertex_count(),
            visited_edges: tracker.visited_edge_count(),
            red_degree_histogram: tracker.red_degree_histogram(max_degree),
        });
    }
    Ok(out)
}

/// First steps at which all vertices (resp. all edges) have been visited.
#[derive(Debug, Clone, Copy)]
pub struct CoverTimes {
    pub vertex: Option<u64>,
    pub edge: Option<u64>,
}

/// Runs until both cover events or budget exhaustion. Exhaustion is reported
/// per quantity (a `None`), not as an error.
pub fn cover_times(
    g: &HalfEdgeGraph,
    kind: WalkKind,
    start: Start,
    seed: u64,
    budget: u64,
) -> Result<CoverTimes> {
    let (mut state, mut tracker) = init_walk(g, kind, start, seed)?;
    let n = g.n() as u64;
    let m = g.m() as u64;
    let mut vertex_cover = (tracker.visited_vertex_count() == n).then_some(0u64);
    let mut edge_cover = (m == 0).then_some(0u64);
    while (vertex_cover.is_none() || edge_cover.is_none()) && state.t < budget {
        step(&mut state, &mut tracker, g);
        if vertex_cover.is_none() && tracker.visited_vertex_count() == n {
            vertex_cover = Some(state.t);
        }
        if edge_cover.is_none() && tracker.visited_edge_count() == m {
            edge_cover = Some(state.t);
        }
    }
    Ok(CoverTimes {
        vertex: vertex_cover,
        edge: edge_cover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::{
        complete_graph, cycle_graph, nice_vertices, sample_regular_configuration,
    };

    #[test]
    fn init_marks_start_only() {
        let g = complete_graph(4);
        let (state, tracker) = init_walk(&g, WalkKind::Simple, Start::Vertex(0), 1).unwrap();
        assert_eq!(tracker.visited_vertex_count(), 1);
        assert_eq!(tracker.visited_edge_count(), 0);
        assert_eq!(state.t, 0);
        for v in 0..4 {
            assert_eq!(tracker.red_degree(v), g.degree(v) as u16);
        }
    }

    #[test]
    fn init_rejects_bad_start() {
        let g = complete_graph(4);
        assert!(matches!(
            init_walk(&g, WalkKind::Simple, Start::Vertex(9), 1),
            Err(Error::InvalidStart(9, 4))
        ));
    }

    #[test]
    fn same_seed_same_trajectory() {
        let g = sample_regular_configuration(100, 3, 3).unwrap();
        let run = |seed| {
            let (mut s, mut t) = init_walk(&g, WalkKind::Simple, Start::Uniform, seed).unwrap();
            (0..500).map(|_| step(&mut s, &mut t, &g).to).collect::<Vec<_>>()
        };
        assert_eq!(run(5), run(5));
        assert_ne!(run(5), run(6));
    }

    #[test]
    fn simple_step_on_k4_is_uniform() {
        let g = complete_graph(4);
        let mut counts = [0u64; 4];
        for seed in 0..30_000u64 {
            let (mut s, mut t) = init_walk(&g, WalkKind::Simple, Start::Vertex(0), seed).unwrap();
            let rec = step(&mut s, &mut t, &g);
            counts[rec.to as usize] += 1;
        }
        assert_eq!(counts[0], 0);
        for &c in &counts[1..] {
            let p = c as f64 / 30_000.0;
            assert!((p - 1.0 / 3.0).abs() < 0.02, "neighbor probability {p}");
        }
    }

    #[test]
    fn nbw_on_cycle_is_rotation() {
        let g = cycle_graph(12);
        let (mut s, mut t) = init_walk(&g, WalkKind::NonBacktracking, Start::Vertex(0), 7).unwrap();
        let first = step(&mut s, &mut t, &g);
        let dir: i64 = if first.to == 1 { 1 } else { -1 };
        for k in 2..=11i64 {
            let rec = step(&mut s, &mut t, &g);
            let expected = (dir * k).rem_euclid(12) as u32;
            assert_eq!(rec.to, expected, "step {k} not a rotation");
        }
        let cov = cover_times(&g, WalkKind::NonBacktracking, Start::Vertex(0), 7, 10_000).unwrap();
        assert_eq!(cov.vertex, Some(11));
        assert_eq!(cov.edge, Some(12));
    }

    #[test]
    fn nbw_never_reuses_previous_edge_on_simple_graphs() {
        let g = sample_regular_configuration(200, 3, 15).unwrap();
        if !g.is_simple() {
            return; // invariant stated for simple graphs
        }
        let (mut s, mut t) = init_walk(&g, WalkKind::NonBacktracking, Start::Vertex(0), 2).unwrap();
        let mut prev_edge = None;
        for _ in 0..5_000 {
            let rec = step(&mut s, &mut t, &g);
            if let Some(pe) = prev_edge {
                assert_ne!(rec.edge, pe);
            }
            prev_edge = Some(rec.edge);
        }
    }

    #[test]
    fn edge_process_on_4_cycle_is_forced() {
        for seed in 0..20u64 {
            let g = cycle_graph(4);
            let cov = cover_times(&g, WalkKind::EdgeProcess, Start::Vertex(0), seed, 100).unwrap();
            assert_eq!(cov.vertex, Some(3));
            assert_eq!(cov.edge, Some(4));
        }
    }

    #[test]
    fn edge_process_phase_closes_at_start() {
        let g = sample_regular_configuration(500, 4, 21).unwrap();
        let (mut s, mut t) = init_walk(&g, WalkKind::EdgeProcess, Start::Vertex(0), 9).unwrap();
        let mut phase_start = None;
        let mut red_before = 0u64;
        for _ in 0..5_000 {
            if s.t_red > red_before && phase_start.is_none() {
                phase_start = s.phase_start;
            }
            let completed_before = s.phase_count;
            red_before = s.t_red;
            let rec = step(&mut s, &mut t, &g);
            if s.phase_count > completed_before {
                // Phase closed on this step: landed on its start with d_R 0.
                assert_eq!(Some(rec.to), s.phase_start.or(phase_start));
                assert_eq!(t.red_degree(rec.to), 0);
                phase_start = None;
            }
        }
        assert_eq!(s.t, s.t_red + s.t_blue);
    }

    #[test]
    fn tracker_counts_agree_with_bitsets() {
        let g = sample_regular_configuration(300, 3, 8).unwrap();
        let (mut s, mut t) = init_walk(&g, WalkKind::Simple, Start::Vertex(0), 4).unwrap();
        for _ in 0..2_000 {
            step(&mut s, &mut t, &g);
        }
        assert_eq!(t.recount_visited_edges(), t.visited_edge_count());
        let red_total: u64 = t.red_degrees().iter().map(|&d| d as u64).sum();
        assert_eq!(red_total, 2 * (g.m() as u64 - t.visited_edge_count()));
    }

    #[test]
    fn run_to_snapshots_are_monotone() {
        let g = sample_regular_configuration(200, 3, 2).unwrap();
        let (mut s, mut t) = init_walk(&g, WalkKind::Simple, Start::Vertex(0), 3).unwrap();
        let snaps = run_to(&mut s, &mut t, &g, &[0, 50, 100, 400, 1_000]).unwrap();
        assert_eq!(snaps[0].t, 0);
        assert_eq!(snaps[0].visited_vertices, 1);
        assert_eq!(snaps[0].visited_edges, 0);
        for w in snaps.windows(2) {
            assert!(w[1].visited_vertices >= w[0].visited_vertices);
            assert!(w[1].visited_edges >= w[0].visited_edges);
        }
    }

    #[test]
    fn simple_walk_covers_cycle_edges() {
        // Cover time of a cycle is Theta(n^2); t = 10 * m * n is ample.
        let g = cycle_graph(20);
        let cov = cover_times(&g, WalkKind::Simple, Start::Vertex(0), 11, 200_000).unwrap();
        assert!(cov.edge.is_some());
        assert!(cov.vertex.is_some());
    }

    #[test]
    fn returns_to_nice_start_match_tree_rate() {
        // Expected visits to a nice start vertex within the first 50 steps,
        // including the start itself, approach 1/(1 - 1/(r-1)) = 2 at r = 3.
        let g = sample_regular_configuration(100_000, 3, 31).unwrap();
        let nice = nice_vertices(&g, 3);
        let start = (0..g.n() as u32)
            .find(|&v| nice.nice[v as usize])
            .expect("some vertex is tree-like to depth 3");
        let trials = 10_000u64;
        let mut total_visits = 0u64;
        for seed in 0..trials {
            let (mut s, mut t) = init_walk(&g, WalkKind::Simple, Start::Vertex(start), seed).unwrap();
            let mut visits = 1u64;
            for _ in 0..50 {
                if step(&mut s, &mut t, &g).to == start {
                    visits += 1;
                }
            }
            total_visits += visits;
        }
        let mean = total_visits as f64 / trials as f64;
        assert!(
            (1.9..=2.1).contains(&mean),
            "mean visits within 50 steps = {mean}"
        );
    }
}
