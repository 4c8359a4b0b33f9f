//! Walk-driven lazy revelation of the configuration.
//!
//! Instead of sampling the whole pairing up front, the walk draws a half-edge
//! of its current vertex; if that half-edge is unpaired it gets matched with a
//! uniformly random unpaired partner. Stopping at any step leaves the
//! unrevealed part uniformly random conditional on the revealed pairs, so the
//! marginal law of (trajectory, revealed pairs) matches a walk on a fully
//! pre-generated configuration.

use super::{VisitTracker, WalkKind, WalkState};
use crate::error::{Error, Result};
use crate::graphgen::{HalfEdgeGraph, UNPAIRED};
use crate::rng::{rng_for, Stream};
use rand::Rng;
use rand_chacha::ChaCha12Rng;

/// A partially revealed pairing of the canonical regular half-edge layout.
#[derive(Debug, Clone)]
pub struct PartialConfiguration {
    n: usize,
    r: usize,
    pairing: Vec<u32>,
    /// Swap-remove pool of unpaired half-edges.
    pool: Vec<u32>,
    /// Position of each half-edge inside `pool`, or UNPAIRED once matched.
    pos: Vec<u32>,
    pairs_revealed: u64,
}

impl PartialConfiguration {
    fn new(n: usize, r: usize) -> Self {
        let total = n * r;
        Self {
            n,
            r,
            pairing: vec![UNPAIRED; total],
            pool: (0..total as u32).collect(),
            pos: (0..total as u32).collect(),
            pairs_revealed: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of revealed pairs |F_t|.
    pub fn pairs_revealed(&self) -> u64 {
        self.pairs_revealed
    }

    pub fn unpaired_count(&self) -> usize {
        self.pool.len()
    }

    pub fn owner(&self, h: u32) -> u32 {
        (h as usize / self.r) as u32
    }

    pub fn half_edges(&self, v: u32) -> std::ops::Range<u32> {
        (v * self.r as u32)..((v + 1) * self.r as u32)
    }

    pub fn is_paired(&self, h: u32) -> bool {
        self.pairing[h as usize] != UNPAIRED
    }

    pub fn mate(&self, h: u32) -> Option<u32> {
        let p = self.pairing[h as usize];
        (p != UNPAIRED).then_some(p)
    }

    /// Unpaired half-edges owned by `v` (the red points of S_v).
    pub fn unpaired_at(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.half_edges(v).filter(|&h| !self.is_paired(h))
    }

    fn remove_from_pool(&mut self, h: u32) {
        let i = self.pos[h as usize];
        debug_assert_ne!(i, UNPAIRED);
        let last = self.pool.pop().expect("pool not empty");
        if last != h {
            self.pool[i as usize] = last;
            self.pos[last as usize] = i;
        }
        self.pos[h as usize] = UNPAIRED;
    }

    /// Pairs `h` with a uniformly random unpaired partner. Returns the mate.
    fn pair_uniform(&mut self, h: u32, rng: &mut ChaCha12Rng) -> u32 {
        self.remove_from_pool(h);
        let j = rng.gen_range(0..self.pool.len());
        let mate = self.pool[j];
        self.remove_from_pool(mate);
        self.pairing[h as usize] = mate;
        self.pairing[mate as usize] = h;
        self.pairs_revealed += 1;
        mate
    }

    /// Completes the configuration uniformly and returns the full graph.
    pub fn complete(mut self, rng: &mut ChaCha12Rng) -> Result<HalfEdgeGraph> {
        while !self.pool.is_empty() {
            let h = self.pool[0];
            self.pair_uniform(h, rng);
        }
        HalfEdgeGraph::from_pairing(&vec![self.r; self.n], self.pairing)
    }
}

/// Canonical edge id of a revealed pair.
fn edge_id(h: u32, mate: u32) -> u32 {
    h.min(mate)
}

/// Runs `t_stop` steps of the walk kind while revealing pairs lazily.
/// Revealed pairs are exactly the traversed edges; at each step at most one
/// new pair appears. Returns the partial pairing plus walk state and tracker.
/// The walk starts at vertex 0.
pub fn walk_generate(
    n: usize,
    r: usize,
    kind: WalkKind,
    seed: u64,
    t_stop: u64,
) -> Result<(PartialConfiguration, WalkState, VisitTracker)> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidParameters("need n >= 1 and r >= 1".into()));
    }
    if n * r % 2 != 0 {
        return Err(Error::OddDegreeSum(n * r));
    }
    let mut partial = PartialConfiguration::new(n, r);

    // Tracker over the canonical layout; edge ids become stable once revealed.
    let mut tracker = VisitTracker {
        visited_vertices: vec![false; n],
        visited_vertex_count: 0,
        visited_edges: vec![false; n * r],
        visited_edge_count: 0,
        red_degree: vec![r as u16; n],
        odd_red_count: if r % 2 == 1 { n } else { 0 },
    };
    tracker.visited_vertices[0] = true;
    tracker.visited_vertex_count = 1;

    let mut state = WalkState {
        kind,
        current: 0,
        prev_half_edge: None,
        t: 0,
        t_red: 0,
        t_blue: 0,
        phase_start: None,
        phase_count: 0,
        in_red_phase: false,
        even_regular: r % 2 == 0,
        rng: rng_for(seed, Stream::Walk),
    };

    for _ in 0..t_stop {
        step_revealing(&mut state, &mut tracker, &mut partial);
    }
    Ok((partial, state, tracker))
}

/// One step of the walk on the partially revealed configuration.
fn step_revealing(
    state: &mut WalkState,
    tracker: &mut VisitTracker,
    partial: &mut PartialConfiguration,
) {
    let v = state.current;
    let r = partial.r as u32;
    let base = v * r;

    let h = match state.kind {
        WalkKind::Simple => base + state.rng.gen_range(0..r),
        WalkKind::NonBacktracking => {
            let excluded = state
                .prev_half_edge
                .and_then(|p| partial.mate(p))
                .filter(|&m| partial.owner(m) == v);
            match excluded {
                Some(ex) if r > 1 => {
                    let pick = base + state.rng.gen_range(0..r - 1);
                    if pick >= ex {
                        pick + 1
                    } else {
                        pick
                    }
                }
                Some(ex) => ex,
                None => base + state.rng.gen_range(0..r),
            }
        }
        WalkKind::EdgeProcess => {
            let red = tracker.red_degree[v as usize];
            if red > 0 {
                let target = state.rng.gen_range(0..red as u32) as usize;
                let chosen = partial
                    .unpaired_at(v)
                    .nth(target)
                    .expect("red degree tracks unpaired count");
                chosen
            } else {
                base + state.rng.gen_range(0..r)
            }
        }
    };

    let red_available = tracker.red_degree[v as usize] > 0;
    let (mate, was_edge_new) = match partial.mate(h) {
        Some(m) => (m, false),
        None => {
            let m = partial.pair_uniform(h, &mut state.rng);
            (m, true)
        }
    };
    let to = partial.owner(mate);

    if was_edge_new {
        let e = edge_id(h, mate);
        tracker.visited_edges[e as usize] = true;
        tracker.visited_edge_count += 1;
        tracker.decrement_red(v);
        tracker.decrement_red(to);
    }
    if !tracker.visited_vertices[to as usize] {
        tracker.visited_vertices[to as usize] = true;
        tracker.visited_vertex_count += 1;
    }
    state.t += 1;
    if state.kind == WalkKind::EdgeProcess {
        if red_available {
            state.t_red += 1;
            if !state.in_red_phase {
                state.in_red_phase = true;
                state.phase_start = Some(v);
            }
            if tracker.red_degree[to as usize] == 0 {
                state.in_red_phase = false;
                state.phase_count += 1;
            }
        } else {
            state.t_blue += 1;
        }
    }
    state.prev_half_edge = Some(h);
    state.current = to;
}

/// Completes a walk-revealed pairing by the Extend-B rule, then pairs the
/// remainder uniformly, and returns the multigraph induced on the unvisited
/// vertices together with their original vertex ids.
///
/// Extend-B: while some unpaired half-edge is owned by a visited vertex, pair
/// an arbitrary such half-edge with a uniformly random unpaired partner. The
/// remaining points all belong to unvisited vertices and a uniform pairing of
/// them is the vacant-set multigraph.
pub fn extend_pairing_for_vacant_set(
    mut partial: PartialConfiguration,
    tracker: &VisitTracker,
    seed: u64,
) -> Result<(HalfEdgeGraph, Vec<u32>)> {
    let mut rng = rng_for(seed, Stream::Extend);
    let n = partial.n;
    let r = partial.r as u32;

    // K: unpaired points of visited vertices, consumed in a fixed order.
    let mut kqueue: Vec<u32> = Vec::new();
    for v in 0..n as u32 {
        if tracker.vertex_visited(v) {
            kqueue.extend(partial.unpaired_at(v));
        }
    }
    for x in kqueue {
        if partial.is_paired(x) {
            continue; // consumed as a partner of an earlier K point
        }
        partial.pair_uniform(x, &mut rng);
    }

    // Every remaining point is owned by an unvisited vertex.
    let vacant: Vec<u32> = (0..n as u32).filter(|&v| !tracker.vertex_visited(v)).collect();
    let mut new_id = vec![UNPAIRED; n];
    for (i, &v) in vacant.iter().enumerate() {
        new_id[v as usize] = i as u32;
    }
    let degrees: Vec<usize> = vacant
        .iter()
        .map(|&v| partial.unpaired_at(v).count())
        .collect();
    debug_assert!(degrees.iter().sum::<usize>() % 2 == 0);

    // Map each surviving point to a half-edge slot of the vacant graph.
    let mut offsets = vec![0u32; vacant.len() + 1];
    for (i, &d) in degrees.iter().enumerate() {
        offsets[i + 1] = offsets[i] + d as u32;
    }
    let mut slot_of = std::collections::HashMap::new();
    for (i, &v) in vacant.iter().enumerate() {
        for (j, h) in partial.unpaired_at(v).enumerate() {
            slot_of.insert(h, offsets[i] + j as u32);
        }
    }

    // Pair the remainder uniformly and translate into the new layout.
    let mut remaining: Vec<u32> = (0..(n as u32 * r)).filter(|&h| !partial.is_paired(h)).collect();
    let mut pairing = vec![UNPAIRED; offsets[vacant.len()] as usize];
    while remaining.len() >= 2 {
        // Draw a uniform matching with swap-remove picks.
        let a = remaining.swap_remove(0);
        let j = rng.gen_range(0..remaining.len());
        let b = remaining.swap_remove(j);
        let (sa, sb) = (slot_of[&a], slot_of[&b]);
        pairing[sa as usize] = sb;
        pairing[sb as usize] = sa;
    }

    let g = HalfEdgeGraph::from_pairing(&degrees, pairing)?;
    Ok((g, vacant))
}
