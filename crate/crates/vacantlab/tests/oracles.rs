//! Independent oracles for sampled distributions and structural invariants.

use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use vacantlab::graphgen::{
    export_edge_list, import_edge_list, sample_regular_configuration, DegreeSequence,
    sample_with_degree_sequence,
};
use vacantlab::structure::{components, components_bfs_oracle, Subgraph};
use vacantlab::walks::{init_walk, step, Start, WalkKind};

/// All perfect matchings of {0..2k-1}, each as a sorted list of sorted pairs.
fn enumerate_pairings(points: usize) -> Vec<Vec<(u32, u32)>> {
    fn rec(remaining: &mut Vec<u32>, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if remaining.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = remaining.remove(0);
        for i in 0..remaining.len() {
            let b = remaining.remove(i);
            cur.push((a, b));
            rec(remaining, cur, out);
            cur.pop();
            remaining.insert(i, b);
        }
        remaining.insert(0, a);
    }
    let mut out = Vec::new();
    rec(
        &mut (0..points as u32).collect(),
        &mut Vec::new(),
        &mut out,
    );
    out
}

fn canonical_pairing(g: &vacantlab::graphgen::HalfEdgeGraph) -> Vec<(u32, u32)> {
    let mut pairs: Vec<(u32, u32)> = (0..g.num_half_edges() as u32)
        .filter(|&h| h < g.mate(h))
        .map(|h| (h, g.mate(h)))
        .collect();
    pairs.sort_unstable();
    pairs
}

/// The configuration sampler is uniform over the 15 pairings of 6 points
/// (n = 2, r = 3): chi-square against the exact uniform law, and the
/// triple-edge fraction matches the enumeration oracle.
#[test]
fn two_vertex_cubic_pairings_are_uniform() {
    let all = enumerate_pairings(6);
    assert_eq!(all.len(), 15);

    // Enumeration oracle for the triple-edge class: pairings where every
    // pair crosses between S_0 = {0,1,2} and S_1 = {3,4,5}. There are
    // 3! = 6 of them, so the exact fraction is 6/15 = 2/5.
    let crosses = |p: &Vec<(u32, u32)>| p.iter().all(|&(a, b)| (a < 3) != (b < 3));
    let triple_count = all.iter().filter(|p| crosses(p)).count();
    assert_eq!(triple_count, 6);

    let trials = 150_000u64;
    let mut counts = vec![0u64; all.len()];
    let mut triples = 0u64;
    for seed in 0..trials {
        let g = sample_regular_configuration(2, 3, seed).unwrap();
        let key = canonical_pairing(&g);
        let idx = all.iter().position(|p| *p == key).expect("known pairing");
        counts[idx] += 1;
        if crosses(&key) {
            triples += 1;
        }
    }

    let expected = trials as f64 / all.len() as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let p_value = 1.0 - ChiSquared::new(14.0).unwrap().cdf(stat);
    assert!(
        p_value > 0.001,
        "pairing frequencies not uniform: chi2 = {stat:.1}, p = {p_value:.5}"
    );

    let frac = triples as f64 / trials as f64;
    assert!(
        (frac - 0.4).abs() < 0.01,
        "triple-edge fraction {frac} vs enumeration value 2/5"
    );
}

#[test]
fn union_find_equals_bfs_on_random_sparse_graphs() {
    // Random subgraph snapshots up to 10^3 vertices.
    for seed in 0..30u64 {
        let n = 200 + (seed as usize * 37) % 800;
        let n = if n % 2 == 1 { n + 1 } else { n };
        let g = sample_regular_configuration(n, 3, seed).unwrap();
        let (mut s, mut t) = init_walk(&g, WalkKind::Simple, Start::Vertex(0), seed).unwrap();
        for _ in 0..(n as u64) {
            step(&mut s, &mut t, &g);
        }
        let mut edges = Vec::new();
        for h in 0..g.num_half_edges() as u32 {
            if h < g.mate(h) && !t.edge_visited(h) {
                edges.push((g.owner(h), g.owner(g.mate(h))));
            }
        }
        let sub = Subgraph {
            vertices: (0..n as u32).collect(),
            edges,
        };
        assert_eq!(components(&sub).sizes, components_bfs_oracle(&sub).sizes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Sampled configurations are fixed-point free involutions with the
    /// requested degrees, deterministically in the seed.
    #[test]
    fn configuration_invariants(n in 2usize..120, r in 2usize..8, seed in any::<u64>()) {
        prop_assume!(n * r % 2 == 0);
        let g = sample_regular_configuration(n, r, seed).unwrap();
        g.check_invariants();
        prop_assert_eq!(g.regular_degree(), Some(r));
        let again = sample_regular_configuration(n, r, seed).unwrap();
        prop_assert_eq!(canonical_pairing(&g), canonical_pairing(&again));
    }

    /// Degree-sequence sampling conserves the prescribed degrees.
    #[test]
    fn degree_sequence_conservation(degrees in proptest::collection::vec(0usize..6, 2..40), seed in any::<u64>()) {
        let total: usize = degrees.iter().sum();
        prop_assume!(total % 2 == 0);
        let seq = DegreeSequence::new(degrees.clone(), 6).unwrap();
        let g = sample_with_degree_sequence(&seq, seed).unwrap();
        for (v, &d) in degrees.iter().enumerate() {
            prop_assert_eq!(g.degree(v as u32), d);
        }
    }

    /// Edge-list export then import is canonical and idempotent.
    #[test]
    fn edge_list_round_trip(n in 2usize..60, seed in any::<u64>()) {
        let n = if n % 2 == 1 { n + 1 } else { n };
        let g = sample_regular_configuration(n, 3, seed).unwrap();
        let mut buf = Vec::new();
        export_edge_list(&g, &mut buf).unwrap();
        let g2 = import_edge_list(&buf[..]).unwrap();
        prop_assert_eq!(g.canonical_edge_list(), g2.canonical_edge_list());
        let mut buf2 = Vec::new();
        export_edge_list(&g2, &mut buf2).unwrap();
        prop_assert_eq!(buf, buf2);
    }

    /// Tracker identities hold along any walk on any sampled graph:
    /// running counts match the bit-sets and sum d_R = 2(m - |S|).
    #[test]
    fn tracker_identities(
        n in 4usize..200,
        kind_pick in 0usize..3,
        steps in 0u64..600,
        seed in any::<u64>(),
    ) {
        let n = if n % 2 == 1 { n + 1 } else { n };
        let kind = [WalkKind::Simple, WalkKind::NonBacktracking, WalkKind::EdgeProcess][kind_pick];
        let g = sample_regular_configuration(n, 3, seed).unwrap();
        let (mut s, mut t) = init_walk(&g, kind, Start::Vertex(0), seed).unwrap();
        for _ in 0..steps {
            step(&mut s, &mut t, &g);
        }
        prop_assert_eq!(t.recount_visited_edges(), t.visited_edge_count());
        let red_total: u64 = t.red_degrees().iter().map(|&d| d as u64).sum();
        prop_assert_eq!(red_total, 2 * (g.m() as u64 - t.visited_edge_count()));
        if kind == WalkKind::EdgeProcess {
            prop_assert_eq!(t.visited_edge_count(), s.t_red);
            prop_assert_eq!(s.t, s.t_red + s.t_blue);
        }
    }
}
