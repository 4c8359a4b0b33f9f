//! Seeded, parallel Monte Carlo experiment orchestration.
//!
//! A replica owns its graph, walk and RNG streams, all derived from its seed,
//! so reports are deterministic regardless of worker scheduling and invariant
//! under shuffling the seed list.

pub mod report;
pub mod validate;

use crate::error::{Error, Result};
use crate::graphgen::{self, HalfEdgeGraph};
use crate::rng::{self, Stream};
use crate::structure::{
    classify, components, molloy_reed_l, q_statistic, r_statistic, red_moments,
    vacant_net_subgraph, vacant_set_degree_histogram, vacant_set_subgraph, CriticalityConfig,
    MomentScope, Phase,
};
use crate::theory::{self, SizeObject, ThresholdObject, WalkModel};
use crate::walks::{self, Clock, Start, WalkKind};
use rayon::prelude::*;
use serde::Serialize;
use std::sync::OnceLock;

static POOL: OnceLock<()> = OnceLock::new();

/// Caps the worker pool at VACANTLAB_THREADS when set. First call wins.
pub fn init_thread_pool() {
    POOL.get_or_init(|| {
        if let Some(k) = std::env::var("VACANTLAB_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
        {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build_global();
        }
    });
}

/// How replica graphs are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GraphMode {
    /// Configuration-model multigraph (matches the analysis; default).
    Configuration,
    /// Rejection sampling until simple; uniform over simple r-regular graphs.
    Simple,
}

/// Checkpoint specification.
#[derive(Debug, Clone)]
pub enum CheckpointSpec {
    Explicit(Vec<u64>),
    /// Multiples of the predicted threshold step of `object`.
    ThresholdMultiples {
        object: ThresholdObject,
        multiples: Vec<f64>,
    },
}

impl CheckpointSpec {
    /// The default sweep grid 0.1, 0.2, ..., 2.0 times the threshold.
    pub fn default_grid(object: ThresholdObject) -> Self {
        CheckpointSpec::ThresholdMultiples {
            object,
            multiples: (1..=20).map(|k| k as f64 / 10.0).collect(),
        }
    }
}

/// Comparison tolerances (relative); chosen from pilot variance at n = 1e5
/// with 10 seeds, all configurable.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerances {
    pub size: f64,
    pub threshold: f64,
    pub cover_log: f64,
    pub cover_edge_process: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            size: 0.02,
            threshold: 0.05,
            cover_log: 0.10,
            cover_edge_process: 0.03,
        }
    }
}

/// A reproducible experiment description.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub kind: WalkKind,
    pub r: usize,
    pub n: usize,
    pub seeds: Vec<u64>,
    pub checkpoints: CheckpointSpec,
    pub clock: Clock,
    pub graph_mode: GraphMode,
    pub criticality: CriticalityConfig,
    pub tolerances: Tolerances,
    pub nice_only: bool,
    pub start: Start,
    pub simple_max_retries: usize,
    /// Step budget multiplier (times m) guarding red-clock checkpoints.
    pub budget_factor: u64,
}

impl ExperimentConfig {
    pub fn new(kind: WalkKind, r: usize, n: usize, seeds: Vec<u64>) -> Self {
        Self {
            kind,
            r,
            n,
            seeds,
            checkpoints: CheckpointSpec::Explicit(vec![0]),
            clock: Clock::Total,
            graph_mode: GraphMode::Configuration,
            criticality: CriticalityConfig::default(),
            tolerances: Tolerances::default(),
            nice_only: false,
            start: Start::Uniform,
            simple_max_retries: 100_000,
            budget_factor: 100,
        }
    }

    pub fn seed_range(base: u64, count: usize) -> Vec<u64> {
        (0..count as u64).map(|i| base + i).collect()
    }

    fn resolve_checkpoints(&self) -> Result<Vec<u64>> {
        let mut ts = match &self.checkpoints {
            CheckpointSpec::Explicit(ts) => ts.clone(),
            CheckpointSpec::ThresholdMultiples { object, multiples } => {
                let model = WalkModel::new(self.kind, self.r)?;
                let u = theory::threshold(&model, *object)?;
                multiples
                    .iter()
                    .map(|&m| (m * u * self.n as f64).round() as u64)
                    .collect()
            }
        };
        if ts.is_empty() {
            return Err(Error::InvalidParameters("no checkpoints".into()));
        }
        ts.sort_unstable();
        ts.dedup();
        if self.clock == Clock::Red {
            if self.kind != WalkKind::EdgeProcess {
                return Err(Error::InvalidParameters(
                    "the red clock applies only to the edge-process".into(),
                ));
            }
            let m = (self.n * self.r / 2) as u64;
            if ts.iter().any(|&t| t > m) {
                return Err(Error::InvalidParameters(format!(
                    "red-clock checkpoints cannot exceed m = {m}"
                )));
            }
        }
        Ok(ts)
    }
}

/// Names of the per-checkpoint scalar metrics, in output order.
pub const METRIC_NAMES: [&str; 19] = [
    "vacant_set_size",
    "vacant_set_edges",
    "vacant_net_edges",
    "net_vertices",
    "set_c1",
    "set_c2",
    "set_components",
    "set_l",
    "set_q",
    "net_c1",
    "net_c2",
    "net_components",
    "net_l",
    "net_q",
    "net_r_stat",
    "red_m1",
    "red_m2",
    "red_m3",
    "t_blue",
];

/// Scalar metrics measured at one checkpoint of one replica.
#[derive(Debug, Clone)]
pub struct SnapshotMetrics {
    pub values: [f64; METRIC_NAMES.len()],
}

/// One checkpoint row of one replica.
#[derive(Debug, Clone)]
pub struct ReplicaRow {
    pub t: u64,
    pub t_red: u64,
    pub reached: bool,
    pub metrics: SnapshotMetrics,
    pub red_hist: Vec<u64>,
    pub set_phase: Phase,
    pub net_phase: Phase,
}

/// Full output of one replica.
#[derive(Debug, Clone)]
pub struct ReplicaOutput {
    pub seed: u64,
    pub resamples: usize,
    pub rows: Vec<ReplicaRow>,
}

pub(crate) fn sample_replica_graph(
    cfg: &ExperimentConfig,
    seed: u64,
) -> Result<(HalfEdgeGraph, usize)> {
    let mut attempt_seed = seed;
    for attempt in 0..5usize {
        let g = match cfg.graph_mode {
            GraphMode::Configuration => {
                graphgen::sample_regular_configuration(cfg.n, cfg.r, attempt_seed)?
            }
            GraphMode::Simple => {
                graphgen::sample_simple_regular(cfg.n, cfg.r, attempt_seed, cfg.simple_max_retries)?
                    .0
            }
        };
        // Random r-regular graphs with r >= 3 are w.h.p. connected; redraw on
        // the rare disconnected sample so size laws stay comparable.
        if g.is_connected() {
            return Ok((g, attempt));
        }
        attempt_seed = rng::splitmix64(rng::splitmix64(seed ^ Stream::Resample as u64) + attempt as u64 + 1);
    }
    Err(Error::InvalidParameters(format!(
        "seed {seed}: five consecutive disconnected samples"
    )))
}

/// Runs one replica and measures every checkpoint. Exposed so that scans and
/// the validation suite can reuse the exact experiment path.
pub fn run_replica(
    cfg: &ExperimentConfig,
    seed: u64,
    checkpoints: &[u64],
) -> Result<ReplicaOutput> {
    let (g, resamples) = sample_replica_graph(cfg, seed)?;
    let (mut state, mut tracker) = walks::init_walk(&g, cfg.kind, cfg.start, seed)?;
    let n = g.n();
    let m = g.m() as u64;
    let budget = cfg.budget_factor.saturating_mul(m).max(1_000_000);
    let nice = cfg
        .nice_only
        .then(|| graphgen::nice_vertices(&g, graphgen::nice_depth(n, cfg.r, graphgen::DEFAULT_EPS1)));

    let mut rows = Vec::with_capacity(checkpoints.len());
    for &target in checkpoints {
        let reached = walks::advance_to(&mut state, &mut tracker, &g, target, cfg.clock, budget);

        let set_sub = vacant_set_subgraph(&g, &tracker);
        let set_comp = components(&set_sub);
        let set_hist = vacant_set_degree_histogram(&g, &tracker);
        let set_l = molloy_reed_l(&set_hist).unwrap_or(f64::NAN);
        let set_q: f64 = set_hist
            .counts
            .iter()
            .enumerate()
            .map(|(s, &c)| (s as f64) * (s as f64 - 2.0) * c as f64)
            .sum();

        let net_sub = vacant_net_subgraph(&g, &tracker);
        let net_comp = components(&net_sub);
        let scope = match &nice {
            Some(nice) => MomentScope::NiceOnly(nice),
            None => MomentScope::All,
        };
        let (red_hist, moments) = red_moments(&g, &tracker, scope);
        let excluded = nice.as_ref().map(|s| s.non_nice_count() as u64).unwrap_or(0);
        let net_l = molloy_reed_l(&red_hist).unwrap_or(f64::NAN);
        let net_q = q_statistic(&moments, excluded).q;
        let net_r = r_statistic(&moments).unwrap_or(f64::NAN);

        let set_phase = classify(&set_comp, set_sub.vertex_count(), n, &cfg.criticality);
        let net_phase = classify(&net_comp, net_sub.vertex_count(), n, &cfg.criticality);

        let values = [
            (n as u64 - tracker.visited_vertex_count()) as f64,
            set_sub.edge_count() as f64,
            (m - tracker.visited_edge_count()) as f64,
            net_sub.vertex_count() as f64,
            set_comp.c1 as f64,
            set_comp.c2 as f64,
            set_comp.component_count as f64,
            set_l,
            set_q,
            net_comp.c1 as f64,
            net_comp.c2 as f64,
            net_comp.component_count as f64,
            net_l,
            net_q,
            net_r,
            moments.m1 as f64,
            moments.m2 as f64,
            moments.m3 as f64,
            state.t_blue as f64,
        ];
        rows.push(ReplicaRow {
            t: state.t,
            t_red: state.t_red,
            reached,
            metrics: SnapshotMetrics { values },
            red_hist: red_hist.counts.clone(),
            set_phase: set_phase.phase,
            net_phase: net_phase.phase,
        });
    }
    Ok(ReplicaOutput {
        seed,
        resamples,
        rows,
    })
}

/// Aggregate statistics of one metric at one checkpoint.
#[derive(Debug, Clone, Serialize)]
pub struct AggregateRow {
    pub t: u64,
    pub quantity: &'static str,
    pub mean: f64,
    pub stddev: f64,
    pub min: f64,
    pub max: f64,
    pub median: f64,
    pub samples: usize,
}

/// Empirical-vs-predicted comparison at one checkpoint.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub quantity: &'static str,
    pub t: u64,
    pub empirical_mean: f64,
    pub predicted: f64,
    pub relative_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

type PhasePicker = fn(&ReplicaRow) -> Phase;

/// Phase tallies at one checkpoint.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseCountRow {
    pub t: u64,
    pub object: &'static str,
    pub subcritical: usize,
    pub supercritical: usize,
    pub window: usize,
}

/// Mean red-degree histogram at one checkpoint.
#[derive(Debug, Clone, Serialize)]
pub struct HistogramRow {
    pub t: u64,
    pub mean_counts: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AggregateReport {
    pub model: &'static str,
    pub r: usize,
    pub n: usize,
    pub checkpoints: Vec<u64>,
    pub rows: Vec<AggregateRow>,
    pub comparisons: Vec<ComparisonRow>,
    pub phase_counts: Vec<PhaseCountRow>,
    pub histograms: Vec<HistogramRow>,
    pub replica_failures: Vec<(u64, String)>,
    pub resample_events: usize,
}

fn stats_of(values: &[f64]) -> (f64, f64, f64, f64, f64, usize) {
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    if finite.is_empty() {
        return (f64::NAN, f64::NAN, f64::NAN, f64::NAN, f64::NAN, 0);
    }
    let n = finite.len() as f64;
    let mean = finite.iter().sum::<f64>() / n;
    let var = finite.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let mut sorted = finite.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = if sorted.len() % 2 == 1 {
        sorted[sorted.len() / 2]
    } else {
        (sorted[sorted.len() / 2 - 1] + sorted[sorted.len() / 2]) / 2.0
    };
    (
        mean,
        var.sqrt(),
        sorted[0],
        *sorted.last().unwrap(),
        median,
        finite.len(),
    )
}

/// Runs one replica per seed, snapshots at the resolved checkpoints, and
/// aggregates. Per-replica failures are recorded and the run continues; the
/// call fails only when every replica failed.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<AggregateReport> {
    init_thread_pool();
    let checkpoints = cfg.resolve_checkpoints()?;
    let results: Vec<(u64, Result<ReplicaOutput>)> = cfg
        .seeds
        .par_iter()
        .map(|&seed| (seed, run_replica(cfg, seed, &checkpoints)))
        .collect();

    let mut outputs: Vec<ReplicaOutput> = Vec::new();
    let mut failures = Vec::new();
    for (seed, res) in results {
        match res {
            Ok(out) => outputs.push(out),
            Err(e) => failures.push((seed, e.to_string())),
        }
    }
    if outputs.is_empty() {
        let first = failures
            .first()
            .map(|(_, e)| e.clone())
            .unwrap_or_else(|| "no seeds".into());
        return Err(Error::AllReplicasFailed(first));
    }
    // Aggregates must not depend on seed order.
    outputs.sort_by_key(|o| o.seed);
    let resample_events = outputs.iter().map(|o| o.resamples).sum();

    let model = WalkModel::new(cfg.kind, cfg.r).ok();
    let mut rows = Vec::new();
    let mut comparisons = Vec::new();
    let mut phase_counts = Vec::new();
    let mut histograms = Vec::new();

    for (ci, &t) in checkpoints.iter().enumerate() {
        for (mi, &name) in METRIC_NAMES.iter().enumerate() {
            let values: Vec<f64> = outputs.iter().map(|o| o.rows[ci].metrics.values[mi]).collect();
            let (mean, stddev, min, max, median, samples) = stats_of(&values);
            rows.push(AggregateRow {
                t,
                quantity: name,
                mean,
                stddev,
                min,
                max,
                median,
                samples,
            });
        }

        // Size predictions: on the total clock for hazard-based walks, on the
        // red clock for the edge-process.
        let predictable = match (cfg.kind, cfg.clock) {
            (WalkKind::EdgeProcess, Clock::Red) => true,
            (WalkKind::EdgeProcess, Clock::Total) => false,
            (_, Clock::Total) => true,
            _ => false,
        };
        if let (Some(model), true) = (&model, predictable) {
            for (metric, object) in [
                ("vacant_set_size", SizeObject::VacantSet),
                ("vacant_set_edges", SizeObject::VacantSetEdges),
                ("vacant_net_edges", SizeObject::VacantNet),
            ] {
                if let Ok(predicted) = theory::expected_size(model, object, cfg.n as f64, t as f64)
                {
                    let mi = METRIC_NAMES.iter().position(|&x| x == metric).unwrap();
                    let values: Vec<f64> =
                        outputs.iter().map(|o| o.rows[ci].metrics.values[mi]).collect();
                    let (mean, ..) = stats_of(&values);
                    let relative_error = (mean - predicted).abs() / predicted.abs().max(1.0);
                    comparisons.push(ComparisonRow {
                        quantity: metric,
                        t,
                        empirical_mean: mean,
                        predicted,
                        relative_error,
                        tolerance: cfg.tolerances.size,
                        pass: relative_error <= cfg.tolerances.size,
                    });
                }
            }
        }

        let pickers: [(&'static str, PhasePicker); 2] = [
            ("set", |row| row.set_phase),
            ("net", |row| row.net_phase),
        ];
        for (object, pick) in pickers {
            let mut tally = [0usize; 3];
            for o in &outputs {
                tally[pick(&o.rows[ci]) as usize] += 1;
            }
            phase_counts.push(PhaseCountRow {
                t,
                object,
                subcritical: tally[Phase::SubCritical as usize],
                supercritical: tally[Phase::SuperCritical as usize],
                window: tally[Phase::Window as usize],
            });
        }

        let width = outputs[0].rows[ci].red_hist.len();
        let mut mean_counts = vec![0.0; width];
        for o in &outputs {
            for (k, &c) in o.rows[ci].red_hist.iter().enumerate() {
                mean_counts[k] += c as f64;
            }
        }
        for c in &mut mean_counts {
            *c /= outputs.len() as f64;
        }
        histograms.push(HistogramRow { t, mean_counts });
    }

    Ok(AggregateReport {
        model: cfg.kind.label(),
        r: cfg.r,
        n: cfg.n,
        checkpoints,
        rows,
        comparisons,
        phase_counts,
        histograms,
        replica_failures: failures,
        resample_events,
    })
}

/// Mean with bootstrap confidence interval over per-seed values.
#[derive(Debug, Clone, Serialize)]
pub struct CrossingEstimate {
    pub mean: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub per_seed: Vec<f64>,
}

fn bootstrap_ci(values: &[f64]) -> CrossingEstimate {
    use rand::Rng;
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let mut rng = rng::rng_for(0xB00C, Stream::Resample);
    let b = 1000;
    let mut means: Vec<f64> = (0..b)
        .map(|_| {
            (0..values.len())
                .map(|_| values[rng.gen_range(0..values.len())])
                .sum::<f64>()
                / values.len() as f64
        })
        .collect();
    means.sort_by(|a, b| a.partial_cmp(b).unwrap());
    CrossingEstimate {
        mean,
        ci_lo: means[(b as f64 * 0.025) as usize],
        ci_hi: means[(b as f64 * 0.975) as usize],
        per_seed: values.to_vec(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdScan {
    pub object: &'static str,
    pub predicted_step: f64,
    /// Zero crossing of the Q-statistic, interpolated on the grid.
    pub q_crossing: CrossingEstimate,
    /// Last grid step classified supercritical.
    pub collapse: Option<CrossingEstimate>,
}

/// Locates the Q-statistic zero crossing and the giant-collapse point of the
/// chosen object on a step grid, with bootstrap confidence intervals over
/// seeds. The grid must span the sign change.
pub fn threshold_scan(
    cfg: &ExperimentConfig,
    object: ThresholdObject,
    t_grid: &[u64],
) -> Result<ThresholdScan> {
    init_thread_pool();
    let mut grid = t_grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    if grid.len() < 2 {
        return Err(Error::InvalidParameters("grid needs at least 2 points".into()));
    }
    let model = WalkModel::new(cfg.kind, cfg.r)?;
    let predicted_step = theory::threshold(&model, object)? * cfg.n as f64;

    let replicas: Vec<ReplicaOutput> = cfg
        .seeds
        .par_iter()
        .map(|&seed| run_replica(cfg, seed, &grid))
        .collect::<Result<_>>()?;

    let q_index = METRIC_NAMES
        .iter()
        .position(|&x| match object {
            ThresholdObject::VacantSet => x == "set_q",
            ThresholdObject::VacantNet => x == "net_q",
        })
        .unwrap();

    let mut crossings = Vec::new();
    let mut collapses = Vec::new();
    for rep in &replicas {
        let qs: Vec<f64> = rep.rows.iter().map(|row| row.metrics.values[q_index]).collect();
        for w in 0..qs.len() - 1 {
            if qs[w] > 0.0 && qs[w + 1] <= 0.0 {
                let t0 = grid[w] as f64;
                let t1 = grid[w + 1] as f64;
                crossings.push(t0 + (t1 - t0) * qs[w] / (qs[w] - qs[w + 1]));
                break;
            }
        }
        let last_super = rep
            .rows
            .iter()
            .enumerate()
            .filter(|(_, row)| {
                let phase = match object {
                    ThresholdObject::VacantSet => row.set_phase,
                    ThresholdObject::VacantNet => row.net_phase,
                };
                phase == Phase::SuperCritical
            })
            .map(|(i, _)| grid[i] as f64)
            .next_back();
        if let Some(t) = last_super {
            collapses.push(t);
        }
    }
    if crossings.is_empty() {
        return Err(Error::NoCrossing);
    }
    Ok(ThresholdScan {
        object: match object {
            ThresholdObject::VacantSet => "set",
            ThresholdObject::VacantNet => "net",
        },
        predicted_step,
        q_crossing: bootstrap_ci(&crossings),
        collapse: (!collapses.is_empty()).then(|| bootstrap_ci(&collapses)),
    })
}

/// One aggregated row of the cover-time study.
#[derive(Debug, Clone, Serialize)]
pub struct CoverStudyRow {
    pub model: &'static str,
    pub r: usize,
    pub n: usize,
    pub seeds: usize,
    pub mean_vertex: f64,
    pub vertex_over_n: f64,
    pub vertex_over_nlogn: f64,
    pub mean_edge: f64,
    pub edge_over_n: f64,
    pub edge_over_nlogn: f64,
    pub vertex_unreached: usize,
    pub edge_unreached: usize,
}

/// Normalized vertex and edge cover times per (model, r, n). Models invalid
/// for a given r (e.g. edge-process predictions at odd r) still run; only the
/// prediction columns are absent downstream.
pub fn cover_time_study(
    kinds: &[WalkKind],
    r_list: &[usize],
    n_list: &[usize],
    seeds: &[u64],
    budget_factor: f64,
) -> Result<Vec<CoverStudyRow>> {
    init_thread_pool();
    let mut rows = Vec::new();
    for &kind in kinds {
        for &r in r_list {
            if r < 2 || (kind == WalkKind::NonBacktracking && r < 3) {
                continue;
            }
            for &n in n_list {
                if n * r % 2 != 0 {
                    continue;
                }
                let nlogn = n as f64 * (n as f64).ln();
                // Generous guard: covers the n log n regimes of all three
                // walks, including the odd-degree edge-process.
                let budget =
                    (budget_factor * (r as f64) * nlogn).max(budget_factor * 10.0 * n as f64) as u64;
                let results: Vec<walks::CoverTimes> = seeds
                    .par_iter()
                    .map(|&seed| -> Result<walks::CoverTimes> {
                        let cfg = ExperimentConfig::new(kind, r, n, vec![seed]);
                        let (g, _) = sample_replica_graph(&cfg, seed)?;
                        walks::cover_times(&g, kind, Start::Uniform, seed, budget)
                    })
                    .collect::<Result<_>>()?;
                let vertex: Vec<f64> = results
                    .iter()
                    .filter_map(|c| c.vertex.map(|v| v as f64))
                    .collect();
                let edge: Vec<f64> = results
                    .iter()
                    .filter_map(|c| c.edge.map(|v| v as f64))
                    .collect();
                let mean = |xs: &[f64]| {
                    if xs.is_empty() {
                        f64::NAN
                    } else {
                        xs.iter().sum::<f64>() / xs.len() as f64
                    }
                };
                let (mv, me) = (mean(&vertex), mean(&edge));
                rows.push(CoverStudyRow {
                    model: kind.label(),
                    r,
                    n,
                    seeds: seeds.len(),
                    mean_vertex: mv,
                    vertex_over_n: mv / n as f64,
                    vertex_over_nlogn: mv / nlogn,
                    mean_edge: me,
                    edge_over_n: me / n as f64,
                    edge_over_nlogn: me / nlogn,
                    vertex_unreached: results.iter().filter(|c| c.vertex.is_none()).count(),
                    edge_unreached: results.iter().filter(|c| c.edge.is_none()).count(),
                });
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_is_deterministic_and_seed_order_invariant() {
        let mut cfg = ExperimentConfig::new(WalkKind::Simple, 3, 600, vec![3, 1, 2]);
        cfg.checkpoints = CheckpointSpec::Explicit(vec![0, 100, 400]);
        let a = run_experiment(&cfg).unwrap();
        cfg.seeds = vec![1, 2, 3];
        let b = run_experiment(&cfg).unwrap();
        let aj = serde_json::to_string(&a).unwrap();
        let bj = serde_json::to_string(&b).unwrap();
        assert_eq!(aj, bj);
    }

    #[test]
    fn initial_checkpoint_matches_init_state() {
        let cfg = ExperimentConfig::new(WalkKind::Simple, 3, 200, vec![5]);
        let report = run_experiment(&cfg).unwrap();
        let row = report
            .rows
            .iter()
            .find(|r| r.t == 0 && r.quantity == "vacant_set_size")
            .unwrap();
        assert_eq!(row.mean, 199.0);
        let row = report
            .rows
            .iter()
            .find(|r| r.t == 0 && r.quantity == "vacant_net_edges")
            .unwrap();
        assert_eq!(row.mean, 300.0);
    }

    #[test]
    fn failures_are_partial() {
        // n * r odd cannot even build a config; use an invalid start instead.
        let mut cfg = ExperimentConfig::new(WalkKind::Simple, 3, 100, vec![1, 2]);
        cfg.start = Start::Vertex(5000);
        let err = run_experiment(&cfg);
        assert!(matches!(err, Err(Error::AllReplicasFailed(_))));
    }

    #[test]
    fn red_and_total_clocks_agree_before_the_tail() {
        // At red step dn(1 - delta) with delta >= 0.05, total steps exceed
        // red steps by less than 10%.
        let n = 100_000;
        let d = 2u64;
        let t_red = (0.95 * (d * n as u64) as f64) as u64;
        let mut cfg = ExperimentConfig::new(WalkKind::EdgeProcess, 4, n, vec![0, 1]);
        cfg.clock = Clock::Red;
        let checkpoints = [t_red];
        for &seed in &cfg.seeds {
            let out = run_replica(&cfg, seed, &checkpoints).unwrap();
            let row = &out.rows[0];
            assert!(row.reached);
            assert_eq!(row.t_red, t_red);
            let ratio = row.t as f64 / row.t_red as f64;
            assert!(
                (1.0..=1.1).contains(&ratio),
                "total/red = {ratio} at seed {seed}"
            );
        }
    }

    #[test]
    fn red_clock_checkpoints_on_edge_process() {
        let mut cfg = ExperimentConfig::new(WalkKind::EdgeProcess, 4, 500, vec![7, 8]);
        cfg.clock = Clock::Red;
        cfg.checkpoints = CheckpointSpec::Explicit(vec![0, 250, 500, 1000]);
        let report = run_experiment(&cfg).unwrap();
        // Red steps mark fresh edges: vacant net loses exactly t_red edges.
        for row in &report.rows {
            if row.quantity == "vacant_net_edges" {
                assert_eq!(row.mean, (1000 - row.t) as f64);
            }
        }
        // Red clock on a hazard walk is rejected.
        let mut bad = ExperimentConfig::new(WalkKind::Simple, 3, 100, vec![1]);
        bad.clock = Clock::Red;
        assert!(run_experiment(&bad).is_err());
    }
}
