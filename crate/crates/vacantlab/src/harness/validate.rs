//! The validation suite: every acceptance check as a callable criterion,
//! runnable at full scale (the gate) or as a reduced quick smoke profile.

use super::{run_replica, threshold_scan, ExperimentConfig, ReplicaOutput};
use crate::error::Result;
use crate::graphgen::{self, complete_graph};
use crate::structure::{self, components, components_bfs_oracle, Phase, Subgraph};
use crate::theory::{self, CoverTarget, SizeObject, ThresholdObject, WalkModel};
use crate::walks::{self, walk_generate, Clock, Start, WalkKind};
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Scale parameters of a validation run.
#[derive(Debug, Clone)]
pub struct Profile {
    pub name: &'static str,
    /// n for the size criteria (1-3).
    pub n_size: usize,
    /// n for threshold, degree-law and cover-time criteria (6-12).
    pub n_mid: usize,
    pub seeds: usize,
    /// Required successes out of `seeds` for the per-seed phase criteria.
    pub pass_count: usize,
    pub seed_base: u64,
    pub scaling_ns: Vec<usize>,
    pub scaling_seeds: usize,
    /// Include the slow-suite scaling-window criterion.
    pub run_slow: bool,
    /// Include the normalized cover-time comparisons; the n log n
    /// normalizations only settle near n = 1e5.
    pub run_cover_asymptotics: bool,
    pub equivalence_n: usize,
    pub equivalence_runs: usize,
    pub pairs_n: usize,
    pub pairs_runs: u64,
    /// (r, lower, upper) bands for the edge-process vertex cover time.
    pub edge_cover_cases: Vec<(usize, f64, f64)>,
}

impl Profile {
    pub fn full() -> Self {
        Self {
            name: "full",
            n_size: 200_000,
            n_mid: 100_000,
            seeds: 10,
            pass_count: 8,
            seed_base: 0,
            scaling_ns: vec![1 << 14, 1 << 15, 1 << 16, 1 << 17, 1 << 18],
            scaling_seeds: 20,
            run_slow: true,
            run_cover_asymptotics: true,
            equivalence_n: 1_000,
            equivalence_runs: 10_000,
            pairs_n: 50,
            pairs_runs: 10_000,
            edge_cover_cases: vec![(4, 1.94, 2.06), (6, 2.90, 3.10)],
        }
    }

    /// Smoke profile: same checks at desk-minute scale. Finite-size effects
    /// at n = 10^4 leave less headroom; the full profile is the gate.
    pub fn quick() -> Self {
        Self {
            name: "quick",
            n_size: 10_000,
            n_mid: 10_000,
            seeds: 3,
            pass_count: 2,
            seed_base: 0,
            scaling_ns: vec![],
            scaling_seeds: 0,
            run_slow: false,
            run_cover_asymptotics: false,
            equivalence_n: 500,
            equivalence_runs: 2_000,
            pairs_n: 50,
            pairs_runs: 2_000,
            edge_cover_cases: vec![(4, 1.94, 2.06)],
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "full" => Some(Self::full()),
            "quick" => Some(Self::quick()),
            _ => None,
        }
    }

    fn seeds_vec(&self) -> Vec<u64> {
        ExperimentConfig::seed_range(self.seed_base, self.seeds)
    }
}

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub skipped: bool,
    pub detail: String,
}

impl CriterionResult {
    fn pass(id: usize, name: &'static str, detail: String) -> Self {
        Self {
            id,
            name,
            passed: true,
            skipped: false,
            detail,
        }
    }

    fn fail(id: usize, name: &'static str, detail: String) -> Self {
        Self {
            id,
            name,
            passed: false,
            skipped: false,
            detail,
        }
    }

    fn skip(id: usize, name: &'static str, detail: String) -> Self {
        Self {
            id,
            name,
            passed: true,
            skipped: true,
            detail,
        }
    }

    fn from_error(id: usize, name: &'static str, err: &crate::Error) -> Self {
        Self::fail(id, name, format!("error: {err}"))
    }

    pub fn line(&self) -> String {
        let status = if self.skipped {
            "SKIP"
        } else if self.passed {
            "PASS"
        } else {
            "FAIL"
        };
        format!("{status} {:>2}  {}: {}", self.id, self.name, self.detail)
    }
}

fn guard(
    id: usize,
    name: &'static str,
    body: impl FnOnce() -> Result<CriterionResult>,
) -> CriterionResult {
    match body() {
        Ok(res) => res,
        Err(e) => CriterionResult::from_error(id, name, &e),
    }
}

fn outputs_at(
    cfg: &ExperimentConfig,
    checkpoints: &[u64],
) -> Result<Vec<ReplicaOutput>> {
    cfg.seeds
        .par_iter()
        .map(|&seed| run_replica(cfg, seed, checkpoints))
        .collect()
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

const METRIC_VACANT_SET: usize = 0;
const METRIC_VACANT_NET_EDGES: usize = 2;
const METRIC_SET_L: usize = 7;

/// Criterion 1: simple-walk vacant-set size at t = 2n is within 2% of e^{-1}.
pub fn c01_vacant_set_size_simple(p: &Profile) -> CriterionResult {
    let name = "vacant-set size, simple walk";
    guard(1, name, || {
        let n = p.n_size;
        let cfg = ExperimentConfig::new(WalkKind::Simple, 3, n, p.seeds_vec());
        let outs = outputs_at(&cfg, &[2 * n as u64])?;
        let ratios: Vec<f64> = outs
            .iter()
            .map(|o| o.rows[0].metrics.values[METRIC_VACANT_SET] / n as f64)
            .collect();
        let m = mean(&ratios);
        let target = (-1.0f64).exp();
        let rel = (m - target).abs() / target;
        let detail = format!("mean |R(2n)|/n = {m:.5} vs {target:.5} (rel {rel:.2e}, tol 0.02)");
        Ok(if rel <= 0.02 {
            CriterionResult::pass(1, name, detail)
        } else {
            CriterionResult::fail(1, name, detail)
        })
    })
}

/// Criterion 2: simple-walk vacant-net size at t = 3n is within 2% of e^{-1}.
pub fn c02_vacant_net_size_simple(p: &Profile) -> CriterionResult {
    let name = "vacant-net size, simple walk";
    guard(2, name, || {
        let n = p.n_size;
        let cfg = ExperimentConfig::new(WalkKind::Simple, 3, n, p.seeds_vec());
        let outs = outputs_at(&cfg, &[3 * n as u64])?;
        let m_edges = 1.5 * n as f64;
        let ratios: Vec<f64> = outs
            .iter()
            .map(|o| o.rows[0].metrics.values[METRIC_VACANT_NET_EDGES] / m_edges)
            .collect();
        let m = mean(&ratios);
        let target = (-1.0f64).exp();
        let rel = (m - target).abs() / target;
        let detail =
            format!("mean |U(3n)|/(rn/2) = {m:.5} vs {target:.5} (rel {rel:.2e}, tol 0.02)");
        Ok(if rel <= 0.02 {
            CriterionResult::pass(2, name, detail)
        } else {
            CriterionResult::fail(2, name, detail)
        })
    })
}

/// Criterion 3: non-backtracking sizes at t = n ln 2.
pub fn c03_nbw_sizes(p: &Profile) -> CriterionResult {
    let name = "non-backtracking sizes";
    guard(3, name, || {
        let n = p.n_size;
        let t = ((n as f64) * 2.0f64.ln()).round() as u64;
        let cfg = ExperimentConfig::new(WalkKind::NonBacktracking, 3, n, p.seeds_vec());
        let outs = outputs_at(&cfg, &[t])?;
        let set_ratio = mean(
            &outs
                .iter()
                .map(|o| o.rows[0].metrics.values[METRIC_VACANT_SET] / n as f64)
                .collect::<Vec<_>>(),
        );
        let net_ratio = mean(
            &outs
                .iter()
                .map(|o| o.rows[0].metrics.values[METRIC_VACANT_NET_EDGES] / (1.5 * n as f64))
                .collect::<Vec<_>>(),
        );
        let model = WalkModel::new(WalkKind::NonBacktracking, 3)?;
        let net_target =
            theory::expected_size(&model, SizeObject::VacantNet, n as f64, t as f64)?
                / (1.5 * n as f64);
        let rel_set = (set_ratio - 0.5).abs() / 0.5;
        let rel_net = (net_ratio - net_target).abs() / net_target;
        let detail = format!(
            "|R|/n = {set_ratio:.5} vs 0.5 (rel {rel_set:.2e}); |U|/(rn/2) = {net_ratio:.5} vs {net_target:.5} (rel {rel_net:.2e}); tol 0.02"
        );
        Ok(if rel_set <= 0.02 && rel_net <= 0.02 {
            CriterionResult::pass(3, name, detail)
        } else {
            CriterionResult::fail(3, name, detail)
        })
    })
}

/// Criterion 4: the six thresholds against the rate-pair oracle, r in 3..=64.
pub fn c04_threshold_closed_forms(_p: &Profile) -> CriterionResult {
    let name = "six-threshold closed-form cross-check";
    guard(4, name, || {
        let mut worst = 0.0f64;
        for r in 3..=64usize {
            for kind in [WalkKind::Simple, WalkKind::NonBacktracking] {
                let model = WalkModel::new(kind, r)?;
                for object in [ThresholdObject::VacantSet, ThresholdObject::VacantNet] {
                    let direct = theory::threshold(&model, object)?;
                    let (c1, c2) = theory::threshold_rate_pair(&model, object)?;
                    let oracle = theory::threshold_from_rates(r, c1, c2)?;
                    worst = worst.max((direct - oracle).abs() / direct);
                }
            }
        }
        let edge = WalkModel::new(WalkKind::EdgeProcess, 4)?;
        let u = theory::threshold(&edge, ThresholdObject::VacantSet)?;
        let edge_err = (u - 4.0 / 3.0).abs();
        let detail = format!(
            "worst oracle mismatch {worst:.2e} over r in 3..=64; edge-process u*(d=2) err {edge_err:.2e}; tol 1e-12"
        );
        Ok(if worst <= 1e-12 && edge_err <= 1e-12 {
            CriterionResult::pass(4, name, detail)
        } else {
            CriterionResult::fail(4, name, detail)
        })
    })
}

/// Criterion 5: threshold ratios at r = 3 are exactly 2 and 5/2.
pub fn c05_threshold_ratios(_p: &Profile) -> CriterionResult {
    let name = "threshold ratios at r=3";
    guard(5, name, || {
        let simple = WalkModel::new(WalkKind::Simple, 3)?;
        let nbw = WalkModel::new(WalkKind::NonBacktracking, 3)?;
        let set_ratio = theory::threshold(&simple, ThresholdObject::VacantSet)?
            / theory::threshold(&nbw, ThresholdObject::VacantSet)?;
        let net_ratio = theory::threshold(&simple, ThresholdObject::VacantNet)?
            / theory::threshold(&nbw, ThresholdObject::VacantNet)?;
        let e1 = (set_ratio - 2.0).abs();
        let e2 = (net_ratio - 2.5).abs();
        let detail = format!("set ratio {set_ratio} (err {e1:.2e}), net ratio {net_ratio} (err {e2:.2e}); tol 1e-12");
        Ok(if e1 <= 1e-12 && e2 <= 1e-12 {
            CriterionResult::pass(5, name, detail)
        } else {
            CriterionResult::fail(5, name, detail)
        })
    })
}

fn phase_of(row: &super::ReplicaRow, object: ThresholdObject) -> Phase {
    match object {
        ThresholdObject::VacantSet => row.set_phase,
        ThresholdObject::VacantNet => row.net_phase,
    }
}

/// Criterion 6: super/sub-critical bracketing at 0.75/1.25 times each of the
/// four hazard-walk thresholds.
pub fn c06_phase_bracketing(p: &Profile) -> CriterionResult {
    let name = "phase-transition bracketing";
    guard(6, name, || {
        let n = p.n_mid;
        let mut details = Vec::new();
        let mut ok = true;
        for (kind, object, label) in [
            (WalkKind::Simple, ThresholdObject::VacantNet, "simple net"),
            (WalkKind::Simple, ThresholdObject::VacantSet, "simple set"),
            (WalkKind::NonBacktracking, ThresholdObject::VacantSet, "nbw set"),
            (WalkKind::NonBacktracking, ThresholdObject::VacantNet, "nbw net"),
        ] {
            let model = WalkModel::new(kind, 3)?;
            let theta = theory::threshold(&model, object)?;
            let t_lo = (0.75 * theta * n as f64).round() as u64;
            let t_hi = (1.25 * theta * n as f64).round() as u64;
            let cfg = ExperimentConfig::new(kind, 3, n, p.seeds_vec());
            let outs = outputs_at(&cfg, &[t_lo, t_hi])?;
            let supers = outs
                .iter()
                .filter(|o| phase_of(&o.rows[0], object) == Phase::SuperCritical)
                .count();
            let subs = outs
                .iter()
                .filter(|o| phase_of(&o.rows[1], object) == Phase::SubCritical)
                .count();
            ok &= supers >= p.pass_count && subs >= p.pass_count;
            details.push(format!(
                "{label}: super {supers}/{} sub {subs}/{}",
                p.seeds, p.seeds
            ));
        }
        let detail = format!("{} (need {}/{}).", details.join("; "), p.pass_count, p.seeds);
        Ok(if ok {
            CriterionResult::pass(6, name, detail)
        } else {
            CriterionResult::fail(6, name, detail)
        })
    })
}

/// Criterion 7: Q-statistic zero crossing within 5% of the predicted
/// threshold step for the simple net and the NBW set.
pub fn c07_q_crossing(p: &Profile) -> CriterionResult {
    let name = "empirical threshold location";
    guard(7, name, || {
        let n = p.n_mid;
        let mut details = Vec::new();
        let mut ok = true;
        for (kind, object, label) in [
            (WalkKind::Simple, ThresholdObject::VacantNet, "simple net"),
            (WalkKind::NonBacktracking, ThresholdObject::VacantSet, "nbw set"),
        ] {
            let model = WalkModel::new(kind, 3)?;
            let theta_n = theory::threshold(&model, object)? * n as f64;
            let grid: Vec<u64> = (5..=15)
                .map(|k| (k as f64 / 10.0 * theta_n).round() as u64)
                .collect();
            let cfg = ExperimentConfig::new(kind, 3, n, p.seeds_vec());
            let scan = threshold_scan(&cfg, object, &grid)?;
            let rel = (scan.q_crossing.mean - theta_n).abs() / theta_n;
            ok &= rel <= 0.05;
            details.push(format!(
                "{label}: crossing {:.0} vs {theta_n:.0} (rel {rel:.3})",
                scan.q_crossing.mean
            ));
        }
        let detail = format!("{}; tol 0.05", details.join("; "));
        Ok(if ok {
            CriterionResult::pass(7, name, detail)
        } else {
            CriterionResult::fail(7, name, detail)
        })
    })
}

/// Criterion 8: Molloy-Reed sign flip on the measured vacant-set histogram.
pub fn c08_molloy_reed_sign_flip(p: &Profile) -> CriterionResult {
    let name = "Molloy-Reed sign flip on the vacant set";
    guard(8, name, || {
        let n = p.n_mid;
        let model = WalkModel::new(WalkKind::Simple, 3)?;
        let u = theory::threshold(&model, ThresholdObject::VacantSet)?;
        let t_lo = (0.75 * u * n as f64).round() as u64;
        let t_hi = (1.25 * u * n as f64).round() as u64;
        let cfg = ExperimentConfig::new(WalkKind::Simple, 3, n, p.seeds_vec());
        let outs = outputs_at(&cfg, &[t_lo, t_hi])?;
        let pos = outs
            .iter()
            .filter(|o| o.rows[0].metrics.values[METRIC_SET_L] > 0.0)
            .count();
        let neg = outs
            .iter()
            .filter(|o| o.rows[1].metrics.values[METRIC_SET_L] < 0.0)
            .count();
        let ok = pos >= p.pass_count && neg >= p.pass_count;
        let detail = format!(
            "L > 0 at 0.75u*n in {pos}/{}; L < 0 at 1.25u*n in {neg}/{} (need {})",
            p.seeds, p.seeds, p.pass_count
        );
        Ok(if ok {
            CriterionResult::pass(8, name, detail)
        } else {
            CriterionResult::fail(8, name, detail)
        })
    })
}

/// Criterion 9: edge-process red-degree counts match the exact hypergeometric
/// law within the martingale deviation bound.
pub fn c09_edge_process_degree_law(p: &Profile) -> CriterionResult {
    let name = "edge-process degree law";
    guard(9, name, || {
        let n = p.n_mid;
        let d = 2u64;
        let t_red = n as u64;
        let mut cfg = ExperimentConfig::new(WalkKind::EdgeProcess, 4, n, p.seeds_vec());
        cfg.clock = Clock::Red;
        let outs = outputs_at(&cfg, &[t_red])?;
        let bound = 3.0 * ((n as f64) * (n as f64).ln()).sqrt();
        let mut worst: f64 = 0.0;
        for o in &outs {
            for k in 0..=d {
                let measured = o.rows[0].red_hist[(2 * k) as usize] as f64;
                let expected = theory::edge_process_nk(n as u64, d, k, t_red)?.exact;
                worst = worst.max((measured - expected).abs());
            }
        }
        let detail = format!(
            "max |R_2k - N_k| = {worst:.1} over {} seeds, bound 3 sqrt(n ln n) = {bound:.1}",
            p.seeds
        );
        Ok(if worst <= bound {
            CriterionResult::pass(9, name, detail)
        } else {
            CriterionResult::fail(9, name, detail)
        })
    })
}

fn edge_cover_means(p: &Profile, r: usize, n: usize) -> Result<f64> {
    let budget = 100 * (n * r / 2) as u64;
    let values: Vec<f64> = p
        .seeds_vec()
        .par_iter()
        .map(|&seed| -> Result<f64> {
            let cfg = ExperimentConfig::new(WalkKind::EdgeProcess, r, n, vec![seed]);
            let (g, _) = super::sample_replica_graph(&cfg, seed)?;
            let cov = walks::cover_times(&g, WalkKind::EdgeProcess, Start::Uniform, seed, budget)?;
            cov.vertex
                .map(|v| v as f64)
                .ok_or_else(|| crate::Error::InvalidParameters("cover budget exhausted".into()))
        })
        .collect::<Result<_>>()?;
    Ok(mean(&values) / n as f64)
}

/// Criterion 10: edge-process vertex cover time per vertex.
pub fn c10_edge_process_cover_time(p: &Profile) -> CriterionResult {
    let name = "edge-process cover time";
    guard(10, name, || {
        let n = p.n_mid;
        let mut ok = true;
        let mut details = Vec::new();
        for &(r, lo, hi) in &p.edge_cover_cases {
            let ratio = edge_cover_means(p, r, n)?;
            ok &= (lo..=hi).contains(&ratio);
            details.push(format!("r={r}: T_cov/n = {ratio:.4} in [{lo}, {hi}]"));
        }
        let detail = details.join("; ");
        Ok(if ok {
            CriterionResult::pass(10, name, detail)
        } else {
            CriterionResult::fail(10, name, detail)
        })
    })
}

/// Criterion 11: edge-process set threshold bracketing and vacant-net giant
/// on the red clock, collapse after edge coverage.
pub fn c11_edge_process_thresholds(p: &Profile) -> CriterionResult {
    let name = "edge-process set threshold and net collapse";
    guard(11, name, || {
        let n = p.n_mid;
        let d = 2.0;
        let u = 4.0 / 3.0;
        let t_set_lo = (0.75 * u * n as f64).round() as u64;
        let t_net = (0.8 * d * n as f64).round() as u64;
        let t_set_hi = (1.25 * u * n as f64).round() as u64;
        let t_cover = (d * n as f64) as u64; // red step dn = m: edge coverage
        let mut cfg = ExperimentConfig::new(WalkKind::EdgeProcess, 4, n, p.seeds_vec());
        cfg.clock = Clock::Red;
        let grid = [t_set_lo, t_net, t_set_hi, t_cover];
        let outs = outputs_at(&cfg, &grid)?;
        let supers = outs
            .iter()
            .filter(|o| o.rows[0].set_phase == Phase::SuperCritical)
            .count();
        let net_supers = outs
            .iter()
            .filter(|o| o.rows[1].net_phase == Phase::SuperCritical)
            .count();
        let subs = outs
            .iter()
            .filter(|o| o.rows[2].set_phase == Phase::SubCritical)
            .count();
        let collapsed = outs
            .iter()
            .filter(|o| {
                o.rows[3].reached
                    && o.rows[3].metrics.values[9] <= 60.0 * (n as f64).ln()
            })
            .count();
        let ok = supers >= p.pass_count
            && subs >= p.pass_count
            && net_supers >= p.pass_count
            && collapsed >= p.pass_count;
        let detail = format!(
            "set super {supers}/{s}, set sub {subs}/{s}, net giant at 0.8dn {net_supers}/{s}, net collapsed after edge cover {collapsed}/{s} (need {need})",
            s = p.seeds,
            need = p.pass_count
        );
        Ok(if ok {
            CriterionResult::pass(11, name, detail)
        } else {
            CriterionResult::fail(11, name, detail)
        })
    })
}

fn cover_ratio_means(
    p: &Profile,
    kind: WalkKind,
    r: usize,
    n: usize,
) -> Result<(f64, f64)> {
    let nlogn = n as f64 * (n as f64).ln();
    let model = WalkModel::new(kind, r)?;
    let edge_pred = theory::cover_time(&model, CoverTarget::Edge, n as f64)?.value();
    let budget = (12.0 * edge_pred) as u64;
    let pairs: Vec<(f64, f64)> = p
        .seeds_vec()
        .par_iter()
        .map(|&seed| -> Result<(f64, f64)> {
            let cfg = ExperimentConfig::new(kind, r, n, vec![seed]);
            let (g, _) = super::sample_replica_graph(&cfg, seed)?;
            let cov = walks::cover_times(&g, kind, Start::Uniform, seed, budget)?;
            match (cov.vertex, cov.edge) {
                (Some(v), Some(e)) => Ok((v as f64, e as f64)),
                _ => Err(crate::Error::InvalidParameters(
                    "cover budget exhausted".into(),
                )),
            }
        })
        .collect::<Result<_>>()?;
    let v: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let e: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    Ok((mean(&v) / nlogn, mean(&e) / nlogn))
}

/// Criterion 12: simple and NBW cover times normalized by n ln n.
pub fn c12_walk_cover_times(p: &Profile) -> CriterionResult {
    let name = "simple and NBW cover times";
    if !p.run_cover_asymptotics {
        return CriterionResult::skip(
            12,
            name,
            "n log n normalization needs n ~ 1e5; run the full profile".to_string(),
        );
    }
    guard(12, name, || {
        let n = p.n_mid;
        let mut ok = true;
        let mut details = Vec::new();
        for (kind, v_target, e_target, label) in [
            (WalkKind::Simple, 2.0, 3.0, "simple"),
            (WalkKind::NonBacktracking, 1.0, 1.5, "nbw"),
        ] {
            let (v, e) = cover_ratio_means(p, kind, 3, n)?;
            let rel_v = (v - v_target).abs() / v_target;
            let rel_e = (e - e_target).abs() / e_target;
            ok &= rel_v <= 0.10 && rel_e <= 0.10;
            details.push(format!(
                "{label}: T_V/(n ln n) = {v:.3} vs {v_target} (rel {rel_v:.3}), T_E/(n ln n) = {e:.3} vs {e_target} (rel {rel_e:.3})"
            ));
        }
        let detail = format!("{}; tol 0.10", details.join("; "));
        Ok(if ok {
            CriterionResult::pass(12, name, detail)
        } else {
            CriterionResult::fail(12, name, detail)
        })
    })
}

/// Criterion 13 (slow suite): fitted scaling exponent of median C1 at the
/// simple vacant-set threshold lies in [0.55, 0.80].
pub fn c13_scaling_window_exponent(p: &Profile) -> CriterionResult {
    let name = "scaling-window exponent";
    if !p.run_slow || p.scaling_ns.len() < 2 {
        return CriterionResult::skip(
            13,
            name,
            "slow suite disabled in this profile".to_string(),
        );
    }
    guard(13, name, || {
        let seeds = ExperimentConfig::seed_range(p.seed_base, p.scaling_seeds);
        let probe = structure::scaling_window_probe(
            WalkKind::Simple,
            3,
            &p.scaling_ns,
            &seeds,
            &[0.0],
        )?;
        let exp = probe.exponent_at_zero;
        let detail = format!("fitted exponent {exp:.3} in [0.55, 0.80] (target 2/3)");
        Ok(if (0.55..=0.80).contains(&exp) {
            CriterionResult::pass(13, name, detail)
        } else {
            CriterionResult::fail(13, name, detail)
        })
    })
}

/// Two-sample chi-square p-value with equal sample counts.
fn two_sample_chi_square_p(a: &[u64], b: &[u64]) -> f64 {
    // Bin jointly so every bin holds at least 20 combined observations.
    let lo = *a.iter().chain(b.iter()).min().unwrap();
    let hi = *a.iter().chain(b.iter()).max().unwrap();
    let width = (hi - lo + 1) as usize;
    let mut ca = vec![0u64; width];
    let mut cb = vec![0u64; width];
    for &x in a {
        ca[(x - lo) as usize] += 1;
    }
    for &x in b {
        cb[(x - lo) as usize] += 1;
    }
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut acc_a, mut acc_b) = (0u64, 0u64);
    for i in 0..width {
        acc_a += ca[i];
        acc_b += cb[i];
        if acc_a + acc_b >= 20 {
            bins.push((acc_a as f64, acc_b as f64));
            acc_a = 0;
            acc_b = 0;
        }
    }
    if acc_a + acc_b > 0 {
        if let Some(last) = bins.last_mut() {
            last.0 += acc_a as f64;
            last.1 += acc_b as f64;
        } else {
            bins.push((acc_a as f64, acc_b as f64));
        }
    }
    if bins.len() < 2 {
        return 1.0;
    }
    let stat: f64 = bins
        .iter()
        .map(|&(x, y)| (x - y).powi(2) / (x + y))
        .sum();
    let df = (bins.len() - 1) as f64;
    1.0 - ChiSquared::new(df).expect("df >= 1").cdf(stat)
}

/// Criterion 14: the three auxiliary oracles — union-find vs BFS exhaustively,
/// lazy revelation vs pre-generated walks distributionally, and the
/// pair-sampling procedure vs the exact hypergeometric.
pub fn c14_oracles(p: &Profile) -> CriterionResult {
    let name = "oracle and uniformity properties";
    guard(14, name, || {
        // (a) union-find vs BFS on every edge subset of K6.
        let k6 = complete_graph(6).canonical_edge_list();
        let mismatch = (0u32..(1 << 15)).into_par_iter().find_any(|&mask| {
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
            components(&sub).sizes != components_bfs_oracle(&sub).sizes
        });
        if mismatch.is_some() {
            return Ok(CriterionResult::fail(
                14,
                name,
                format!("union-find disagrees with BFS at K6 mask {mismatch:?}"),
            ));
        }

        // (b) |B(n)| distribution: lazy revelation vs pre-generated walks.
        let n = p.equivalence_n;
        let runs = p.equivalence_runs as u64;
        let lazy: Vec<u64> = (0..runs)
            .into_par_iter()
            .map(|seed| -> Result<u64> {
                let (_, _, tracker) =
                    walk_generate(n, 3, WalkKind::Simple, seed, n as u64)?;
                Ok(tracker.visited_vertex_count())
            })
            .collect::<Result<_>>()?;
        let pre: Vec<u64> = (0..runs)
            .into_par_iter()
            .map(|seed| -> Result<u64> {
                let seed = 1_000_000 + seed;
                let g = graphgen::sample_regular_configuration(n, 3, seed)?;
                let (mut s, mut t) = walks::init_walk(&g, WalkKind::Simple, Start::Vertex(0), seed)?;
                walks::advance_to(&mut s, &mut t, &g, n as u64, Clock::Total, u64::MAX);
                Ok(t.visited_vertex_count())
            })
            .collect::<Result<_>>()?;
        let p_value = two_sample_chi_square_p(&lazy, &pre);
        if p_value <= 0.001 {
            return Ok(CriterionResult::fail(
                14,
                name,
                format!("walk_generate equivalence chi-square p = {p_value:.5} <= 0.001"),
            ));
        }

        // (c) pair-sampling Monte Carlo vs exact hypergeometric at small n.
        let pn = p.pairs_n;
        let d = 2u64;
        let t = (pn as u64 * d) / 4; // quarter of the run, matches t = 25 at n = 50
        let runs = p.pairs_runs;
        let mut sums = vec![0f64; 2 * d as usize + 1];
        let mut sq = vec![0f64; 2 * d as usize + 1];
        for seed in 0..runs {
            let hist = theory::pairs_process(pn, d as usize, seed, t)?;
            for (s, &c) in hist.counts.iter().enumerate() {
                sums[s] += c as f64;
                sq[s] += (c * c) as f64;
            }
        }
        let mut worst_sigma = 0.0f64;
        for k in 0..=d {
            let s = (2 * k) as usize;
            let m = sums[s] / runs as f64;
            let var = (sq[s] / runs as f64 - m * m).max(0.0);
            let sd_mean = (var / runs as f64).sqrt().max(1e-9);
            let expected = theory::edge_process_nk(pn as u64, d, k, t)?.exact;
            worst_sigma = worst_sigma.max((m - expected).abs() / sd_mean);
        }
        if worst_sigma > 3.0 {
            return Ok(CriterionResult::fail(
                14,
                name,
                format!("pairs-process deviates {worst_sigma:.2} sigma from hypergeometric"),
            ));
        }

        Ok(CriterionResult::pass(
            14,
            name,
            format!(
                "union-find == BFS on all 32768 K6 subsets; equivalence p = {p_value:.4}; pairs within {worst_sigma:.2} sigma"
            ),
        ))
    })
}

/// Runs every criterion of the profile in order.
pub fn run_profile(p: &Profile) -> Vec<CriterionResult> {
    super::init_thread_pool();
    vec![
        c01_vacant_set_size_simple(p),
        c02_vacant_net_size_simple(p),
        c03_nbw_sizes(p),
        c04_threshold_closed_forms(p),
        c05_threshold_ratios(p),
        c06_phase_bracketing(p),
        c07_q_crossing(p),
        c08_molloy_reed_sign_flip(p),
        c09_edge_process_degree_law(p),
        c10_edge_process_cover_time(p),
        c11_edge_process_thresholds(p),
        c12_walk_cover_times(p),
        c13_scaling_window_exponent(p),
        c14_oracles(p),
    ]
}

pub fn all_passed(results: &[CriterionResult]) -> bool {
    results.iter().all(|r| r.passed)
}
