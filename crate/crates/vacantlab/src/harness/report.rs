//! Schema-stable CSV and JSONL report files.

use super::{AggregateReport, CoverStudyRow, ThresholdScan};
use crate::error::Result;
use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// Output file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Self::Csv),
            "jsonl" => Some(Self::Jsonl),
            _ => None,
        }
    }

    pub fn extension(&self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Jsonl => "jsonl",
        }
    }
}

fn write_jsonl<T: Serialize>(rows: &[T], path: &Path) -> Result<()> {
    let mut out = String::new();
    for row in rows {
        out.push_str(&serde_json::to_string(row).expect("report rows serialize"));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

fn write_file(dir: &Path, name: &str, contents: String) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), contents)?;
    Ok(())
}

/// Writes aggregate.{csv,jsonl}, comparisons.*, components_set.*,
/// components_net.*, phases.*, and hist_means.* under `dir`.
pub fn write_experiment_report(report: &AggregateReport, dir: &Path, format: Format) -> Result<()> {
    fs::create_dir_all(dir)?;
    match format {
        Format::Jsonl => {
            write_jsonl(&report.rows, &dir.join("aggregate.jsonl"))?;
            write_jsonl(&report.comparisons, &dir.join("comparisons.jsonl"))?;
            write_jsonl(&report.phase_counts, &dir.join("phases.jsonl"))?;
            write_jsonl(&report.histograms, &dir.join("hist_means.jsonl"))?;
            write_components(report, dir, format)?;
        }
        Format::Csv => {
            let mut s = String::from("t,quantity,mean,stddev,min,max,median,samples\n");
            for r in &report.rows {
                writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    r.t, r.quantity, r.mean, r.stddev, r.min, r.max, r.median, r.samples
                )
                .unwrap();
            }
            write_file(dir, "aggregate.csv", s)?;

            let mut s = String::from(
                "quantity,t,empirical_mean,predicted,relative_error,tolerance,pass\n",
            );
            for c in &report.comparisons {
                writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    c.quantity,
                    c.t,
                    c.empirical_mean,
                    c.predicted,
                    c.relative_error,
                    c.tolerance,
                    c.pass
                )
                .unwrap();
            }
            write_file(dir, "comparisons.csv", s)?;

            let mut s = String::from("t,object,subcritical,supercritical,window\n");
            for p in &report.phase_counts {
                writeln!(
                    s,
                    "{},{},{},{},{}",
                    p.t, p.object, p.subcritical, p.supercritical, p.window
                )
                .unwrap();
            }
            write_file(dir, "phases.csv", s)?;

            let width = report
                .histograms
                .first()
                .map(|h| h.mean_counts.len())
                .unwrap_or(0);
            let mut s = String::from("t");
            for k in 0..width {
                write!(s, ",d{k}").unwrap();
            }
            s.push('\n');
            for h in &report.histograms {
                write!(s, "{}", h.t).unwrap();
                for v in &h.mean_counts {
                    write!(s, ",{v}").unwrap();
                }
                s.push('\n');
            }
            write_file(dir, "hist_means.csv", s)?;
            write_components(report, dir, format)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ComponentRow {
    t: u64,
    c1: f64,
    c2: f64,
    components: f64,
    subgraph_vertices: f64,
    subgraph_edges: f64,
    l: f64,
    q: f64,
    r_stat: f64,
}

fn component_rows(report: &AggregateReport, object: &str) -> Vec<ComponentRow> {
    let mean_of = |t: u64, quantity: &str| -> f64 {
        report
            .rows
            .iter()
            .find(|r| r.t == t && r.quantity == quantity)
            .map(|r| r.mean)
            .unwrap_or(f64::NAN)
    };
    report
        .checkpoints
        .iter()
        .map(|&t| {
            let prefix = |suffix: &str| format!("{object}_{suffix}");
            ComponentRow {
                t,
                c1: mean_of(t, &prefix("c1")),
                c2: mean_of(t, &prefix("c2")),
                components: mean_of(t, &prefix("components")),
                subgraph_vertices: if object == "set" {
                    mean_of(t, "vacant_set_size")
                } else {
                    mean_of(t, "net_vertices")
                },
                subgraph_edges: if object == "set" {
                    mean_of(t, "vacant_set_edges")
                } else {
                    mean_of(t, "vacant_net_edges")
                },
                l: mean_of(t, &prefix("l")),
                q: mean_of(t, &prefix("q")),
                r_stat: if object == "net" {
                    mean_of(t, "net_r_stat")
                } else {
                    f64::NAN
                },
            }
        })
        .collect()
}

fn write_components(report: &AggregateReport, dir: &Path, format: Format) -> Result<()> {
    for object in ["set", "net"] {
        let rows = component_rows(report, object);
        let name = format!("components_{object}.{}", format.extension());
        match format {
            Format::Jsonl => write_jsonl(&rows, &dir.join(name))?,
            Format::Csv => {
                let mut s = String::from(
                    "t,C1,C2,components,subgraph_vertices,subgraph_edges,L,Q,R_stat\n",
                );
                for r in rows {
                    writeln!(
                        s,
                        "{},{},{},{},{},{},{},{},{}",
                        r.t,
                        r.c1,
                        r.c2,
                        r.components,
                        r.subgraph_vertices,
                        r.subgraph_edges,
                        r.l,
                        r.q,
                        r.r_stat
                    )
                    .unwrap();
                }
                write_file(dir, &name, s)?;
            }
        }
    }
    Ok(())
}

/// Writes the threshold-scan summary.
pub fn write_threshold_report(scan: &ThresholdScan, dir: &Path, format: Format) -> Result<()> {
    fs::create_dir_all(dir)?;
    match format {
        Format::Jsonl => write_jsonl(std::slice::from_ref(scan), &dir.join("threshold.jsonl")),
        Format::Csv => {
            let mut s =
                String::from("object,predicted_step,q_crossing,q_ci_lo,q_ci_hi,collapse,collapse_ci_lo,collapse_ci_hi\n");
            let (c, clo, chi) = match &scan.collapse {
                Some(c) => (c.mean, c.ci_lo, c.ci_hi),
                None => (f64::NAN, f64::NAN, f64::NAN),
            };
            writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                scan.object,
                scan.predicted_step,
                scan.q_crossing.mean,
                scan.q_crossing.ci_lo,
                scan.q_crossing.ci_hi,
                c,
                clo,
                chi
            )
            .unwrap();
            write_file(dir, "threshold.csv", s)
        }
    }
}

/// Writes the cover-time study table.
pub fn write_cover_report(rows: &[CoverStudyRow], dir: &Path, format: Format) -> Result<()> {
    fs::create_dir_all(dir)?;
    match format {
        Format::Jsonl => write_jsonl(rows, &dir.join("cover.jsonl")),
        Format::Csv => {
            let mut s = String::from(
                "model,r,n,seeds,mean_vertex,vertex_over_n,vertex_over_nlogn,mean_edge,edge_over_n,edge_over_nlogn,vertex_unreached,edge_unreached\n",
            );
            for r in rows {
                writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    r.model,
                    r.r,
                    r.n,
                    r.seeds,
                    r.mean_vertex,
                    r.vertex_over_n,
                    r.vertex_over_nlogn,
                    r.mean_edge,
                    r.edge_over_n,
                    r.edge_over_nlogn,
                    r.vertex_unreached,
                    r.edge_unreached
                )
                .unwrap();
            }
            write_file(dir, "cover.csv", s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{CheckpointSpec, ExperimentConfig};
    use crate::walks::WalkKind;

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let mut cfg = ExperimentConfig::new(WalkKind::Simple, 3, 300, vec![1, 2, 3]);
        cfg.checkpoints = CheckpointSpec::Explicit(vec![0, 50, 200]);
        let dir1 = std::env::temp_dir().join("vacantlab_report_a");
        let dir2 = std::env::temp_dir().join("vacantlab_report_b");
        for format in [Format::Csv, Format::Jsonl] {
            let rep1 = crate::harness::run_experiment(&cfg).unwrap();
            write_experiment_report(&rep1, &dir1, format).unwrap();
            let rep2 = crate::harness::run_experiment(&cfg).unwrap();
            write_experiment_report(&rep2, &dir2, format).unwrap();
            let name = format!("aggregate.{}", format.extension());
            let a = std::fs::read(dir1.join(&name)).unwrap();
            let b = std::fs::read(dir2.join(&name)).unwrap();
            assert!(!a.is_empty());
            assert_eq!(a, b);
        }
    }
}
