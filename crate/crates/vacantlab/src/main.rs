//! vacantlab command-line interface.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation failure.
//! The environment variable VACANTLAB_THREADS caps the worker pool.

use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use vacantlab::graphgen::{self, export_edge_list};
use vacantlab::harness::report::{self, Format};
use vacantlab::harness::validate::{self, Profile};
use vacantlab::harness::{self, CheckpointSpec, ExperimentConfig};
use vacantlab::theory::{self, PredictionRecord, ThresholdObject, WalkModel};
use vacantlab::walks::{self, Clock, Start, WalkKind};

#[derive(Parser)]
#[command(
    name = "vacantlab",
    about = "Vacant sets and vacant nets of random walks on random regular graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Walk model: simple | nbw | edge
    #[arg(long, default_value = "simple")]
    model: String,
    /// Vertex degree r
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// Vertex count n
    #[arg(long, default_value_t = 100_000)]
    n: usize,
    /// Number of replica seeds
    #[arg(long, default_value_t = 10)]
    seeds: usize,
    /// First replica seed; replica i uses seed-base + i
    #[arg(long, default_value_t = 0)]
    seed_base: u64,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Output format: csv | jsonl
    #[arg(long, default_value = "csv")]
    format: String,
    /// Key-value file whose entries override the flags
    #[arg(long)]
    config: Option<PathBuf>,
    /// Restrict moment sums to locally tree-like vertices
    #[arg(long, default_value_t = false)]
    nice_only: bool,
    /// Checkpoint clock for the edge-process: total | red
    #[arg(long, default_value = "total")]
    clock: String,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a graph and export its canonical edge list
    Gen {
        #[command(flatten)]
        common: CommonOpts,
        /// Reject configurations until simple
        #[arg(long, default_value_t = false)]
        simple: bool,
        /// Write to this file instead of stdout
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Run a single trajectory with snapshots
    Walk {
        #[command(flatten)]
        common: CommonOpts,
        /// Number of steps
        #[arg(long, default_value_t = 1000)]
        steps: u64,
        /// Comma-separated explicit checkpoints (defaults to ten along the run)
        #[arg(long)]
        checkpoints: Option<String>,
        /// Dump one line per step: t from to edge color
        #[arg(long, default_value_t = false)]
        dump_trajectory: bool,
    },
    /// Print closed-form predictions as CSV rows
    Predict {
        #[command(flatten)]
        common: CommonOpts,
        /// Comma-separated step values for expected sizes
        #[arg(long)]
        t: Option<String>,
        /// Also print alternative constants that circulate with a
        /// different prefactor, for comparison
        #[arg(long, default_value_t = false)]
        show_discrepancies: bool,
    },
    /// Run a checkpointed Monte Carlo experiment and write reports
    Sweep {
        #[command(flatten)]
        common: CommonOpts,
        /// Comma-separated explicit checkpoints
        #[arg(long)]
        checkpoints: Option<String>,
        /// Threshold object for the default grid: set | net
        #[arg(long, default_value = "net")]
        object: String,
    },
    /// Locate the empirical threshold of an object
    Threshold {
        #[command(flatten)]
        common: CommonOpts,
        /// Object: set | net
        #[arg(long, default_value = "net")]
        object: String,
        /// Grid of threshold multiples lo:hi:count (default 0.5:1.5:11)
        #[arg(long, default_value = "0.5:1.5:11")]
        grid: String,
    },
    /// Normalized cover-time study over models, degrees and sizes
    Cover {
        #[command(flatten)]
        common: CommonOpts,
        /// Comma-separated models (default: all three)
        #[arg(long, default_value = "simple,nbw,edge")]
        models: String,
        /// Comma-separated degrees
        #[arg(long, default_value = "3,4,5,6")]
        r_list: String,
        /// Comma-separated sizes
        #[arg(long, default_value = "10000,100000")]
        n_list: String,
        /// Budget multiplier on r n ln n
        #[arg(long, default_value_t = 10.0)]
        budget_factor: f64,
    },
    /// Run the validation suite
    Validate {
        #[command(flatten)]
        common: CommonOpts,
        /// Profile: quick | full
        #[arg(long, default_value = "full")]
        profile: String,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

/// Applies `key = value` lines from the config file over the parsed flags.
fn apply_config_file(common: &mut CommonOpts) -> Result<(), String> {
    let Some(path) = &common.config else {
        return Ok(());
    };
    let text = std::fs::read_to_string(path).map_err(|e| format!("config file: {e}"))?;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let parse_err = |e: String| format!("config line {}: {e}", lineno + 1);
        match key {
            "model" => common.model = value.to_string(),
            "r" => common.r = value.parse().map_err(|e| parse_err(format!("{e}")))?,
            "n" => common.n = value.parse().map_err(|e| parse_err(format!("{e}")))?,
            "seeds" => common.seeds = value.parse().map_err(|e| parse_err(format!("{e}")))?,
            "seed_base" => {
                common.seed_base = value.parse().map_err(|e| parse_err(format!("{e}")))?
            }
            "out" => common.out = PathBuf::from(value),
            "format" => common.format = value.to_string(),
            "nice_only" => {
                common.nice_only = value.parse().map_err(|e| parse_err(format!("{e}")))?
            }
            "clock" => common.clock = value.to_string(),
            other => return Err(format!("config line {}: unknown key {other}", lineno + 1)),
        }
    }
    Ok(())
}

struct Resolved {
    kind: WalkKind,
    clock: Clock,
    format: Format,
}

fn resolve(common: &CommonOpts) -> Result<Resolved, String> {
    let kind = WalkKind::parse(&common.model)
        .ok_or_else(|| format!("unknown model {:?} (simple | nbw | edge)", common.model))?;
    let clock = Clock::parse(&common.clock)
        .ok_or_else(|| format!("unknown clock {:?} (total | red)", common.clock))?;
    let format = Format::parse(&common.format)
        .ok_or_else(|| format!("unknown format {:?} (csv | jsonl)", common.format))?;
    Ok(Resolved {
        kind,
        clock,
        format,
    })
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse::<T>()
                .map_err(|_| format!("bad {what} entry {p:?}"))
        })
        .collect()
}

fn build_experiment(common: &CommonOpts, res: &Resolved) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(
        res.kind,
        common.r,
        common.n,
        ExperimentConfig::seed_range(common.seed_base, common.seeds),
    );
    cfg.clock = res.clock;
    cfg.nice_only = common.nice_only;
    cfg
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    harness::init_thread_pool();
    match cli.command {
        Command::Gen {
            mut common,
            simple,
            graph_out,
        } => {
            apply_config_file(&mut common)?;
            let g = if simple {
                graphgen::sample_simple_regular(common.n, common.r, common.seed_base, 100_000)
                    .map_err(|e| e.to_string())?
                    .0
            } else {
                graphgen::sample_regular_configuration(common.n, common.r, common.seed_base)
                    .map_err(|e| e.to_string())?
            };
            match graph_out {
                Some(path) => {
                    let mut file = std::fs::File::create(&path).map_err(|e| e.to_string())?;
                    export_edge_list(&g, &mut file).map_err(|e| e.to_string())?;
                    eprintln!("wrote {} edges to {}", g.m(), path.display());
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    export_edge_list(&g, &mut lock).map_err(|e| e.to_string())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Walk {
            mut common,
            steps,
            checkpoints,
            dump_trajectory,
        } => {
            apply_config_file(&mut common)?;
            let res = resolve(&common)?;
            let g =
                graphgen::sample_regular_configuration(common.n, common.r, common.seed_base)
                    .map_err(|e| e.to_string())?;
            let (mut state, mut tracker) =
                walks::init_walk(&g, res.kind, Start::Uniform, common.seed_base)
                    .map_err(|e| e.to_string())?;
            std::fs::create_dir_all(&common.out).map_err(|e| e.to_string())?;

            let mut trajectory = if dump_trajectory {
                Some(
                    std::fs::File::create(common.out.join("trajectory.txt"))
                        .map_err(|e| e.to_string())?,
                )
            } else {
                None
            };
            let mut cps: Vec<u64> = match checkpoints {
                Some(s) => parse_list(&s, "checkpoint")?,
                None => (0..=10).map(|k| k * steps / 10).collect(),
            };
            cps.sort_unstable();
            cps.dedup();

            let max_degree = g.max_degree();
            let mut snapshots = Vec::new();
            let mut next_cp = 0usize;
            while next_cp < cps.len() {
                while state.t < cps[next_cp] {
                    let rec = walks::step(&mut state, &mut tracker, &g);
                    if let Some(f) = trajectory.as_mut() {
                        writeln!(
                            f,
                            "{} {} {} {} {}",
                            state.t,
                            rec.from,
                            rec.to,
                            rec.edge,
                            match rec.color {
                                walks::Color::Red => "red",
                                walks::Color::Blue => "blue",
                            }
                        )
                        .map_err(|e| e.to_string())?;
                    }
                }
                snapshots.push((
                    state.t,
                    tracker.visited_vertex_count(),
                    tracker.visited_edge_count(),
                    tracker.red_degree_histogram(max_degree),
                ));
                next_cp += 1;
            }

            let mut s = String::from("t,visited_vertices,visited_edges");
            for k in 0..=max_degree {
                s.push_str(&format!(",d{k}"));
            }
            s.push('\n');
            for (t, b, e, hist) in &snapshots {
                s.push_str(&format!("{t},{b},{e}"));
                for c in hist {
                    s.push_str(&format!(",{c}"));
                }
                s.push('\n');
            }
            std::fs::write(common.out.join("snapshots.csv"), s).map_err(|e| e.to_string())?;
            eprintln!(
                "walk of {} steps complete: |B| = {}, |S| = {}",
                state.t,
                tracker.visited_vertex_count(),
                tracker.visited_edge_count()
            );
            Ok(ExitCode::SUCCESS)
        }

        Command::Predict {
            mut common,
            t,
            show_discrepancies,
        } => {
            apply_config_file(&mut common)?;
            let res = resolve(&common)?;
            let model = WalkModel::new(res.kind, common.r).map_err(|e| e.to_string())?;
            let t_values: Vec<f64> = match t {
                Some(s) => parse_list(&s, "t")?,
                None => vec![],
            };
            let records: Vec<PredictionRecord> = theory::standard_predictions(
                &model,
                Some(common.n as f64),
                &t_values,
                show_discrepancies,
            )
            .map_err(|e| e.to_string())?;
            println!("{}", PredictionRecord::csv_header());
            for rec in records {
                println!("{}", rec.to_csv_row());
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Sweep {
            mut common,
            checkpoints,
            object,
        } => {
            apply_config_file(&mut common)?;
            let res = resolve(&common)?;
            let mut cfg = build_experiment(&common, &res);
            let object = match object.as_str() {
                "set" => ThresholdObject::VacantSet,
                "net" => ThresholdObject::VacantNet,
                other => return Err(format!("unknown object {other:?} (set | net)")),
            };
            cfg.checkpoints = match checkpoints {
                Some(s) => CheckpointSpec::Explicit(parse_list(&s, "checkpoint")?),
                None => CheckpointSpec::default_grid(object),
            };
            let report = harness::run_experiment(&cfg).map_err(|e| e.to_string())?;
            report::write_experiment_report(&report, &common.out, res.format)
                .map_err(|e| e.to_string())?;
            let failures = report.replica_failures.len();
            eprintln!(
                "sweep complete: {} checkpoints, {} replicas ok, {} failed; reports in {}",
                report.checkpoints.len(),
                common.seeds - failures,
                failures,
                common.out.display()
            );
            Ok(ExitCode::SUCCESS)
        }

        Command::Threshold {
            mut common,
            object,
            grid,
        } => {
            apply_config_file(&mut common)?;
            let res = resolve(&common)?;
            let cfg = build_experiment(&common, &res);
            let object = match object.as_str() {
                "set" => ThresholdObject::VacantSet,
                "net" => ThresholdObject::VacantNet,
                other => return Err(format!("unknown object {other:?} (set | net)")),
            };
            let parts: Vec<&str> = grid.split(':').collect();
            if parts.len() != 3 {
                return Err("grid must be lo:hi:count".into());
            }
            let lo: f64 = parts[0].parse().map_err(|_| "bad grid lo")?;
            let hi: f64 = parts[1].parse().map_err(|_| "bad grid hi")?;
            let count: usize = parts[2].parse().map_err(|_| "bad grid count")?;
            if count < 2 || hi <= lo {
                return Err("grid needs hi > lo and count >= 2".into());
            }
            let model = WalkModel::new(res.kind, common.r).map_err(|e| e.to_string())?;
            let theta_n =
                theory::threshold(&model, object).map_err(|e| e.to_string())? * common.n as f64;
            let t_grid: Vec<u64> = (0..count)
                .map(|i| {
                    let mult = lo + (hi - lo) * i as f64 / (count - 1) as f64;
                    (mult * theta_n).round() as u64
                })
                .collect();
            let scan =
                harness::threshold_scan(&cfg, object, &t_grid).map_err(|e| e.to_string())?;
            report::write_threshold_report(&scan, &common.out, res.format)
                .map_err(|e| e.to_string())?;
            println!(
                "object {}: Q crossing {:.1} (CI {:.1}..{:.1}), predicted {:.1}",
                scan.object,
                scan.q_crossing.mean,
                scan.q_crossing.ci_lo,
                scan.q_crossing.ci_hi,
                scan.predicted_step
            );
            Ok(ExitCode::SUCCESS)
        }

        Command::Cover {
            mut common,
            models,
            r_list,
            n_list,
            budget_factor,
        } => {
            apply_config_file(&mut common)?;
            let res = resolve(&common)?;
            let kinds: Vec<WalkKind> = models
                .split(',')
                .map(|m| {
                    WalkKind::parse(m.trim()).ok_or_else(|| format!("unknown model {m:?}"))
                })
                .collect::<Result<_, _>>()?;
            let rs: Vec<usize> = parse_list(&r_list, "r")?;
            let ns: Vec<usize> = parse_list(&n_list, "n")?;
            let seeds = ExperimentConfig::seed_range(common.seed_base, common.seeds);
            let rows = harness::cover_time_study(&kinds, &rs, &ns, &seeds, budget_factor)
                .map_err(|e| e.to_string())?;
            report::write_cover_report(&rows, &common.out, res.format)
                .map_err(|e| e.to_string())?;
            for row in &rows {
                println!(
                    "{} r={} n={}: T_V/n = {:.3}, T_V/(n ln n) = {:.4}, T_E/(n ln n) = {:.4}",
                    row.model, row.r, row.n, row.vertex_over_n, row.vertex_over_nlogn,
                    row.edge_over_nlogn
                );
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Validate { mut common, profile } => {
            apply_config_file(&mut common)?;
            let profile =
                Profile::parse(&profile).ok_or_else(|| format!("unknown profile {profile:?}"))?;
            let results = validate::run_profile(&profile);
            for res in &results {
                println!("{}", res.line());
            }
            if validate::all_passed(&results) {
                println!("validation ({}) passed", profile.name);
                Ok(ExitCode::SUCCESS)
            } else {
                println!("validation ({}) FAILED", profile.name);
                Ok(ExitCode::from(2))
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => usage_error(&msg),
    }
}
