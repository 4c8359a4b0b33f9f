//! End-to-end checks of the command-line interface.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vacantlab"))
}

#[test]
fn gen_exports_k4_canonically() {
    let out = bin()
        .args(["gen", "--n", "4", "--r", "3", "--simple", "--seed-base", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"
    );
}

#[test]
fn predict_prints_csv_schema() {
    let out = bin()
        .args(["predict", "--model", "simple", "--r", "3", "--n", "1000"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("model,quantity,r,n,t,value"));
    let set_line = text
        .lines()
        .find(|l| l.starts_with("simple,threshold_set"))
        .expect("threshold row present");
    let value: f64 = set_line.rsplit(',').next().unwrap().parse().unwrap();
    assert!((value - 6.0 * 2.0f64.ln()).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_1() {
    // Odd-degree edge-process predictions are refused.
    let out = bin()
        .args(["predict", "--model", "edge", "--r", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = bin()
        .args(["sweep", "--model", "bogus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn config_file_overrides_flags() {
    let dir = std::env::temp_dir().join("vacantlab_cli_cfg");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("lab.conf");
    std::fs::write(&cfg, "n = 4\nseed_base = 3\n").unwrap();
    let out = bin()
        .args(["gen", "--n", "1000", "--r", "3", "--simple"])
        .arg("--config")
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("4 3\n"), "config n did not apply: {text}");
}

#[test]
fn walk_writes_snapshot_stream() {
    let dir = std::env::temp_dir().join("vacantlab_cli_walk");
    let out = bin()
        .args([
            "walk",
            "--model",
            "edge",
            "--r",
            "4",
            "--n",
            "500",
            "--steps",
            "600",
            "--dump-trajectory",
        ])
        .arg("--out")
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let snaps = std::fs::read_to_string(dir.join("snapshots.csv")).unwrap();
    assert!(snaps.starts_with("t,visited_vertices,visited_edges,d0,d1,d2,d3,d4\n"));
    let traj = std::fs::read_to_string(dir.join("trajectory.txt")).unwrap();
    let first = traj.lines().next().unwrap();
    let fields: Vec<&str> = first.split_whitespace().collect();
    assert_eq!(fields.len(), 5);
    assert_eq!(fields[0], "1");
    assert!(fields[4] == "red" || fields[4] == "blue");
}
