//! The `cohort-opt` binary: subcommands, exit codes and files written.

use std::path::Path;
use std::process::{Command, Output};

fn cli(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohort-opt"))
        .args(args)
        .current_dir(cwd)
        .env_remove("COHORT_OPT_OUT")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn list_shows_every_problem() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["list"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 23);
    assert!(text.lines().nth(1).unwrap().starts_with("G01"));

    let o = cli(
        &["list", "--filter", "inequality-only", "--json"],
        dir.path(),
    );
    assert!(o.status.success());
    let names: Vec<String> = json(&o)
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(names.len(), 23 - 6);
    for eq in ["G03", "G05", "G11", "G14", "G15", "G17"] {
        assert!(!names.iter().any(|n| n == eq), "{eq}");
    }
}

#[test]
fn run_g24_static() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(
        &["run", "G24", "--S", "1e3", "--seed", "7", "--json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert!((v["best"].as_f64().unwrap() + 5.508).abs() < 1e-3, "{v}");
    assert_eq!(v["feasible"], true);
    assert_eq!(v["converged"], true);
    assert_eq!(v["seed"], 7);
    assert_eq!(
        v["equality_violation"].as_f64().unwrap().to_bits(),
        0.0f64.to_bits()
    );
}

#[test]
fn run_g12_dynamic() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["run", "g12", "--scheme", "dynamic", "--json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["scheme"], "dynamic");
    assert!((v["best"].as_f64().unwrap() + 1.0).abs() < 1e-2, "{v}");
}

#[test]
fn run_with_trace_writes_one_row_per_candidate_attempt() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(
        &[
            "run",
            "G06",
            "--max-attempts",
            "30",
            "--trace",
            "t.csv",
            "--json",
        ],
        dir.path(),
    );
    let v = json(&o);
    let attempts = v["attempts"].as_u64().unwrap();
    let rows = csv::Reader::from_path(dir.path().join("t.csv"))
        .unwrap()
        .records()
        .count() as u64;
    assert_eq!(rows, attempts * 5);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // Budget exhausted before any saturation.
    let o = cli(&["run", "G24", "--max-attempts", "1"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("converged   false"));

    let o = cli(&["run", "G24", "--alpha", "2"], dir.path());
    assert_eq!(o.status.code(), Some(64));
    assert!(stderr(&o).contains("--scheme dynamic"));

    let o = cli(&["run", "G24", "--no-such-flag"], dir.path());
    assert_eq!(o.status.code(), Some(64));

    let o = cli(&["run", "G99"], dir.path());
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("G99"));

    let o = cli(&["run", "G24", "--reduction", "1.5"], dir.path());
    assert_eq!(o.status.code(), Some(64), "{}", stderr(&o));

    let o = cli(&["run", "--help"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let help = stdout(&o);
    for default in [
        "[default: 5]",
        "[default: 0.9]",
        "[default: 10]",
        "[default: 1000]",
    ] {
        assert!(help.contains(default), "{default} missing from\n{help}");
    }
}

#[test]
fn bench_writes_reports_and_plot_reads_a_trace() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(
        &[
            "bench",
            "--problems",
            "G24",
            "--runs",
            "3",
            "--out",
            "out",
            "--json",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let report = json(&o);
    assert_eq!(report["rows"][0]["problem"], "G24");
    let out = dir.path().join("out");
    for f in [
        "report.csv",
        "report.json",
        "runs.csv",
        "trace_G24_0.csv",
        "trace_G24_2.csv",
    ] {
        assert!(out.join(f).is_file(), "{f}");
    }

    let o = cli(
        &["plot", "out/trace_G24_0.csv", "--out", "p.svg"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let svg = std::fs::read_to_string(dir.path().join("p.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 5);

    std::fs::write(
        dir.path().join("empty.csv"),
        "attempt,candidate,f_q,f_raw,violation\n",
    )
    .unwrap();
    let o = cli(&["plot", "empty.csv", "--out", "e.svg"], dir.path());
    assert!(!o.status.success());
    assert!(stderr(&o).contains("empty"));
    assert!(!dir.path().join("e.svg").exists());
}

#[test]
fn bench_no_traces_and_env_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_cohort-opt"))
        .args(["bench", "--problems", "G08", "--runs", "1", "--no-traces"])
        .current_dir(dir.path())
        .env("COHORT_OPT_OUT", "from-env")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let out = dir.path().join("from-env");
    assert!(out.join("report.csv").is_file());
    assert!(!out.join("trace_G08_0.csv").exists());
}

#[test]
fn bad_config_lists_every_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("bad.json"),
        r#"{"runs": 0, "problems": ["G99"], "scheme": {"kind": "static", "S": -1}}"#,
    )
    .unwrap();
    let o = cli(&["bench", "bad.json"], dir.path());
    assert_eq!(o.status.code(), Some(64));
    let err = stderr(&o);
    for needle in ["runs", "G99", "S"] {
        assert!(err.contains(needle), "{needle} missing from\n{err}");
    }
    assert!(!dir.path().join("cohort-out").exists());

    let o = cli(&["bench", "--jobs", "0", "--problems", "G24"], dir.path());
    assert_eq!(o.status.code(), Some(64));
}
