//! End-to-end checks of the command-line interface: subcommands, config
//! overrides, output layout, and the documented exit codes (0 success,
//! 1 validation error, 2 I/O error).

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const QMM_SCENARIO: &str = "model = qmm\nn = 20\nlambda = 0.5\nmu = 1.0\nspeed = 0.5\nsteps = 50\nsnapshot_steps = 0,50\nseed = 3\n";

fn manet_sim(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_manet-sim"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn write_scenario(dir: &Path, contents: &str) -> String {
    let path = dir.join("scenario.cfg");
    fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn simulate_writes_artifacts_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_scenario(dir.path(), QMM_SCENARIO);
    let out = manet_sim(
        &["simulate", "--config", &cfg, "--out-dir", "run"],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("trace.csv"));
    assert!(stdout.contains("mean_in_system"));
    for name in [
        "trace.csv",
        "snapshot_0.csv",
        "snapshot_50.csv",
        "report.txt",
    ] {
        assert!(dir.path().join("run").join(name).exists(), "{name} missing");
    }
}

#[test]
fn simulate_is_deterministic_and_seed_override_changes_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_scenario(dir.path(), QMM_SCENARIO);
    assert!(manet_sim(
        &["simulate", "--config", &cfg, "--out-dir", "a"],
        dir.path()
    )
    .status
    .success());
    assert!(manet_sim(
        &["simulate", "--config", &cfg, "--out-dir", "b"],
        dir.path()
    )
    .status
    .success());
    assert!(manet_sim(
        &[
            "simulate",
            "--config",
            &cfg,
            "--out-dir",
            "c",
            "--seed",
            "99"
        ],
        dir.path()
    )
    .status
    .success());
    let read = |d: &str| fs::read(dir.path().join(d).join("trace.csv")).unwrap();
    assert_eq!(read("a"), read("b"), "same seed must give identical traces");
    assert_ne!(read("a"), read("c"), "different seed must change the trace");
}

#[test]
fn overrides_replace_config_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_scenario(
        dir.path(),
        "model = qmm\nn = 20\nlambda = 0.5\nmu = 1.0\nspeed = 0.5\nsteps = 50\nseed = 3\n",
    );
    let out = manet_sim(
        &[
            "simulate",
            "--config",
            &cfg,
            "--out-dir",
            "run",
            "--model",
            "rwm",
            "--nodes",
            "7",
            "--steps",
            "5",
            "--step-model",
            "symmetric",
            "--boundary",
            "clamp",
            "--gated",
            "false",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = fs::read_to_string(dir.path().join("run/report.txt")).unwrap();
    assert!(report.contains("model = rwm"));
    assert!(report.contains("n = 7"));
    assert!(report.contains("steps = 5"));
    assert!(report.contains("step_model = symmetric"));
    assert!(report.contains("boundary = clamp"));
    // RWM reports omit the queue metrics
    assert!(!report.contains("mean_in_system"));
}

#[test]
fn validation_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    // negative rate
    let bad = write_scenario(dir.path(), "model = qmm\nn = 5\nlambda = -1\nmu = 1.0\n");
    let out = manet_sim(&["simulate", "--config", &bad], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lambda"));

    // unknown key
    fs::write(
        dir.path().join("unknown.cfg"),
        "model = rwm\nn = 5\nwat = 1\n",
    )
    .unwrap();
    let out = manet_sim(&["simulate", "--config", "unknown.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("wat"));

    // bad CLI flag value
    let cfg = write_scenario(dir.path(), QMM_SCENARIO);
    let out = manet_sim(
        &["simulate", "--config", &cfg, "--model", "warp"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn io_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    // missing config file
    let out = manet_sim(&["simulate", "--config", "nope.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope.cfg"));

    // out-dir nested under a regular file cannot be created
    let cfg = write_scenario(dir.path(), QMM_SCENARIO);
    fs::write(dir.path().join("blocker"), "x").unwrap();
    let out = manet_sim(
        &["simulate", "--config", &cfg, "--out-dir", "blocker/run"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pmf_subcommand_writes_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = manet_sim(
        &[
            "pmf",
            "--lambdas",
            "0.3,0.4,0.5,0.8,0.9",
            "--t",
            "20",
            "--nmax",
            "40",
            "--out",
            "pmf.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let table = fs::read_to_string(dir.path().join("pmf.csv")).unwrap();
    let mut lines = table.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,lambda_0.3,lambda_0.4,lambda_0.5,lambda_0.8,lambda_0.9"
    );
    assert_eq!(lines.count(), 41);

    let out = manet_sim(
        &["pmf", "--lambdas", "0.3,-1", "--t", "20", "--nmax", "5"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn batch_sweeps_rates_and_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_scenario(dir.path(), QMM_SCENARIO);
    let out = manet_sim(
        &[
            "batch",
            "--config",
            &cfg,
            "--lambdas",
            "0.3,0.5",
            "--seeds",
            "2",
            "--out-dir",
            "sweep",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("4 of 4 runs succeeded"));
    for cell in [
        "lambda_0.3_seed_3",
        "lambda_0.3_seed_4",
        "lambda_0.5_seed_3",
        "lambda_0.5_seed_4",
    ] {
        assert!(
            dir.path()
                .join("sweep")
                .join(cell)
                .join("report.txt")
                .exists(),
            "{cell} missing"
        );
    }
    let summary = fs::read_to_string(dir.path().join("sweep/batch_summary.txt")).unwrap();
    assert_eq!(summary.lines().count(), 5);
    assert_eq!(summary.lines().filter(|l| l.ends_with(",ok")).count(), 4);

    let out = manet_sim(
        &[
            "batch",
            "--config",
            &cfg,
            "--lambdas",
            "0.3",
            "--seeds",
            "0",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = manet_sim(&["--help"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let out = manet_sim(&[], dir.path());
    assert_eq!(out.status.code(), Some(1));
}
