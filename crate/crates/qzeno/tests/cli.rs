//! End-to-end tests of the `qzeno` binary: file outputs, exit codes,
//! manifest replay, and the chained-run and sweep table formats.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn qzeno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzeno"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("reading {name}: {e}"))
}

/// Parses one CSV cell as f64, by (1-based) data row and column name.
fn csv_cell(csv: &str, row: usize, column: &str) -> f64 {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().expect("header").split(',').collect();
    let col = header
        .iter()
        .position(|&h| h == column)
        .unwrap_or_else(|| panic!("no column {column}"));
    let line = lines.nth(row - 1).unwrap_or_else(|| panic!("no row {row}"));
    line.split(',').nth(col).unwrap().parse().unwrap()
}

#[test]
fn state_sigma_alpha_writes_reference_matrix() {
    let dir = TempDir::new().unwrap();
    let out = qzeno(&["state", "sigma-alpha", "--alpha", "4", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = read(dir.path(), "sigma_alpha.txt");
    let zero = "0.000000+0.000000i";
    let corner = "0.095238+0.000000i";
    let expected_first_row = [corner, zero, zero, zero, corner, zero, zero, zero, corner].join(" ");
    assert_eq!(text.lines().next().unwrap(), expected_first_row);
    let row1: Vec<&str> = text.lines().nth(1).unwrap().split(' ').collect();
    assert_eq!(row1[1], "0.190476+0.000000i");
    assert_eq!(text.lines().count(), 9);
    let manifest = read(dir.path(), "manifest.txt");
    assert!(manifest.contains("sigma_alpha.txt"));
}

#[test]
fn state_psi_plus_writes_amplitudes() {
    let dir = TempDir::new().unwrap();
    let out = qzeno(&["state", "psi-plus", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = read(dir.path(), "psi_plus.txt");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[0], "0.577350+0.000000i");
    assert_eq!(lines[1], "0.000000+0.000000i");
}

#[test]
fn parameter_range_and_parse_errors_have_distinct_exit_codes() {
    let dir = TempDir::new().unwrap();
    let dir_arg = dir.path().to_str().unwrap();

    // Out-of-range parameter: exit 3.
    let out = qzeno(&["state", "sigma-free", "--F", "1.5", "--out-dir", dir_arg]);
    assert_eq!(out.status.code(), Some(3));

    // Missing required state parameter: exit 2.
    let out = qzeno(&["state", "sigma-alpha", "--out-dir", dir_arg]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown config key: exit 2.
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "F = 0.3\nwhatever = 1\n").unwrap();
    let out = qzeno(&["run", "--config", bad.to_str().unwrap(), "--out-dir", dir_arg]);
    assert_eq!(out.status.code(), Some(2));

    // Valid syntax, out-of-range value: exit 3.
    let range = dir.path().join("range.txt");
    fs::write(
        &range,
        "F = 1.5\nalpha = 4\ntheta = 0.01\ni_alice = 0\nj_alice = 1\ni_bob = 0\nj_bob = 1\nk = 5\noutcome_a = 1\noutcome_b = 1\n",
    )
    .unwrap();
    let out = qzeno(&["run", "--config", range.to_str().unwrap(), "--out-dir", dir_arg]);
    assert_eq!(out.status.code(), Some(3));
}

fn reference_config_text() -> String {
    let config = qzeno::cli::RunConfig {
        protocol: qzeno::zeno::ProtocolConfig::default(),
        rounds: 1,
    };
    qzeno::cli::render_run_config(&config)
}

#[test]
fn run_with_single_iteration_reports_the_one_step_fidelity() {
    let dir = TempDir::new().unwrap();
    let config = dir.path().join("config.txt");
    fs::write(&config, reference_config_text()).unwrap();
    let out = qzeno(&[
        "run",
        "--config",
        config.to_str().unwrap(),
        "--k",
        "1",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let trajectory = read(dir.path(), "trajectory.csv");
    assert_eq!(
        trajectory.lines().next().unwrap(),
        "k,negativity,fidelity,cumulative_probability"
    );
    assert_eq!(trajectory.lines().count(), 2);
    let fidelity = csv_cell(&trajectory, 1, "fidelity");
    assert!((fidelity - 0.307696).abs() < 5e-6, "fidelity {fidelity}");

    // Final state file carries the one-iteration matrix at six decimals.
    let final_state = read(dir.path(), "final_state.txt");
    let row4: Vec<&str> = final_state.lines().nth(4).unwrap().split(' ').collect();
    assert_eq!(row4[4], "0.230895+0.000000i");
    assert_eq!(row4[8], "0.230731+0.000000i");

    // The manifest names every emitted file.
    let manifest = read(dir.path(), "manifest.txt");
    for file in ["trajectory.csv", "final_state.txt", "rounds.csv"] {
        assert!(manifest.contains(file), "manifest misses {file}");
    }
}

#[test]
fn chained_run_reproduces_the_reference_table() {
    let dir = TempDir::new().unwrap();
    let config = dir.path().join("config.txt");
    fs::write(&config, reference_config_text()).unwrap();
    let out = qzeno(&[
        "run",
        "--config",
        config.to_str().unwrap(),
        "--rounds",
        "5",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rounds = read(dir.path(), "rounds.csv");
    assert_eq!(rounds.lines().count(), 7); // header + input + 5 rounds

    // Tabulated reference rows live at chain rounds 0, 1, 2, 4, 5.
    let expected = [
        (0, 0.110977, 0.3),
        (1, 0.171195, 0.411667),
        (2, 0.269747, 0.500432),
        (4, 0.400867, 0.599635),
        (5, 0.422634, 0.614989),
    ];
    for (round, neg, fid) in expected {
        let got_neg = csv_cell(&rounds, round + 1, "negativity");
        let got_fid = csv_cell(&rounds, round + 1, "fidelity");
        assert!((got_neg - neg).abs() < 5e-6, "round {round} negativity {got_neg}");
        assert!((got_fid - fid).abs() < 5e-6, "round {round} fidelity {got_fid}");
    }

    for round in 1..=5 {
        assert!(dir.path().join(format!("trajectory_round{round}.csv")).exists());
    }
    let final_state = read(dir.path(), "final_state.txt");
    let row4: Vec<&str> = final_state.lines().nth(4).unwrap().split(' ').collect();
    assert_eq!(row4[4], "0.366066+0.000000i");
}

#[test]
fn manifest_replays_to_identical_outputs() {
    let dir_a = TempDir::new().unwrap();
    let dir_b = TempDir::new().unwrap();
    let config = dir_a.path().join("config.txt");
    fs::write(&config, reference_config_text()).unwrap();
    let out = qzeno(&[
        "run",
        "--config",
        config.to_str().unwrap(),
        "--k",
        "40",
        "--out-dir",
        dir_a.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());

    // The manifest echoes the effective configuration (including the --k
    // override) and replays through --config directly.
    let manifest = dir_a.path().join("manifest.txt");
    let out = qzeno(&[
        "run",
        "--config",
        manifest.to_str().unwrap(),
        "--out-dir",
        dir_b.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    for file in ["trajectory.csv", "final_state.txt", "rounds.csv", "manifest.txt"] {
        assert_eq!(
            fs::read(dir_a.path().join(file)).unwrap(),
            fs::read(dir_b.path().join(file)).unwrap(),
            "{file} differs after manifest replay"
        );
    }
}

#[test]
fn sweep_writes_full_table_and_replayable_best_config() {
    let dir = TempDir::new().unwrap();
    let spec = dir.path().join("spec.txt");
    fs::write(&spec, "pairs = 0,1;1,0\nk_max = 12\n").unwrap();
    let dir_arg = dir.path().to_str().unwrap();
    let out = qzeno(&["sweep", "--spec", spec.to_str().unwrap(), "--out-dir", dir_arg]);
    assert!(out.status.success());

    let table = read(dir.path(), "sweep_table.csv");
    assert_eq!(
        table.lines().next().unwrap(),
        "i,j,k,outcome_a,outcome_b,negativity,fidelity,probability"
    );
    assert_eq!(table.lines().count(), 1 + 2 * 12 * 9);

    let best = read(dir.path(), "best_config.txt");
    let parsed = qzeno::cli::parse_run_config(&best).unwrap();
    assert!(parsed.protocol.iterations >= 1 && parsed.protocol.iterations <= 12);

    // Serial execution and a re-run both produce identical bytes.
    let dir_serial = TempDir::new().unwrap();
    let out = qzeno(&[
        "sweep",
        "--spec",
        spec.to_str().unwrap(),
        "--serial",
        "--out-dir",
        dir_serial.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(table, read(dir_serial.path(), "sweep_table.csv"));
    assert_eq!(best, read(dir_serial.path(), "best_config.txt"));
}

#[test]
fn baseline_emits_the_recursion_table() {
    let dir = TempDir::new().unwrap();
    let dir_arg = dir.path().to_str().unwrap();
    let out = qzeno(&["baseline", "--F0", "0.3", "--alpha", "4", "--rounds", "2", "--out-dir", dir_arg]);
    assert!(out.status.success());
    let csv = read(dir.path(), "baseline.csv");
    assert_eq!(
        csv.lines().next().unwrap(),
        "round,fidelity,success_probability,cumulative_probability"
    );
    assert!((csv_cell(&csv, 1, "fidelity") - 0.46).abs() < 5e-3);
    assert!((csv_cell(&csv, 2, "fidelity") - 0.63).abs() < 5e-3);

    // Cumulative column is the running product of the per-round column.
    let mut product = 1.0;
    for row in 1..=2 {
        product *= csv_cell(&csv, row, "success_probability");
        let cumulative = csv_cell(&csv, row, "cumulative_probability");
        assert!((cumulative - product).abs() < 1e-12);
    }

    // The alpha = 3 fixed point keeps the fidelity column constant.
    let dir_fixed = TempDir::new().unwrap();
    let out = qzeno(&[
        "baseline",
        "--F0",
        "0.3",
        "--alpha",
        "3",
        "--rounds",
        "5",
        "--out-dir",
        dir_fixed.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = read(dir_fixed.path(), "baseline.csv");
    for row in 1..=5 {
        assert!((csv_cell(&csv, row, "fidelity") - 0.3).abs() < 1e-12);
    }
}
