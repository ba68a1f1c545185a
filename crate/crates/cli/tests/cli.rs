//! End-to-end tests driving the compiled binary: every command, both file
//! formats, the documented exit codes, and the report schema.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_stationary"));
    // Tests control seeding explicitly; a seed inherited from the caller's
    // environment must not bleed in.
    cmd.env_remove("STATIONARY_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout_report(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is one JSON report")
}

fn stderr_diagnostic(output: &Output) -> Value {
    serde_json::from_slice(&output.stderr).expect("stderr is one JSON diagnostic")
}

fn code(output: &Output) -> i32 {
    output.status.code().unwrap()
}

fn write_csv(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn every_report_carries_command_and_elapsed() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write_csv(dir.path(), "m.csv", "0.5,0.5\n0.75,0.25\n");
    let out = dir.path().join("g.csv");
    let m = matrix.to_str().unwrap();
    let runs: Vec<Output> = vec![
        run(&["validate", m]),
        run(&["check", m]),
        run(&["solve", m]),
        run(&["simulate", m, "--steps", "10"]),
        run(&["generate", "--kind", "cycle", "--n", "3", "--out", out.to_str().unwrap()]),
    ];
    for output in &runs {
        assert_eq!(code(output), 0);
        let report = stdout_report(output);
        assert!(report.get("command").is_some());
        assert!(report.get("elapsed_ms").is_some());
    }
}

#[test]
fn validate_accepts_rejects_and_renormalizes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_csv(dir.path(), "good.csv", "0.5,0.5\n0.75,0.25\n");
    assert_eq!(code(&run(&["validate", good.to_str().unwrap()])), 0);

    let off = write_csv(dir.path(), "off.csv", "0.5,0.6\n0.5,0.4\n");
    let rejected = run(&["validate", off.to_str().unwrap()]);
    assert_eq!(code(&rejected), 2);
    assert_eq!(stderr_diagnostic(&rejected)["error"], "row_sum_violation");

    let widened = run(&["validate", off.to_str().unwrap(), "--tol", "0.2"]);
    assert_eq!(code(&widened), 0);

    let renorm = run(&[
        "validate",
        off.to_str().unwrap(),
        "--tol",
        "0.2",
        "--renormalize",
    ]);
    assert_eq!(code(&renorm), 0);
    assert_eq!(stdout_report(&renorm)["renormalized"], true);

    let negative = write_csv(dir.path(), "neg.csv", "1.5,-0.5\n0.5,0.5\n");
    let rejected = run(&["validate", negative.to_str().unwrap()]);
    assert_eq!(code(&rejected), 2);
    assert_eq!(stderr_diagnostic(&rejected)["error"], "negative_entry");
}

#[test]
fn check_certifies_the_swap_and_rejects_the_identity() {
    let dir = tempfile::tempdir().unwrap();
    let swap = write_csv(dir.path(), "swap.csv", "0.0,1.0\n1.0,0.0\n");
    let ok = run(&["check", swap.to_str().unwrap()]);
    assert_eq!(code(&ok), 0);
    assert_eq!(stdout_report(&ok)["irreducible"], true);

    let identity = write_csv(dir.path(), "id.csv", "1.0,0.0\n0.0,1.0\n");
    let rejected = run(&["check", identity.to_str().unwrap()]);
    assert_eq!(code(&rejected), 3);
    let report = stdout_report(&rejected);
    assert_eq!(report["irreducible"], false);
    assert_eq!(report["witness"], serde_json::json!([0, 1]));
}

#[test]
fn full_check_tabulates_minimal_powers_of_the_three_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let cycle = write_csv(dir.path(), "c3.csv", "0,1,0\n0,0,1\n1,0,0\n");
    let output = run(&["check", cycle.to_str().unwrap(), "--full"]);
    assert_eq!(code(&output), 0);
    let report = stdout_report(&output);
    // Hand-checked against boolean powers of the cycle's support matrix.
    assert_eq!(
        report["min_powers"],
        serde_json::json!([[3, 1, 2], [2, 3, 1], [1, 2, 3]])
    );
}

#[test]
fn solve_reproduces_the_hand_checked_two_state_chain() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    fs::write(&path, r#"{"n": 2, "rows": [[0.5, 0.5], [0.75, 0.25]]}"#).unwrap();
    for method in ["direct", "cesaro"] {
        let output = run(&["solve", path.to_str().unwrap(), "--method", method]);
        assert_eq!(code(&output), 0, "method {method}");
        let report = stdout_report(&output);
        let pi = report["pi"].as_array().unwrap();
        assert!((pi[0].as_f64().unwrap() - 0.6).abs() <= 1e-9);
        assert!((pi[1].as_f64().unwrap() - 0.4).abs() <= 1e-9);
        assert!(report["residual"].as_f64().unwrap() <= 1e-10);
    }
}

#[test]
fn solve_both_reports_agreement_of_the_two_routes() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write_csv(dir.path(), "m.csv", "0.7,0.3\n0.6,0.4\n");
    let output = run(&["solve", matrix.to_str().unwrap(), "--method", "both"]);
    assert_eq!(code(&output), 0);
    let report = stdout_report(&output);
    assert_eq!(report["method"], "both");
    assert_eq!(report["direct"]["kernel_dimension"], 1);
    assert!(report["cesaro"]["iterations"].as_u64().unwrap() >= 1);
    assert!(report["distance_inf"].as_f64().unwrap() <= 1e-6);
    // Stationary law of this chain is (2/3, 1/3).
    let pi = report["direct"]["pi"].as_array().unwrap();
    assert!((pi[0].as_f64().unwrap() - 2.0 / 3.0).abs() <= 1e-12);
}

#[test]
fn solve_rejects_multiple_stationary_laws() {
    let dir = tempfile::tempdir().unwrap();
    let identity = write_csv(dir.path(), "id.csv", "1.0,0.0\n0.0,1.0\n");
    let output = run(&["solve", identity.to_str().unwrap()]);
    assert_eq!(code(&output), 3);
    let diagnostic = stderr_diagnostic(&output);
    assert_eq!(diagnostic["error"], "not_unique_stationary");
    assert_eq!(diagnostic["kernel_dimension"], 2);
}

#[test]
fn solve_surfaces_the_iteration_cap() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write_csv(
        dir.path(),
        "m.csv",
        "0.25,0.25,0.25,0.25\n0.1,0.2,0.3,0.4\n0.4,0.3,0.2,0.1\n0.3,0.3,0.3,0.1\n",
    );
    let output = run(&[
        "solve",
        matrix.to_str().unwrap(),
        "--method",
        "cesaro",
        "--eps",
        "1e-12",
        "--max-iter",
        "5",
    ]);
    assert_eq!(code(&output), 4);
    assert_eq!(
        stderr_diagnostic(&output)["error"],
        "max_iterations_exceeded"
    );
}

#[test]
fn solve_validates_its_numeric_flags() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write_csv(dir.path(), "m.csv", "0.5,0.5\n0.5,0.5\n");
    let output = run(&["solve", matrix.to_str().unwrap(), "--eps", "0.0"]);
    assert_eq!(code(&output), 2);
    let output = run(&["solve", matrix.to_str().unwrap(), "--max-iter", "0"]);
    assert_eq!(code(&output), 2);
}

#[test]
fn simulate_counts_and_compares() {
    let dir = tempfile::tempdir().unwrap();
    let swap = write_csv(dir.path(), "swap.csv", "0.0,1.0\n1.0,0.0\n");
    let output = run(&[
        "simulate",
        swap.to_str().unwrap(),
        "--steps",
        "1000",
        "--compare",
    ]);
    assert_eq!(code(&output), 0);
    let report = stdout_report(&output);
    assert_eq!(report["counts"], serde_json::json!([500, 500]));
    assert_eq!(report["distance_inf"].as_f64().unwrap(), 0.0);
    assert_eq!(report["irreducible"], true);
}

#[test]
fn simulate_compare_requires_irreducibility() {
    let dir = tempfile::tempdir().unwrap();
    let identity = write_csv(dir.path(), "id.csv", "1.0,0.0\n0.0,1.0\n");
    let output = run(&[
        "simulate",
        identity.to_str().unwrap(),
        "--steps",
        "10",
        "--compare",
    ]);
    assert_eq!(code(&output), 3);
    let diagnostic = stderr_diagnostic(&output);
    assert_eq!(diagnostic["error"], "reducible");
    assert_eq!(diagnostic["witness"], serde_json::json!([0, 1]));
}

#[test]
fn simulate_seed_resolution_order_is_flag_env_default() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write_csv(dir.path(), "m.csv", "0.5,0.5\n0.5,0.5\n");
    let m = matrix.to_str().unwrap();

    let default_run = run(&["simulate", m, "--steps", "50"]);
    assert_eq!(stdout_report(&default_run)["seed"], 42);

    let env_run = bin()
        .args(["simulate", m, "--steps", "50"])
        .env("STATIONARY_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(stdout_report(&env_run)["seed"], 7);

    let flag_run = bin()
        .args(["simulate", m, "--steps", "50", "--seed", "11"])
        .env("STATIONARY_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(stdout_report(&flag_run)["seed"], 11);

    let bad_env = bin()
        .args(["simulate", m, "--steps", "50"])
        .env("STATIONARY_SEED", "not-a-seed")
        .output()
        .unwrap();
    assert_eq!(code(&bad_env), 2);
}

#[test]
fn simulate_rejects_degenerate_requests() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write_csv(dir.path(), "m.csv", "0.5,0.5\n0.5,0.5\n");
    let output = run(&["simulate", matrix.to_str().unwrap(), "--steps", "0"]);
    assert_eq!(code(&output), 2);
    let output = run(&[
        "simulate",
        matrix.to_str().unwrap(),
        "--steps",
        "10",
        "--start",
        "5",
    ]);
    assert_eq!(code(&output), 2);
    assert_eq!(stderr_diagnostic(&output)["error"], "index_out_of_range");
}

#[test]
fn generated_fixtures_round_trip_through_validate_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let kinds = [
        "random_dense",
        "random_sparse_irreducible",
        "cycle",
        "doubly_stochastic",
        "reducible_blocks",
        "near_reducible",
    ];
    for (idx, kind) in kinds.iter().enumerate() {
        for ext in ["csv", "json"] {
            let out = dir.path().join(format!("{kind}.{ext}"));
            let generated = run(&[
                "generate",
                "--kind",
                kind,
                "--n",
                "6",
                "--seed",
                &idx.to_string(),
                "--out",
                out.to_str().unwrap(),
            ]);
            assert_eq!(code(&generated), 0, "generate {kind} as {ext}");
            assert_eq!(code(&run(&["validate", out.to_str().unwrap()])), 0);
            let checked = run(&["check", out.to_str().unwrap()]);
            let expected = if *kind == "reducible_blocks" { 3 } else { 0 };
            assert_eq!(code(&checked), expected, "check {kind}");
        }
    }
}

#[test]
fn generate_rejects_unknown_kinds_and_bad_specs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let output = run(&[
        "generate",
        "--kind",
        "upper_triangular",
        "--n",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 2);
    assert!(stderr_diagnostic(&output)["message"]
        .as_str()
        .unwrap()
        .contains("random_dense"));

    let output = run(&[
        "generate",
        "--kind",
        "cycle",
        "--n",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 2);
    assert_eq!(stderr_diagnostic(&output)["error"], "invalid_spec");
}

#[test]
fn generated_files_parse_to_the_same_matrix_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("m.csv");
    let json = dir.path().join("m.json");
    for out in [&csv, &json] {
        let output = run(&[
            "generate",
            "--kind",
            "random_dense",
            "--n",
            "5",
            "--seed",
            "3",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&output), 0);
    }
    let solve = |path: &PathBuf| {
        let output = run(&["solve", path.to_str().unwrap()]);
        assert_eq!(code(&output), 0);
        stdout_report(&output)["pi"].clone()
    };
    // Identical doubles in both files, so identical solutions.
    assert_eq!(solve(&csv), solve(&json));
}

#[test]
fn malformed_files_exit_with_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let garbled = write_csv(dir.path(), "g.csv", "0.5,oops\n0.5,0.5\n");
    let output = run(&["validate", garbled.to_str().unwrap()]);
    assert_eq!(code(&output), 5);
    assert_eq!(stderr_diagnostic(&output)["error"], "parse");

    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"n": 3, "rows": [[1.0]]}"#).unwrap();
    let output = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&output), 5);

    let ragged = write_csv(dir.path(), "r.csv", "0.5,0.5\n1.0\n");
    let output = run(&["validate", ragged.to_str().unwrap()]);
    assert_eq!(code(&output), 2);
    assert_eq!(stderr_diagnostic(&output)["error"], "not_square");
}
