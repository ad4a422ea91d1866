//! End-to-end tests against the compiled binary: exit codes, output
//! contracts, and byte-stability of the CSV emitters.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arnold-cat"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn weights_prints_the_tuple() {
    let out = run(&["weights", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("(6,15,20,30,60)"));
}

#[test]
fn weights_emits_coupling_formulas() {
    let out = run(&["weights", "--n", "3", "--emit-formulas"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("(3,3)"));
    assert!(text.contains("a^2 = alpha^2 + 2*beta^2 + gamma^2"), "{text}");
    assert!(text.contains("c^2 = alpha^6"), "{text}");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("Usage"));
}

#[test]
fn build_derives_couplings_from_generators() {
    let out = run(&["build", "--params", "1,2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["N"], 2);
    let c: Vec<f64> = json["couplings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(c, vec![-15.0, 0.0, 27.0, 0.0]);
}

#[test]
fn build_rejects_both_forms() {
    let out = run(&["build", "--params", "1,2", "--couplings", "-15,0,27,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("mutually exclusive"));
}

#[test]
fn config_conflict_lists_both_forms() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    write(
        &cfg,
        r#"{"schema": 1, "potential": {"N": 2, "params": [1, 2],
            "couplings": [-15, 0, 27, 0]}}"#,
    );
    let out = run(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().join("s.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("mutually exclusive"), "{}", stderr(&out));
}

#[test]
fn config_reports_every_violation_at_once() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    write(
        &cfg,
        r#"{"schema": 2, "potential": {"N": 2, "params": [1, 2], "lamda_sq": 4},
            "grid": {"points": 2000}}"#,
    );
    let out = run(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().join("s.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("schema version 2"), "{err}");
    assert!(err.contains("lamda_sq"), "{err}");
    assert!(err.contains("odd integer"), "{err}");
}

#[test]
fn solve_emits_byte_identical_spectra() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    write(
        &cfg,
        r#"{"schema": 1, "potential": {"N": 2, "params": [1.0, 2.0]}, "states": 6}"#,
    );
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    for out_path in [&out_a, &out_b] {
        let out = run(&[
            "solve",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    }
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert_eq!(a, b, "two identical runs must give identical bytes");

    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    // N = 2: shell partition has 2N + 1 = 5 regions
    assert_eq!(
        header,
        "n,E,parity,splitting_partner,weight_region_0,weight_region_1,\
         weight_region_2,weight_region_3,weight_region_4"
    );
    assert_eq!(lines.count(), 6);
}

#[test]
fn solve_dumps_wavefunctions_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    write(
        &cfg,
        r#"{"schema": 1, "potential": {"N": 1, "params": [2.0]},
            "grid": {"points": 401}, "states": 2}"#,
    );
    let psi = dir.path().join("psi.csv");
    let out = run(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().join("s.csv").to_str().unwrap(),
        "--dump-psi",
        psi.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&psi).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,psi_0,psi_1"));
    assert_eq!(lines.count(), 401);
}

#[test]
fn solve_boundary_leak_is_a_numerical_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    // outer wells sit at x = 3; a box of half-width 2.5 cannot hold their
    // states
    write(
        &cfg,
        r#"{"schema": 1, "potential": {"N": 2, "params": [1.0, 2.0]},
            "grid": {"half_width": 2.5, "points": 301}, "states": 2}"#,
    );
    let out = run(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().join("s.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn estimate_prints_a_table_per_well() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    write(
        &cfg,
        r#"{"schema": 1, "potential": {"N": 2, "params": [1.0, 2.0]},
            "level_max": 1}"#,
    );
    let out = run(&["estimate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("well ring 0"), "{text}");
    assert!(text.contains("well ring 2"), "{text}");
    assert!(text.contains("depth = -2.43000000000e2"), "{text}");
    assert!(!text.contains("numeric"), "{text}");

    let out = run(&[
        "estimate",
        "--config",
        cfg.to_str().unwrap(),
        "--with-numeric",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("numeric"));
}

#[test]
fn locus_writes_rows_for_every_branch_point() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("locus.csv");
    let out = run(&[
        "locus",
        "--path",
        "k5_alpha_beta",
        "--alpha-range",
        "2:2.2:0.1",
        "--estimator",
        "harmonic",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("fixed_value,branch,critical_value,delta_residual")
    );
    // 3 fixed values x 2 branches
    assert_eq!(lines.count(), 6);
    // the upper branch hugs beta = alpha out here
    assert!(stdout(&out).contains("branch upper: 3/3 roots"));
}

#[test]
fn locus_rejects_the_wrong_range_flag() {
    let out = run(&[
        "locus",
        "--path",
        "k5_mu_ratio",
        "--alpha-range",
        "1:2:0.5",
        "--out",
        "/dev/null",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("fixed generator is beta"));
}

#[test]
fn scan_reports_the_relocalization_crossing() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("scan.csv");
    let out = run(&[
        "scan",
        "--path",
        "k5_mu_ratio",
        "--beta",
        "4",
        "--r-range",
        "0.9:1.0:0.05",
        "--points",
        "1201",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("inner-weight crossing at r = "));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("swept_value,ground_energy,inner_weight,parity")
    );
    assert_eq!(lines.count(), 3);
    assert!(text.ends_with("even\n"));
}

#[test]
fn reproduce_fig2_prints_the_integer_couplings() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "reproduce",
        "fig2",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("(a^2,b^2,c^2) = (4,13,28)"));
    let csv = std::fs::read_to_string(dir.path().join("fig2.csv")).unwrap();
    assert!(csv.starts_with("x,V\n"));
    let svg = std::fs::read_to_string(dir.path().join("fig2.svg")).unwrap();
    assert!(svg.starts_with("<svg "));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn reproduce_rejects_unknown_targets() {
    let out = run(&["reproduce", "fig9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("fig9"));
}
