//! End-to-end tests of the `genzgamma` binary: per-command output
//! contracts and the exit-code contract (0 ok / 1 violation / 2 invalid
//! input / 3 budget exhaustion).

use std::path::Path;
use std::process::{Command, Output};

fn genzgamma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genzgamma"))
        .args(args)
        .env_remove("GENZGAMMA_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn eval_gamma_p_closed_form() {
    let out = genzgamma(&["eval", "gamma_p", "--p", "1", "--t", "1"]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).contains("5.0000000000000000e-1"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn eval_psi_p_two_term_sum() {
    let out = genzgamma(&["eval", "psi_p", "--p", "1", "--t", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("-1.5000000000000000e0"));
}

#[test]
fn eval_gamma_k_unit_point() {
    let out = genzgamma(&["eval", "gamma_k", "--k", "2", "--t", "2"]);
    assert_eq!(code(&out), 0);
    // 1.0 up to round-off
    let text = stdout(&out);
    let value: f64 = text
        .lines()
        .find(|l| l.starts_with("gamma_k"))
        .and_then(|l| l.split(" = ").nth(1))
        .and_then(|r| r.split_whitespace().next())
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 1.0).abs() < 1e-13, "{value}");
}

#[test]
fn eval_multiple_points_and_json() {
    let out = genzgamma(&[
        "eval", "psi_q", "--q", "0.5", "--t", "1,2,50", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["command"], "eval");
    assert_eq!(report["checks"].as_array().unwrap().len(), 3);
    assert_eq!(report["summary"]["passed"], 3);
    // config echoes the budget defaults
    assert_eq!(report["config"]["budget"]["max_terms"], 1_000_000);
}

#[test]
fn eval_psi_pq_surfaces_discrepancy() {
    let out = genzgamma(&[
        "eval", "psi_pq", "--p", "1", "--q", "0.5", "--t", "1", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let check = &report["checks"][0];
    let disc = check["series_vs_definitional_discrepancy"]
        .as_f64()
        .unwrap();
    assert!((disc - std::f64::consts::LN_2 / 3.0).abs() < 1e-12);
}

#[test]
fn invalid_input_exits_2() {
    // missing required parameter
    assert_eq!(code(&genzgamma(&["eval", "gamma_q", "--t", "1"])), 2);
    // out-of-domain parameter
    assert_eq!(
        code(&genzgamma(&["eval", "gamma_q", "--q", "1.5", "--t", "1"])),
        2
    );
    // unknown function (clap usage error)
    assert_eq!(code(&genzgamma(&["eval", "gamma_z", "--t", "1"])), 2);
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = genzgamma(&[
        "eval",
        "psi_q",
        "--q",
        "0.99999",
        "--t",
        "0.1",
        "--max-terms",
        "50",
    ]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn verify_lemmas_small_grid_passes() {
    let out = genzgamma(&[
        "verify-lemmas",
        "--lambda",
        "1,2",
        "--mu",
        "1,1",
        "--p",
        "1,5",
        "--q",
        "0.3,0.7",
        "--k",
        "1,2",
        "--t",
        "0.5,2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["summary"]["failed"], 0);
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    // summary counts equal the certificate tallies
    let inconclusive = checks
        .iter()
        .filter(|c| c["verdict"] == "inconclusive")
        .count();
    assert_eq!(report["summary"]["inconclusive"], inconclusive);
}

#[test]
fn verify_lemmas_out_of_hypothesis_is_exploratory_and_exits_0() {
    let out = genzgamma(&[
        "verify-lemmas",
        "--lambda",
        "0.5",
        "--mu",
        "1",
        "--p",
        "1",
        "--q",
        "0.5",
        "--t",
        "1",
        "--allow-out-of-hypothesis",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("exploratory"), "{text}");
    // without the flag the same inputs are invalid
    let out = genzgamma(&[
        "verify-lemmas",
        "--lambda",
        "0.5",
        "--mu",
        "1",
        "--p",
        "1",
        "--q",
        "0.5",
        "--t",
        "1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_theorems_affine_instantiation() {
    let out = genzgamma(&[
        "verify-theorems",
        "--g",
        "affine",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--p",
        "5",
        "--q",
        "0.5",
        "--k",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["summary"]["failed"], 0);
    assert_eq!(report["summary"]["inconclusive"], 0);
    // all four chains appear
    let checks = report["checks"].as_array().unwrap();
    for id in 1..=4u8 {
        assert!(
            checks.iter().any(|c| c["theorem_id"] == id),
            "theorem {id} missing"
        );
    }
}

#[test]
fn limits_decay_assertion_failure_exits_1() {
    // t = 2 is degenerate for the k path (the k = 2 error is exactly
    // zero), so the strict-decay assertion legitimately fails there
    let out = genzgamma(&["limits", "--t", "2"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("NOT DECREASING"));
}

#[test]
fn limits_decay_table() {
    let out = genzgamma(&["limits", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("family,t,step,generalized,classical,abs_err\n"));
    assert!(text.contains("gamma_qk"));
    // k path hits the classical point exactly
    let zero_row = text
        .lines()
        .find(|l| l.starts_with("gamma_k") && l.contains("k=1,"))
        .unwrap();
    assert!(zero_row.ends_with("0.0000000000000000e0"), "{zero_row}");
}

#[test]
fn explore_p1_csv_contract_and_determinism() {
    let args = [
        "explore",
        "P1",
        "--p-range",
        "1:3",
        "--q-range",
        "0.2:0.8:4",
        "--t-range",
        "0.5:5:5",
        "--format",
        "csv",
    ];
    let a = genzgamma(&args);
    assert_eq!(code(&a), 0);
    let text = stdout(&a);
    assert!(
        text.starts_with("p,q,t,value,tail_bound,verdict\n"),
        "{text}"
    );
    assert_eq!(text.lines().count(), 1 + 3 * 4 * 5);
    // byte-identical across runs
    let b = genzgamma(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn explore_single_cell_map() {
    let out = genzgamma(&["explore", "P1", "--max-points", "1", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 2); // header + one row
}

#[test]
fn explore_writes_artifacts() {
    let dir = std::env::temp_dir().join(format!("genzgamma-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let base = dir.join("scan");
    let out = genzgamma(&[
        "explore",
        "P2",
        "--p-range",
        "5:5",
        "--q-range",
        "0.5:0.5:1",
        "--k-range",
        "0.25:4:6",
        "--t-range",
        "1:1:1",
        "--out",
        base.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let csv_path = dir.join("scan.csv");
    let json_path = dir.join("scan.json");
    assert!(Path::new(&csv_path).exists());
    assert!(Path::new(&json_path).exists());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("p,q,k,t,value,tail_bound,verdict\n"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    // the k axis crosses 1 with a sign change at these parameters
    assert!(!json["boundaries"].as_array().unwrap().is_empty());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn workers_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_genzgamma"))
        .args([
            "verify-lemmas",
            "--p",
            "1",
            "--q",
            "0.5",
            "--t",
            "1",
            "--format",
            "json",
        ])
        .env("GENZGAMMA_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(report["config"]["workers"], 2);
    // junk value is an input error
    let out = Command::new(env!("CARGO_BIN_EXE_genzgamma"))
        .args(["limits"])
        .env("GENZGAMMA_WORKERS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_reports_are_reproducible() {
    let args = [
        "verify-lemmas",
        "--p",
        "1,2",
        "--q",
        "0.5",
        "--t",
        "1,2",
        "--format",
        "json",
    ];
    let a = genzgamma(&args);
    let b = genzgamma(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "JSON report bytes differ between runs");
}
