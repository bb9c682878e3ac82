//! End-to-end coverage of the loewner-lab binary: exit codes, output
//! formats, file emission, and byte reproducibility.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loewner-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loewner-lab"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn table_renders_the_expected_sets() {
    let out = run(&["table", "--n", "5", "--k", "2", "--property", "positivity"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ℕ ∪ [3, ∞)"), "missing plain row: {text}");
    assert!(text.contains("2ℕ ∪ [3, ∞)"), "missing even row: {text}");
    assert!(text.contains("(−1+2ℕ) ∪ [3, ∞)"), "missing odd row: {text}");

    let out = run(&["table", "--n", "2", "--k", "1", "--property", "sub-additivity", "--family", "plain"]);
    assert!(stdout(&out).contains("(−∞, 0] ∪ {1}"));
}

#[test]
fn table_json_round_trips() {
    let out = run(&["table", "--n", "4", "--k", "2", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("valid JSON");
    let rows = value["results"]["rows"].as_array().expect("rows array");
    assert_eq!(rows.len(), 5 * 3); // five properties, three families
    let first = &rows[0];
    for field in ["property", "family", "n", "k", "components", "critical_exponent", "display"] {
        assert!(!first[field].is_null() || field == "critical_exponent", "missing {field}");
    }
    // positivity rows carry the n-2 exponent
    let pos_row = rows
        .iter()
        .find(|r| r["property"] == "positivity" && r["family"] == "plain")
        .expect("positivity row");
    assert_eq!(pos_row["critical_exponent"].as_f64(), Some(2.0));
}

#[test]
fn check_agreement_paths_and_exit_codes() {
    // Out exponent with a deterministic violation: agreement, exit 0
    let out = run(&["check", "positivity", "even:3", "--n", "6", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("violation found"));
    assert!(text.contains("cosine-rank2"));

    // In exponent, nothing found: agreement, exit 0
    let out = run(&["check", "monotonicity", "plain:4", "--n", "5", "--k", "5", "--budget", "25"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("no violation found"));

    // convexity of the signed square fails via the closed-form family
    let out = run(&["check", "convexity", "odd:2", "--n", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("signed-square-family"));

    // usage errors exit 1
    let out = run(&["check", "positivity", "cubic:2", "--n", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["check", "positivity", "plain:2", "--n", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn scan_reports_per_alpha_rows() {
    let out = run(&[
        "scan", "positivity", "plain", "--n", "4", "--k", "2", "--alphas", "0.5,1,1.5,2,3", "--budget", "20",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("fitzgerald-horn"), "{text}");
    assert!(text.contains("scan consistent"), "{text}");

    let json_out = run(&[
        "scan", "positivity", "plain", "--n", "4", "--k", "2", "--alphas", "0.5,2", "--budget", "10", "--json",
    ]);
    let value: serde_json::Value = serde_json::from_str(stdout(&json_out).trim()).unwrap();
    let entries = value["results"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[0]["membership"], "out");
    assert_eq!(entries[0]["verdict"]["outcome"], "violation-found");
    assert_eq!(entries[1]["membership"], "in");
    assert_eq!(value["results"]["disagreements"], 0);
}

#[test]
fn scan_output_is_byte_identical_across_thread_counts() {
    let args = [
        "scan", "monotonicity", "even", "--n", "4", "--k", "2", "--alphas", "0.25:0.25:4",
        "--budget", "15", "--json",
    ];
    let single = run_with_env(&args, "LOEWNER_LAB_THREADS", "1");
    let quad = run_with_env(&args, "LOEWNER_LAB_THREADS", "4");
    let auto = run_with_env(&args, "LOEWNER_LAB_THREADS", "0");
    assert_eq!(stdout(&single), stdout(&quad));
    assert_eq!(stdout(&single), stdout(&auto));
    assert!(!stdout(&single).is_empty());
}

#[test]
fn check_json_is_byte_reproducible() {
    let args = ["check", "positivity", "even:1", "--n", "4", "--k", "2", "--json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(stdout(&first), stdout(&second));
    let value: serde_json::Value = serde_json::from_str(stdout(&first).trim()).unwrap();
    assert_eq!(value["results"]["verdict"]["outcome"], "violation-found");
    assert_eq!(value["seed"], 0);
    // canonical form: keys sorted at every level
    let text = stdout(&first);
    let cmd_pos = text.find("\"command\"").unwrap();
    let params_pos = text.find("\"parameters\"").unwrap();
    let results_pos = text.find("\"results\"").unwrap();
    assert!(cmd_pos < params_pos && params_pos < results_pos);
}

#[test]
fn counterexample_writes_matrices_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "counterexample", "fh", "--n", "4", "--eps", "0.01", "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("fh_A.csv")).unwrap();
    assert!(csv.starts_with("1.01,1.02,1.03,1.04"), "{csv}");
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fh_certificate.json")).unwrap())
            .unwrap();
    assert_eq!(cert["name"], "fh");
    assert_eq!(cert["parameters"]["n"], 4);

    // cosine emits the 5x5 matrix
    let out = run(&["counterexample", "cosine", "--r", "5", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("cosine_A.json")).unwrap())
            .unwrap();
    assert_eq!(value["n"], 5);

    // the signed-power pair carries its negative determinant certificate
    let out = run(&[
        "counterexample", "subadd-psi", "--alpha", "-1", "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("subadd-psi_certificate.json")).unwrap(),
    )
    .unwrap();
    let value = cert["certificate_value"].as_f64().unwrap();
    assert!((value + 1.2).abs() <= 1e-9, "certificate {value}");
}

#[test]
fn counterexample_rank_lift_composes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "counterexample", "rank-lift", "--property", "positivity", "--map", "even:1", "--n", "5",
        "--k", "4", "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let cert: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("rank-lift_certificate.json")).unwrap(),
    )
    .unwrap();
    assert!(cert["certificate_value"].as_f64().unwrap() < 0.0);
}

#[test]
fn counterexample_unknown_name_lists_the_valid_ones() {
    let out = run(&["counterexample", "no-such-family"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("fh") && err.contains("cosine"), "{err}");
}

#[test]
fn critexp_brackets_the_closed_form() {
    let out = run(&[
        "critexp", "positivity", "plain", "--n", "4", "--k", "2", "--res", "0.25", "--budget", "40",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("closed form: 2"), "{text}");
    assert!(text.contains("contained: yes"), "{text}");

    // super-additivity at k=1 keeps the dimension-sized exponent
    let out = run(&[
        "critexp", "super-additivity", "odd", "--n", "3", "--k", "1", "--res", "0.25", "--budget", "40",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("closed form: 3"));

    // rank-one positivity never fails, so the bisection is honestly inconclusive
    let out = run(&[
        "critexp", "positivity", "plain", "--n", "5", "--k", "1", "--res", "0.25", "--budget", "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("inconclusive"));
}
