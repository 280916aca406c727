//! End-to-end runs of the binary: frozen values on the fixture documents,
//! output determinism, and the exit-code contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sncurve"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn snc_on_cusp_document() {
    let path = data("cusp.json");
    let v = stdout_json(&run(&["--input", path.to_str().unwrap(), "snc", "--format", "json"]));
    assert_eq!(v["invariants"]["label"], "cusp");
    assert_eq!(v["invariants"]["conductor"], json!([2]));
    assert_eq!(v["invariants"]["delta"], 1);
    assert_eq!(v["invariants"]["lambda"], 2);
    assert_eq!(v["invariants"]["h1"], 0);
    assert_eq!(v["invariants"]["semigroup_gaps"], json!([1]));
    assert_eq!(v["flags"]["snc"], false);
    assert_eq!(v["flags"]["gorenstein"], true);
    assert_eq!(v["routes"]["residue_module"], false);
    assert_eq!(v["routes"]["jacobian_conductor"], false);
    assert_eq!(v["routes"]["derivation"], false);
    // min orders of J are conductor + ramification even off the smooth case
    assert_eq!(v["diagnostics"]["piene"]["holds"], true);
    assert_eq!(v["diagnostics"]["piene"]["branches_smooth"], false);
}

#[test]
fn residues_on_the_fixture_documents() {
    let node = data("node.json");
    let v = stdout_json(&run(&["--input", node.to_str().unwrap(), "residue", "--format", "json"]));
    let form = &v["forms"][0];
    assert_eq!(form["logarithmic"], true);
    assert_eq!(form["weakly_holomorphic"], true);
    assert_eq!(
        form["residues"],
        json!([
            { "prec": "exact", "terms": [[0, "-1"]] },
            { "prec": "exact", "terms": [[0, "1"]] },
        ])
    );

    let cusp = data("cusp.json");
    let v = stdout_json(&run(&["--input", cusp.to_str().unwrap(), "residue", "--format", "json"]));
    let form = &v["forms"][0];
    assert_eq!(form["weakly_holomorphic"], false);
    assert_eq!(form["residues"], json!([{ "prec": "exact", "terms": [[-1, "1"]] }]));
}

#[test]
fn splayed_on_node_document() {
    let path = data("node.json");
    let v = stdout_json(&run(&["--input", path.to_str().unwrap(), "splayed", "--format", "json"]));
    assert_eq!(v["splayed"], true);
    assert_eq!(v["sigma0_splits"], true);
    // x vanishes on the second branch of the fixture, y on the first
    assert_eq!(v["partition"]["first"]["branches"], json!([1]));
    assert_eq!(v["partition"]["second"]["branches"], json!([0]));
}

#[test]
fn identical_runs_are_byte_identical() {
    let path = data("cusp.json");
    for cmd in ["snc", "residue", "invariants"] {
        let a = run(&["--input", path.to_str().unwrap(), cmd, "--format", "json"]);
        let b = run(&["--input", path.to_str().unwrap(), cmd, "--format", "json"]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{cmd} output drifted between runs");
    }
}

#[test]
fn invariants_from_a_family_name() {
    let v = stdout_json(&run(&["--family", "contact(2)", "invariants", "--format", "json"]));
    assert_eq!(v["branches"], 2);
    assert_eq!(v["conductor"], json!([2, 2]));
    assert_eq!(v["delta"], 2);
    assert_eq!(v["milnor"], 3);
}

#[test]
fn precision_override_does_not_change_answers() {
    let base = stdout_json(&run(&["--family", "contact(3)", "invariants", "--format", "json"]));
    let stressed = stdout_json(&run(&[
        "--family",
        "contact(3)",
        "--precision",
        "2",
        "--max-doublings",
        "8",
        "invariants",
        "--format",
        "json",
    ]));
    for key in ["delta", "conductor", "milnor", "lambda", "h1"] {
        assert_eq!(base[key], stressed[key], "{key} moved under restabilization");
    }
}

#[test]
fn sweep_lists_every_branch_subset() {
    let out = run(&["--family", "lines(3)", "sweep"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("label: lines(3)"));
    for subset in ["{0}", "{0,1}", "{0,1,2}"] {
        assert!(text.contains(subset), "missing row for {subset}");
    }
    let v = stdout_json(&run(&["--family", "lines(3)", "sweep", "--format", "json"]));
    assert_eq!(v["entries"].as_array().unwrap().len(), 7);
    let full = &v["entries"][6];
    assert_eq!(full["branches"], json!([0, 1, 2]));
    assert_eq!(full["delta"], 3);
    assert_eq!(full["snc"], false);
}

#[test]
fn selftest_criterion_exit_codes() {
    let out = run(&["selftest", "--criterion", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("ACCEPTANCE 4 (node): PASS"));

    // Honest failure: the residue module of the space axes equals the
    // normalization, so the frozen "false" expectation cannot be met.
    let out = run(&["selftest", "--criterion", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("ACCEPTANCE 5"));
    assert!(text.contains("FAIL"));

    let v = stdout_json(&run(&["selftest", "--criterion", "2", "--format", "json"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"][0]["index"], 2);
    assert!(!v["criteria"][0]["checks"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes_separate_usage_from_diagnostics() {
    let out = run(&["--no-such-flag", "snc"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["snc"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--input"));

    let cusp = data("cusp.json");
    let out = run(&["--input", cusp.to_str().unwrap(), "--family", "A2", "snc"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not both"));

    let out = run(&["--input", "/no/such/file.json", "snc"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["--family", "nonsense(3)", "snc"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["--input", cusp.to_str().unwrap(), "splayed"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("partition"));
}

fn temp_doc(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("sncurve-cli-test-{name}.json"));
    std::fs::write(&path, body).expect("temp fixture writes");
    path
}

#[test]
fn bad_documents_are_diagnostics_not_crashes() {
    let path = temp_doc("truncated", "{\"version\": 1,");
    let out = run(&["--input", path.to_str().unwrap(), "snc"]);
    assert_eq!(out.status.code(), Some(1));

    let path = temp_doc(
        "unit-coordinate",
        r#"{"version": 1, "variables": ["x", "y"],
            "branches": [{"coords": ["1 + t", "t"]}]}"#,
    );
    let out = run(&["--input", path.to_str().unwrap(), "invariants"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("order"));

    let path = temp_doc(
        "non-log-form",
        r#"{"version": 1, "variables": ["x", "y"],
            "branches": [{"coords": ["t", "0"]}, {"coords": ["0", "t"]}],
            "plane_poly": "x*y",
            "forms": [{"a": "x", "b": "y"}]}"#,
    );
    let out = run(&["--input", path.to_str().unwrap(), "residue"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not logarithmic"));
}
