//! Black-box tests of the command-line surface: JSON in, JSON out, and the
//! documented exit codes.

use serde_json::Value;
use std::io::Write;
use std::process::{Command, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_graded-forms"));
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped());
    if stdin.is_some() {
        cmd.stdin(Stdio::piped());
    }
    let mut child = cmd.spawn().expect("binary should spawn");
    if let Some(data) = stdin {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(data.as_bytes())
            .expect("stdin should accept input");
    }
    let out = child.wait_with_output().expect("binary should finish");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn parse(s: &str) -> Value {
    serde_json::from_str(s).expect("output should be JSON")
}

#[test]
fn series_emits_rationals_as_string_pairs() {
    let (code, out, _) = run(&["series", "--form", "Delta", "--prec", "4"], None);
    assert_eq!(code, 0);
    let v = parse(&out);
    let coeffs = v["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 4);
    assert_eq!(coeffs[1][0], "1");
    assert_eq!(coeffs[1][1], "1");
    assert_eq!(coeffs[2][0], "-24");
}

#[test]
fn lift_then_certify_round_trip() {
    let (code, e4, _) = run(&["series", "--form", "E4", "--prec", "12"], None);
    assert_eq!(code, 0);
    let (code, qp, _) = run(
        &["lift", "--kind", "xi", "--weight", "4", "--m", "2", "--in", "-"],
        Some(&e4),
    );
    assert_eq!(code, 0);
    let v = parse(&qp);
    assert_eq!(v["weight"], 8);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 3);
    let (code, cert, _) = run(&["certify", "--kind", "qp", "--in", "-"], Some(&qp));
    assert_eq!(code, 0);
    assert_eq!(parse(&cert)["valid"], true);
}

#[test]
fn canonical_lift_round_trip_through_files() {
    let dir = std::env::temp_dir();
    let path = dir.join("gf-cli-test-qp.json");
    let (code, e6, _) = run(&["series", "--form", "E6", "--prec", "10"], None);
    assert_eq!(code, 0);
    let (code, qp, _) = run(
        &["lift", "--kind", "xi", "--weight", "6", "--m", "2", "--in", "-"],
        Some(&e6),
    );
    assert_eq!(code, 0);
    std::fs::write(&path, &qp).unwrap();
    let (code, jl, _) = run(
        &[
            "lift", "--kind", "canonical", "--delta", "1", "--xtrunc", "5",
            "--in", path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code, 0);
    let v = parse(&jl);
    assert_eq!(v["offset"], 1);
    let (code, cert, _) = run(&["certify", "--kind", "jl", "--in", "-"], Some(&jl));
    assert_eq!(code, 0);
    assert_eq!(parse(&cert)["valid"], true);
    std::fs::remove_file(&path).ok();
}

#[test]
fn hecke_on_a_series_matches_the_eigenvalue() {
    let (code, delta, _) = run(&["series", "--form", "Delta", "--prec", "12"], None);
    assert_eq!(code, 0);
    let (code, out, _) = run(
        &["hecke", "--kind", "modular", "--weight", "12", "--p", "2", "--in", "-"],
        Some(&delta),
    );
    assert_eq!(code, 0);
    let v = parse(&out);
    // tau(2) = -24: the image is -24 * Delta.
    assert_eq!(v["coeffs"][1][0], "-24");
    assert_eq!(v["coeffs"][2][0], "576");
}

#[test]
fn bracket_subcommand_produces_certifiable_output() {
    let (_, e4, _) = run(&["series", "--form", "E4", "--prec", "12"], None);
    let (_, e6, _) = run(&["series", "--form", "E6", "--prec", "12"], None);
    let dir = std::env::temp_dir();
    let p1 = dir.join("gf-cli-test-f1.json");
    let p2 = dir.join("gf-cli-test-f2.json");
    let (code, f1, _) = run(
        &["lift", "--kind", "xi", "--weight", "4", "--m", "3", "--in", "-"],
        Some(&e4),
    );
    assert_eq!(code, 0);
    let (code, f2, _) = run(
        &["lift", "--kind", "xi", "--weight", "6", "--m", "3", "--in", "-"],
        Some(&e6),
    );
    assert_eq!(code, 0);
    std::fs::write(&p1, &f1).unwrap();
    std::fs::write(&p2, &f2).unwrap();
    let (code, br, _) = run(
        &[
            "bracket", "--kind", "rcQP", "--n", "1",
            "--mu1-twice", "1", "--mu2-twice", "1",
            "--lambda1", "4", "--lambda2", "6",
            "--in1", p1.to_str().unwrap(), "--in2", p2.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code, 0);
    let (code, cert, _) = run(&["certify", "--kind", "qp", "--in", "-"], Some(&br));
    assert_eq!(code, 0);
    assert_eq!(parse(&cert)["valid"], true);
    std::fs::remove_file(&p1).ok();
    std::fs::remove_file(&p2).ok();
}

#[test]
fn malformed_input_is_exit_two() {
    let (code, out, _) = run(&["certify", "--kind", "qp", "--in", "-"], Some("not json"));
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(out.trim()).expect("error payload should be JSON");
    assert_eq!(v["error"], "malformed");
}

#[test]
fn missing_fields_are_exit_two() {
    let (code, _, _) = run(
        &["certify", "--kind", "jl", "--in", "-"],
        Some("{\"weight\": 4, \"coeffs\": [{\"coeffs\": [[\"1\", \"1\"]]}]}"),
    );
    assert_eq!(code, 2);
}

#[test]
fn precondition_failures_are_exit_one() {
    let (code, out, _) = run(
        &["hecke", "--kind", "modular", "--weight", "12", "--p", "40", "--in", "-"],
        Some("{\"coeffs\": [[\"1\", \"1\"], [\"2\", \"1\"]]}"),
    );
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(out.trim()).expect("error payload should be JSON");
    assert_eq!(v["error"], "insufficient_precision");
}

#[test]
fn selftest_single_check() {
    let (code, out, _) = run(&["selftest", "--only", "2"], None);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
}

#[test]
fn default_precision_env_is_honored() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_graded-forms"));
    cmd.args(["series", "--form", "E2"])
        .env("GRADED_FORMS_PREC_DEFAULT", "7")
        .stdout(Stdio::piped());
    let out = cmd.output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 7);
}
