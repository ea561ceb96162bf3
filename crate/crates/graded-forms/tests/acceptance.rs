//! End-to-end acceptance gate: every numbered criterion below runs the
//! corresponding built-in verification check (plus its own timing budget
//! where one applies) and prints a single pass/fail line.

use graded_forms::selftest;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

struct Criterion {
    id: usize,
    label: &'static str,
    check_id: Option<usize>,
    budget: Option<Duration>,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, label: "generator expansions", check_id: Some(1), budget: Some(Duration::from_secs(1)) },
    Criterion { id: 2, label: "derivative identities", check_id: Some(2), budget: None },
    Criterion { id: 3, label: "lifting round trips", check_id: Some(3), budget: Some(Duration::from_secs(30)) },
    Criterion { id: 4, label: "projection diagrams", check_id: Some(4), budget: None },
    Criterion { id: 5, label: "certification closure", check_id: Some(5), budget: None },
    Criterion { id: 6, label: "hecke operators", check_id: Some(6), budget: None },
    Criterion { id: 7, label: "operator algebra", check_id: Some(7), budget: None },
    Criterion { id: 8, label: "bracket compatibility", check_id: Some(8), budget: None },
    Criterion { id: 9, label: "heat operator", check_id: Some(9), budget: None },
    Criterion { id: 10, label: "rankin-cohen brackets", check_id: Some(10), budget: None },
    Criterion { id: 11, label: "e2 family", check_id: Some(11), budget: None },
    Criterion { id: 12, label: "shimura correspondence", check_id: Some(12), budget: None },
    Criterion { id: 13, label: "cli selftest and round trips", check_id: None, budget: Some(Duration::from_secs(300)) },
];

fn run_cli(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_graded-forms"));
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::null());
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
    )
}

/// The CLI leg: the bundled verification suite must pass, and JSON emitted by
/// one subcommand must feed cleanly into the next.
fn run_cli_criterion() -> Result<String, String> {
    let (code, _) = run_cli(&["selftest"], None);
    if code != 0 {
        return Err(format!("selftest exited with {}", code));
    }

    let (code, e4) = run_cli(&["series", "--form", "E4", "--prec", "16"], None);
    if code != 0 {
        return Err("series generation failed".into());
    }
    let (code, cert) = run_cli(
        &["certify", "--kind", "modular", "--weight", "4", "--in", "-"],
        Some(&e4),
    );
    if code != 0 || !cert.contains("\"valid\": true") {
        return Err("series -> certify round trip failed".into());
    }

    let (code, lifted) = run_cli(
        &["lift", "--kind", "xi", "--weight", "4", "--m", "3", "--in", "-"],
        Some(&e4),
    );
    if code != 0 {
        return Err("xi lift failed".into());
    }
    let (code, cert) = run_cli(&["certify", "--kind", "qp", "--in", "-"], Some(&lifted));
    if code != 0 || !cert.contains("\"valid\": true") {
        return Err("lift -> certify round trip failed".into());
    }

    // Error surfaces: malformed JSON is exit 2, a precondition failure exit 1.
    let (code, _) = run_cli(&["certify", "--kind", "qp", "--in", "-"], Some("{broken"));
    if code != 2 {
        return Err(format!("malformed input exited with {}", code));
    }
    let (code, _) = run_cli(
        &["hecke", "--kind", "modular", "--weight", "12", "--p", "50", "--in", "-"],
        Some(&e4),
    );
    if code != 1 {
        return Err(format!("precondition failure exited with {}", code));
    }
    Ok("cli selftest, round trips and exit codes verified".into())
}

#[test]
fn acceptance_criteria() {
    let mut failures = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let result: Result<String, String> = match c.check_id {
            Some(id) => {
                let outcome = selftest::run_one(id).expect("check id is registered");
                if outcome.passed {
                    Ok(outcome.detail)
                } else {
                    Err(outcome.detail)
                }
            }
            None => run_cli_criterion(),
        };
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| match c.budget {
            Some(b) if elapsed > b => Err(format!(
                "passed but took {:?} (budget {:?})",
                elapsed, b
            )),
            _ => Ok(detail),
        });
        match result {
            Ok(detail) => println!("criterion {:2} [{}]: PASS ({})", c.id, c.label, detail),
            Err(detail) => {
                println!("criterion {:2} [{}]: FAIL ({})", c.id, c.label, detail);
                failures.push(c.id);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {:?}", failures);
}
