use std::process::{Command, Output};

fn schubert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_prints_canonical_text() {
    let out = schubert(&["compute", "--family", "multiparam", "--n", "3", "--perm", "231"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "x1*x2 + t[1,2]");

    let out = schubert(&["compute", "--family", "quantum", "--n", "3", "--perm", "312"]);
    assert_eq!(stdout(&out).trim(), "x1^2 - q1");

    let out = schubert(&["compute", "--family", "schur", "--n", "2", "--shape", "1", "--descent", "1"]);
    assert_eq!(stdout(&out).trim(), "x1 + x2");
}

#[test]
fn compute_json() {
    let out = schubert(&["compute", "--family", "classical", "--n", "3", "--perm", "231", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["polynomial"], "x1*x2");
    assert_eq!(value["family"], "classical");
    assert_eq!(value["n"], 3);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["compute", "--family", "nonsense", "--n", "3", "--perm", "231"][..],
        &["compute", "--family", "classical", "--n", "3", "--perm", "2314"],
        &["verify", "--identity", "nonsense", "--n", "3"],
        &["verify", "--identity", "cauchy-universal", "--n", "1"],
        &["residue", "--ideal", "multiparam", "--n", "3", "--monomial", "y1"],
    ] {
        let out = schubert(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn verify_exit_codes() {
    let out = schubert(&["verify", "--identity", "cauchy-universal", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "PASS cauchy-universal n=3");

    let out = schubert(&["verify", "--identity", "pairing-universal", "--n", "3", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["status"], "fail");
    assert_eq!(value["witness"], "g[1,2]");
}

#[test]
fn residue_command() {
    let out = schubert(&["residue", "--ideal", "multiparam", "--n", "3", "--monomial", "x1^3*x2^2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "-2*t[1,2] - t[1,3]");

    let out = schubert(&["residue", "--ideal", "classical", "--n", "3", "--monomial", "x1^2*x2"]);
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn quick_suite_reports_the_known_failures() {
    let out = schubert(&["suite", "--level", "quick"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL pairing-universal n=3"));
    assert!(text.contains("FAIL gram-schmidt-universal n=3"));
    assert!(text.trim_end().ends_with("passed, 2 failed"));
}

#[test]
fn list_shows_every_identity() {
    let out = schubert(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 26);
}
