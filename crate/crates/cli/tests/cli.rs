use std::path::PathBuf;

use assert_cmd::Command;
use skck::report::VerificationReport;

fn skck() -> Command {
    Command::cargo_bin("skck").unwrap()
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn stdout(args: &[&str]) -> (String, i32) {
    let out = skck().args(args).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn exit_codes() {
    skck().args(["verify", "theorem1", "--b", "3"]).assert().code(0);
    skck().args(["verify", "theorem1", "--b", "2"]).assert().code(1);
    skck().args(["verify", "corollary1", "--b", "2"]).assert().code(0);
    skck().args(["verify", "lemma5", "--symbolic"]).assert().code(0);
    skck().args(["verify", "lemma2", "--b", "4"]).assert().code(1);
    skck().args(["verify", "theorem1", "--b", "1"]).assert().code(3);
    skck().args(["verify", "theorem7", "--b", "3"]).assert().code(3);
    skck().args(["verify", "theorem1"]).assert().code(3);
    skck()
        .args(["verify", "theorem1", "--b", "3", "--symbolic"])
        .assert()
        .code(3);
    skck().args(["frobnicate"]).assert().code(3);
    skck().args(["--help"]).assert().code(0);
}

#[test]
fn symbolic_certificates_are_deterministic() {
    let args = ["verify", "theorem1", "--symbolic", "--certificates", "--format", "json"];
    let first = skck().args(args).output().unwrap();
    let second = skck().args(args).output().unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn json_round_trips_and_agrees_with_text() {
    for (claim, b) in [("theorem1", "5"), ("theorem1", "2"), ("lemma2", "3"), ("lemma4", "6")] {
        let (json, code_json) = stdout(&["verify", claim, "--b", b, "--format", "json"]);
        let (text, code_text) = stdout(&["verify", claim, "--b", b]);
        assert_eq!(code_json, code_text);
        let report = VerificationReport::from_json(&json).unwrap();
        assert_eq!(report.to_json(), json.trim_end());
        assert_eq!(report.to_text(), text);
        assert_eq!(report.verdict.exit_code(), code_json);
        let header = text.lines().next().unwrap();
        assert!(header.ends_with(report.verdict.as_str()), "{header}");
    }
}

#[test]
fn timing_is_opt_in() {
    let (plain, _) = stdout(&["verify", "lemma5", "--b", "3", "--format", "json"]);
    let (timed, _) = stdout(&["verify", "lemma5", "--b", "3", "--format", "json", "--timing"]);
    assert!(!plain.contains("elapsed_ms"));
    assert!(timed.contains("elapsed_ms"));
}

#[test]
fn single_row_sweep() {
    let (out, code) = stdout(&["sweep", "--from", "5", "--to", "5", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["b"], 5);
    assert_eq!(rows[0]["lambda"], "3/7");
    assert_eq!(rows[0]["singular"], false);
    assert_eq!(rows[0]["j"], "810448/441");
    assert_eq!(v["verdict"], "PASS");
}

#[test]
fn sweep_flags_b_equals_two() {
    let (out, code) = stdout(&["sweep", "--from", "2", "--to", "4", "--format", "json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["singular_b"], serde_json::json!([2]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(
        rows.iter().map(|r| r["b"].as_i64().unwrap()).collect::<Vec<_>>(),
        [2, 3, 4]
    );
    assert_eq!(rows[0]["theorem1"], "FAIL");
    assert_eq!(rows[0]["corollary1"], "PASS");
    assert!(rows[0]["j"].is_null());
    assert!(rows[1..].iter().all(|r| r["theorem1"] == "PASS"));
}

#[test]
fn sweep_rejects_bad_ranges() {
    skck().args(["sweep", "--from", "3", "--to", "2"]).assert().code(3);
    skck().args(["sweep", "--from", "1", "--to", "4"]).assert().code(3);
}

#[test]
fn check_file_stable() {
    let f = data("omega0.pres");
    let (out, code) = stdout(&["check-file", f.to_str().unwrap(), "--involution-stability"]);
    assert_eq!(code, 0);
    assert!(out.lines().last().unwrap().ends_with("STABLE"), "{out}");
}

#[test]
fn check_file_names_unstable_relations() {
    let f = data("sklyanin_beta.pres");
    let (out, code) = stdout(&[
        "check-file",
        f.to_str().unwrap(),
        "--involution-stability",
        "--format",
        "json",
    ]);
    assert_eq!(code, 1);
    let report = VerificationReport::from_json(&out).unwrap();
    let summary = report.steps.last().unwrap();
    assert_eq!(
        summary.detail.as_deref(),
        Some("UNSTABLE: relations 3, 4 map outside the ideal")
    );
}

#[test]
fn check_file_input_errors() {
    let f = data("not_involutive.pres");
    skck()
        .args(["check-file", f.to_str().unwrap(), "--involution-stability"])
        .assert()
        .code(3)
        .stderr(predicates::str::contains("not self-inverse"));
    skck().args(["check-file", "/nonexistent/file.pres"]).assert().code(3);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pres");
    std::fs::write(&bad, "GENERATORS\nx1, x2\nRELATIONS\nx1*(x2 - 1\n").unwrap();
    skck().args(["check-file", bad.to_str().unwrap()]).assert().code(3);
}

#[test]
fn check_file_prints_canonical_form() {
    let f = data("omega0.pres");
    let (first, code) = stdout(&["check-file", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let again = dir.path().join("again.pres");
    std::fs::write(&again, &first).unwrap();
    let (second, _) = stdout(&["check-file", again.to_str().unwrap()]);
    assert_eq!(first, second);
}
