//! Binary-level checks: exit-code conventions and JSON report behavior.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_classcount"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn exit_zero_on_pass() {
    let (code, stdout, _) = run(&["nearfield", "--p", "3", "--k", "1", "--n", "2", "--brute-force"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("overall: pass"));
}

#[test]
fn exit_two_on_dickson_violation() {
    let (code, _, stderr) = run(&["nearfield", "--p", "3", "--k", "1", "--n", "4"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("Dickson"));
}

#[test]
fn exit_two_on_bad_usage() {
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobenius", "--p", "7", "--t", "4"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["regular-subgroups", "--p", "37"]);
    assert_eq!(code, 2, "p > 31 without --extended is a usage error");
}

#[test]
fn exit_one_on_failed_check() {
    // the 3D4 scan honestly reports one more violation than the quoted list
    let (code, stdout, _) = run(&["scan", "--family", "3d4"]);
    assert_eq!(code, 1, "stdout: {stdout}");
    assert!(stdout.contains("FAIL"));
}

#[test]
fn json_report_round_trips() {
    let dir = std::env::temp_dir().join("classcount-test-report.json");
    let path = dir.to_str().unwrap();
    let (code, _, _) = run(&["frobenius", "--p", "13", "--t", "6", "--json", path]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(path).unwrap();
    let report = classcount_cli::report::VerificationReport::from_json(&text).unwrap();
    assert!(report.passed());
    assert_eq!(report.to_json(), text);
    // ids sorted, no timing fields by default
    let ids: Vec<&String> = report.checks.iter().map(|c| &c.id).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(report.checks.iter().all(|c| c.wall_ms.is_none()));
    std::fs::remove_file(path).ok();
}

#[test]
fn table34_lists_rows_and_quoted_table() {
    let (code, stdout, _) = run(&["table34", "--max-pd", "200"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    // generic rows: (11,1,2) has l = 45; Singer rows have l = p^d - 1
    assert!(stdout.contains("table34.row.pd0000121.p11.k1.n2"));
    assert!(stdout.contains("l = 45"));
    assert!(stdout.contains("table34.row.pd0000121.p11.k2.n1"));
    assert!(stdout.contains("l = 120"));
    // all seven quoted rows are echoed
    for p in [5, 7, 11, 23, 29, 59] {
        assert!(stdout.contains(&format!("table34.exceptional.p{p:02}")));
    }
    assert!(stdout.contains("l = 9"));
    assert!(stdout.contains("l = 35"));
    assert!(stdout.contains("l = 261"));
}

#[test]
fn scan_accepts_custom_windows() {
    let (code, stdout, _) = run(&["scan", "--family", "bc", "--q-max", "8", "--p-max", "50"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("(4, 5, 2)"));
}

#[test]
fn weyl_data_override() {
    let dir = std::env::temp_dir().join("classcount-weyl-alt.txt");
    std::fs::write(&dir, "e7.d4.torus 768 ? 2 quoted\n").unwrap();
    let (code, _, stderr) = run(&[
        "scan",
        "--family",
        "g2",
        "--data",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    std::fs::remove_file(&dir).ok();
}
