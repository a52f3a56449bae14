use std::process::{Command, Output};

use elliptic_selberg::verify::CheckReport;

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selberg-verify")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn empty_suite_set_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("empty.json");
    std::fs::write(&cfg, r#"{"suites": []}"#).unwrap();
    let out = verify(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("passed 0/0"));
    let json = verify(&["--config", cfg.to_str().unwrap(), "--format", "json"]);
    let reports: Vec<CheckReport> = serde_json::from_slice(&json.stdout).unwrap();
    assert!(reports.is_empty());
}

#[test]
fn fixed_seed_reproduces_json_bytes() {
    let args = ["--suite", "core", "--seed", "1", "--count", "25", "--format", "json"];
    let a = verify(&args);
    let b = verify(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = verify(&["--suite", "core", "--seed", "2", "--count", "25", "--format", "json"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn json_schema_and_round_trip() {
    let out = verify(&["--suite", "det", "--count", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let first = &value.as_array().unwrap()[0];
    let mut keys: Vec<&str> = first.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    keys.sort();
    assert_eq!(keys, ["check_id", "lhs", "params", "pass", "rel_residual", "rhs", "runtime_ms"]);
    assert_eq!(first["lhs"].as_array().unwrap().len(), 2);
    assert!(first["params"][0]["name"].is_string() && first["params"][0]["value"].is_array());

    let reports: Vec<CheckReport> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports.len(), 6);
    let again = serde_json::to_value(&reports).unwrap();
    assert_eq!(again, value);
}

#[test]
fn text_report_has_one_line_per_check_and_a_summary() {
    let out = verify(&["--suite", "det", "--count", "2"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[4], "passed 4/4");
    assert!(lines[..4].iter().all(|l| l.starts_with("ok")));
}

#[test]
fn failing_check_exits_with_one() {
    let out = verify(&["--suite", "core", "--count", "3", "--tol", "core.gamma_shift=1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn configuration_errors_exit_with_two() {
    for args in [
        &["--suite", "nonsense"][..],
        &["--p-mod", "1.5"],
        &["--tol", "core.gamma_shift"],
        &["--tol", "core.gamma_shift=-1"],
        &["--count", "0"],
        &["--format", "yaml"],
        &["--config", "/nonexistent/config.json"],
    ] {
        let out = verify(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn output_file_and_unwritable_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = verify(&["--suite", "det", "--count", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("passed 4/4"));
    let reports: Vec<CheckReport> = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(reports.len(), 4);

    let bad = dir.path().join("missing").join("report.json");
    let out = verify(&["--suite", "det", "--count", "1", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"suites": ["core"], "seed": 3, "counts": {"core": 2}, "format": "json"}"#).unwrap();
    let file_only = verify(&["--config", cfg.to_str().unwrap()]);
    let reports: Vec<CheckReport> = serde_json::from_slice(&file_only.stdout).unwrap();
    assert_eq!(reports.len(), 8);

    let overridden = verify(&["--config", cfg.to_str().unwrap(), "--suite", "det", "--count", "1", "--format", "text"]);
    assert_eq!(stdout(&overridden).lines().last(), Some("passed 2/2"));
}

#[test]
fn timing_is_opt_in() {
    let plain = verify(&["--suite", "det", "--count", "2", "--format", "json"]);
    let reports: Vec<CheckReport> = serde_json::from_slice(&plain.stdout).unwrap();
    assert!(reports.iter().all(|r| r.runtime_ms == 0.0));
    let timed = verify(&["--suite", "det", "--count", "2", "--format", "json", "--timing"]);
    let reports: Vec<CheckReport> = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(reports.iter().any(|r| r.runtime_ms > 0.0));
}

#[test]
fn quadrature_cap_failures_are_reported_not_fatal() {
    let out = verify(&["--suite", "continuous", "--count", "1", "--quad-cap", "16", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let reports: Vec<CheckReport> = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&CheckReport> = reports.iter().filter(|r| !r.pass).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|r| r.error.as_deref().is_some_and(|e| e.contains("quadrature"))));
    assert!(failed.iter().all(|r| r.lhs.re.is_nan() && !r.params.is_empty()));
}
