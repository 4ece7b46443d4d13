use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_steinberg-verify"))
}

#[test]
fn passing_suite_exits_zero_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = bin()
        .args(["--suite", "chevalley-relations", "--ring", "z/4", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["verdict"], "pass");
    assert_eq!(report["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn injected_fault_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = bin()
        .args(["--suite", "k2-exact", "--inject-fault", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["verdict"], "fail");
    let fault = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "injected-fault")
        .unwrap();
    assert_eq!(fault["failure_count"], 1);
    assert_eq!(fault["failures"][0]["word"], "x12(1)");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let run = || {
        bin()
            .args(["--suite", "tulenbaev-identities", "--ring", "z/6", "--samples", "5", "--seed", "3"])
            .output()
            .unwrap()
            .stdout
    };
    let a = run();
    assert!(!a.is_empty());
    assert_eq!(a, run());
}

#[test]
fn zero_samples_warns_about_vacuous_pass() {
    let out = bin()
        .args(["--suite", "tulenbaev-identities", "--ring", "z/6", "--samples", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let warnings = report["warnings"].as_array().unwrap();
    assert!(warnings.iter().any(|w| w.as_str().unwrap().contains("vacuous")));
}

#[test]
fn bad_configuration_exits_two() {
    let out = bin().args(["--suite", "no-such-suite"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["--suite", "chevalley-relations", "--ring", "q/7"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"{"suite": "chevalley-relations", "rings": ["z/4"], "systems": ["A2"]}"#).unwrap();
    let out = bin().arg("--config").arg(&path).output().unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["checks"][0]["ring"], "z/4");
    let out = bin().arg("--config").arg(&path).args(["--ring", "z/6"]).output().unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["checks"][0]["ring"], "z/6");
    std::fs::write(&path, r#"{"suite": "chevalley-relations", "colour": 1}"#).unwrap();
    assert_eq!(bin().arg("--config").arg(&path).output().unwrap().status.code(), Some(2));
}

#[test]
fn exact_policy_without_table_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(
        &path,
        r#"{"suite": "xeqy", "rings": ["f3"], "tier": "exact", "samples": 2, "max_cosets": 1000, "checks": ["xeqy"]}"#,
    )
    .unwrap();
    let out = bin().arg("--config").arg(&path).output().unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let c = &report["checks"][0];
    assert_eq!(c["tier"], "exact");
    assert!(c["inconclusive"].as_u64().unwrap() > 0);
    assert_eq!(report["verdict"], "fail");
    assert_eq!(out.status.code(), Some(1));
}
