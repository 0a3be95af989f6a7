use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn hyperalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperalg"))
        .args(args)
        .env_remove("HYPERALG_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn basis_check_passes_from_flags() {
    let out = hyperalg(&["--type", "G", "--rank", "2", "--p", "2", "--r", "2", "--check", "thm4.11-basis"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["config"]["type"], "G");
    assert_eq!(report["assertions"][0]["actual"], 512);
    for key in ["config", "pass", "assertions", "wall_ms", "version"] {
        assert!(report.get(key).is_some(), "missing {}", key);
    }
}

#[test]
fn equality_and_g2_membership() {
    let out = hyperalg(&["--type", "A2", "--p", "5", "--check", "prop4.6-equality"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);

    let out = hyperalg(&["--type", "G2", "--p", "3", "--check", "prop4.9-g2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let text = report.to_string();
    assert!(text.contains("3a1+2a2"), "{}", text);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let toml_path = dir.path().join("cfg.toml");
    fs::write(&toml_path, "check = \"thm4.11-basis\"\ntype = \"B\"\nrank = 2\np = 2\nr = 2\n").unwrap();
    let out_path = dir.path().join("report.json");
    let out = hyperalg(&[
        "--config",
        toml_path.to_str().unwrap(),
        "--r",
        "1",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["config"]["r"], 1);
    assert_eq!(report["assertions"][0]["actual"], 8);

    let json_path = dir.path().join("cfg.json");
    fs::write(&json_path, r#"{"check": "thm4.11-basis", "type": "C", "rank": 2, "p": 2}"#).unwrap();
    let out = hyperalg(&["--config", json_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["assertions"][0]["actual"], 8);
}

#[test]
fn reports_are_byte_identical_without_timing() {
    let args = ["--type", "B2", "--p", "2", "--r", "2", "--check", "thm4.11-minimal", "--no-timing"];
    let a = hyperalg(&args);
    let b = hyperalg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["wall_ms"], 0);
}

#[test]
fn budget_exhaustion_exits_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperalg"))
        .args(["--type", "G2", "--p", "3", "--r", "2", "--check", "thm4.11-basis"])
        .env("HYPERALG_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let report = json(&out);
    assert_eq!(report["pass"], false);
    assert!(report["reason"].as_str().unwrap().starts_with("budget"));
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        &["--type", "A2", "--check", "no-such-check"][..],
        &["--type", "B", "--check", "thm4.11-basis"][..],
        &["--type", "A2", "--p", "4", "--check", "thm4.11-basis"][..],
        &["--type", "A2"][..],
        &["--type", "A2", "--p", "2", "--check", "prop4.8-generates"][..],
    ] {
        let out = hyperalg(args);
        assert_eq!(out.status.code(), Some(2), "{:?}", args);
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"), "{:?}", args);
    }
}

#[test]
fn dump_tables_order_and_rootsys() {
    let out = hyperalg(&["dump", "tables", "--type", "B2", "--p", "2", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let t = json(&out);
    assert_eq!(t["theta"], serde_json::json!(["a1+2a2"]));
    assert_eq!(t["a"]["a1+2a2"], 1);
    assert_eq!(t["a"]["a1"], 2);

    let out = hyperalg(&["dump", "order", "--type", "G", "--rank", "2"]);
    let o = json(&out);
    assert_eq!(o["roots"], serde_json::json!(["a2", "a1+a2", "3a1+2a2", "2a1+a2", "3a1+a2", "a1"]));

    let out = hyperalg(&["dump", "rootsys", "--type", "A1"]);
    let r = json(&out);
    assert_eq!(r["positive_roots"].as_array().unwrap().len(), 1);

    let out = hyperalg(&["dump", "constants", "--type", "B2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stdout.is_empty());

    let out = hyperalg(&["dump", "weights", "--type", "B2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn list_prints_every_check() {
    let out = hyperalg(&["list"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().any(|l| l == "thm4.16/17-triangular"));
}
