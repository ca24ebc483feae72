//! End-to-end tests of the koorn binary: output shape, determinism, and
//! the 0/1/2 exit-code contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("koorn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("can create scratch directory");
    dir
}

fn write_config(name: &str, body: &str) -> PathBuf {
    let path = scratch_dir().join(name);
    std::fs::write(&path, body).expect("can write config");
    path
}

fn koorn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koorn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn rank1_config() -> PathBuf {
    write_config(
        "rank1.json",
        r#"{"rank":1,"sqrt_q":"3","k0":"2","u0":"5","k":"7","kr":"11","ur":"13","seed":9}"#,
    )
}

fn rank2_config() -> PathBuf {
    write_config(
        "rank2.json",
        r#"{"rank":2,"sqrt_q":"3","k0":"2","u0":"5","k":"7","kr":"11","ur":"13"}"#,
    )
}

#[test]
fn verify_passes_and_exits_zero() {
    let cfg = rank1_config();
    let out = koorn(&["verify", "--config", cfg.to_str().unwrap(), "--trials", "4"]);
    assert!(out.status.success(), "{:?}", out);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS hecke"));
    assert!(text.contains("overall: PASS"));
}

#[test]
fn verify_json_is_deterministic_for_fixed_seed() {
    let cfg = rank2_config();
    let args = [
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--trials",
        "3",
        "--seed",
        "5",
        "--format",
        "json",
    ];
    let a = koorn(&args);
    let b = koorn(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["seed"], 5);
    assert!(doc["checks"].as_array().unwrap().len() >= 8);
}

#[test]
fn orbit_reports_frozen_example() {
    let cfg = rank2_config();
    let out = koorn(&[
        "orbit",
        "--config",
        cfg.to_str().unwrap(),
        "--point",
        "3/4,0",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("basepoint: (1/4, 0)"), "{}", text);
    assert!(
        text.contains("minimal representative word: [0]"),
        "{}",
        text
    );
}

#[test]
fn orbit_rejects_wrong_dimension() {
    let cfg = rank2_config();
    let out = koorn(&["orbit", "--config", cfg.to_str().unwrap(), "--point", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn epoly_emits_monic_json() {
    let cfg = rank1_config();
    let out = koorn(&["epoly", "--config", cfg.to_str().unwrap(), "--point", "-1"]);
    assert!(out.status.success(), "{:?}", out);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["degree"][0], "-1");
    assert_eq!(doc["orbit_basepoint"][0], "0");
    let terms = doc["terms"].as_array().unwrap();
    let top = terms
        .iter()
        .find(|t| t["exponent"][0] == "-1")
        .expect("degree term present");
    assert_eq!(top["coeff"], "1");
}

#[test]
fn epoly_writes_output_file() {
    let cfg = rank1_config();
    let out_path = scratch_dir().join("e1.json");
    let out = koorn(&[
        "epoly",
        "--config",
        cfg.to_str().unwrap(),
        "--point",
        "1",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&out_path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(doc["degree"][0], "1");
}

#[test]
fn epoly_demands_torus_point_on_regular_orbit() {
    let cfg = rank2_config();
    let out = koorn(&[
        "epoly",
        "--config",
        cfg.to_str().unwrap(),
        "--point",
        "1/3,1/5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("supply t explicitly"), "{}", err);
}

#[test]
fn koornwinder_oracle_reports_match() {
    let cfg = rank1_config();
    let out = koorn(&[
        "koornwinder",
        "--config",
        cfg.to_str().unwrap(),
        "--degree",
        "-2",
        "--oracle",
    ]);
    assert!(out.status.success(), "{:?}", out);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["oracle_match"], true);
    // the unicode minus is accepted on input and normalized on output
    let out = koorn(&[
        "koornwinder",
        "--config",
        cfg.to_str().unwrap(),
        "--degree",
        "\u{2212}2",
        "--oracle",
        "--format",
        "text",
    ]);
    assert!(out.status.success(), "{:?}", out);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("match: true"), "{}", text);
}

#[test]
fn koornwinder_rejects_fractional_degree() {
    let cfg = rank1_config();
    let out = koorn(&[
        "koornwinder",
        "--config",
        cfg.to_str().unwrap(),
        "--degree",
        "1/2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_or_broken_config_is_a_usage_error() {
    let out = koorn(&["verify", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let bad = write_config("broken.json", "{\"rank\": 2");
    let out = koorn(&["verify", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let zero = write_config(
        "zero.json",
        r#"{"rank":1,"sqrt_q":"0","k0":"2","u0":"5","k":"7","kr":"11","ur":"13"}"#,
    );
    let out = koorn(&["verify", "--config", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = koorn(&["verify", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}
