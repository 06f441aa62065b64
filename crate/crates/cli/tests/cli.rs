use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_jackht"));
    for (k, _) in std::env::vars() {
        if k.starts_with("JACKHT_") {
            c.env_remove(k);
        }
    }
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn error_of(o: &Output) -> Value {
    let v: Value = serde_json::from_slice(&o.stderr).expect("stderr is a JSON error");
    v["error"].clone()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jackht-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn transform_matches_closed_forms() {
    // κ = (1, 0, 0) at γ = 1: m₁ = κ₁ − γ/2, m₂ = (γ+1)κ₂ + …, m₃ by hand
    let v = json_ok(&["transform", "--dir", "k2m", "--gamma", "1", "--kappa", "[1,0,0]"]);
    assert_eq!(v["result"]["output"], serde_json::json!(["1/2", "7/3", "25/4"]));
    assert_eq!(v["tool"], "jackht");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn transform_round_trip_through_cli() {
    let m = json_ok(&["transform", "--dir", "k2m", "--gamma", "1/2", "--kappa", r#"["1/3", -2, "5/7", 1]"#]);
    let moments = serde_json::to_string(&m["result"]["output"]).unwrap();
    let k = json_ok(&["transform", "--dir", "m2k", "--gamma", "1/2", "--moments", &moments]);
    assert_eq!(k["result"]["output"], serde_json::json!(["1/3", "-2", "5/7", "1"]));
}

#[test]
fn fixed_temperature_routes_agree() {
    let a = json_ok(&["transform", "--dir", "k2m-inf", "--kappa", r#"[1, "1/2", -1, 2, 3]"#]);
    let b = json_ok(&["transform", "--dir", "k2m-lagrange", "--kappa", r#"[1, "1/2", -1, 2, 3]"#]);
    assert_eq!(a["result"]["output"], b["result"]["output"]);
    assert_eq!(a["result"]["gamma"], "inf");
}

#[test]
fn transform_csv() {
    let o = run(&["--format", "csv", "transform", "--dir", "k2m", "--gamma", "1", "--kappa", "[0,0]"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# jackht "));
    assert!(lines[0].contains("config_hash="));
    assert_eq!(&lines[1..], &["ell,value", "1,-1/2", "2,1/3"]);
}

#[test]
fn hecke_report() {
    let v = json_ok(&["verify", "hecke", "--N", "3", "--theta", "1/2"]);
    assert_eq!(v["result"]["residual_zero"], true);
    assert_eq!(v["result"]["relation"], "hecke");
    assert_eq!(v["result"]["N"], 3);
    assert!(v["result"]["counterexample"].is_null());
}

#[test]
fn other_verifications() {
    let v = json_ok(&["verify", "eigen", "--N", "2", "--theta", "1/3", "--max-size", "3"]);
    assert_eq!(v["result"]["residual_zero"], true);
    let v = json_ok(&["verify", "skew-cauchy", "--theta", "2", "--max-degree", "4"]);
    assert_eq!(v["result"]["residual_zero"], true);
    let v = json_ok(&[
        "verify", "stochastic", "--N", "2", "--theta", "1/2", "--lambda", "[1]", "--spec",
        r#"{"kind":"plancherel","delta":"1"}"#, "--jump-cutoff", "20",
    ]);
    assert_eq!(v["result"]["residual_zero"], true);
    let v = json_ok(&[
        "verify", "stochastic", "--N", "2", "--theta", "1/2", "--spec", r#"{"kind":"plancherel","delta":"4"}"#,
        "--jump-cutoff", "2",
    ]);
    assert_eq!(v["result"]["residual_zero"], false);
}

#[test]
fn jack_subcommands() {
    let v = json_ok(&["jack", "expand", "--lambda", "[2]", "--N", "2", "--theta", "1/2"]);
    let terms = v["result"]["terms"].as_array().unwrap();
    assert_eq!(terms[0]["key"], serde_json::json!([2, 0]));
    assert_eq!(terms[1]["coefficient"], "2/3");
    let v = json_ok(&["jack", "evaluate", "--lambda", "[2]", "--N", "3", "--theta", "1/2"]);
    assert_eq!(v["result"]["P_at_ones"], "5");
    let v = json_ok(&["jack", "lr", "--mu", "[1]", "--nu", "[1]", "--N", "2", "--theta", "1"]);
    assert_eq!(v["result"]["total"], "1");
    let v = json_ok(&["jack", "expand", "--lambda", "[0,-1]", "--N", "2", "--theta", "1"]);
    assert_eq!(v["result"]["terms"][0]["key"], serde_json::json!([0, -1]));
}

#[test]
fn sampling_and_tables() {
    let v = json_ok(&["--seed", "3", "sample", "--family", r#"{"family":"beta","c":"1","m":2}"#, "--N", "2", "--theta", "1", "--count", "20"]);
    let s = v["result"]["samples"].as_array().unwrap();
    assert_eq!(s.len(), 20);
    assert!(s.iter().all(|p| p.as_array().unwrap().iter().all(|x| x.as_u64().unwrap() <= 2)));
    let v = json_ok(&["sample", "--family", r#"{"family":"beta","c":"1/3","m":2}"#, "--N", "2", "--theta", "1/2", "--table"]);
    assert!((v["result"]["total_mass"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn chain_csv_schema() {
    let o = run(&["--seed", "5", "simulate-chain", "--spec", r#"{"kind":"pure_alpha","values":["1/3"]}"#, "--N", "3", "--theta", "1/2", "--steps", "4", "--jump-cutoff", "20"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# jackht"));
    assert_eq!(lines.next().unwrap(), "step,particle_index,L_value");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5 * 3);
    assert_eq!(rows[0], "0,1,0");
    assert_eq!(rows[1], "0,2,-0.5");
}

#[test]
fn preset_starts_from_the_packed_configuration() {
    let o = run(&["simulate-chain", "--preset", "gamma-half", "--steps", "2"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let first: Vec<&str> = text.lines().skip(2).take(60).collect();
    assert_eq!(first.len(), 60);
    // ℒ_i = θ(1 − i) with θ = 1/120
    assert_eq!(first[59], format!("0,60,{}", -59.0 / 120.0));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["--seed", "11", "sample", "--family", r#"{"family":"plancherel","t":"1"}"#, "--N", "4", "--theta", "1/4", "--count", "50"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mut with_workers = vec!["--workers", "1"];
    with_workers.extend_from_slice(&args);
    assert_eq!(run(&with_workers).stdout, a.stdout);

    let chain = ["--seed", "2", "simulate-chain", "--preset", "gamma2", "--steps", "3", "--trajectories", "2"];
    assert_eq!(run(&chain).stdout, run(&chain).stdout);
}

#[test]
fn seeds_change_samples() {
    let base = ["sample", "--family", r#"{"family":"plancherel","t":"2"}"#, "--N", "4", "--theta", "1/4", "--count", "30"];
    let mut a = vec!["--seed", "1"];
    a.extend_from_slice(&base);
    let mut b = vec!["--seed", "2"];
    b.extend_from_slice(&base);
    let (va, vb) = (json_ok(&a), json_ok(&b));
    assert_ne!(va["result"]["samples"], vb["result"]["samples"]);
    assert_ne!(va["config_hash"], vb["config_hash"]);
}

#[test]
fn environment_overrides() {
    let o = bin()
        .env("JACKHT_FORMAT", "csv")
        .args(["transform", "--dir", "k2m", "--gamma", "1", "--kappa", "[0]"])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().contains("ell,value"));
}

#[test]
fn validation_errors_exit_one() {
    let o = run(&["--no-such-flag"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["kind"], "usage");

    let o = run(&["transform", "--dir", "k2m", "--gamma", "0", "--kappa", "[1]"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["kind"], "invalid");

    let o = run(&["transform", "--dir", "k2m", "--kappa", "[0.5]"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["jack", "evaluate", "--lambda", "[1,2]", "--N", "2", "--theta", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn resource_caps_exit_two() {
    let kappa = format!("[{}]", vec!["1"; 16].join(","));
    let o = run(&["transform", "--dir", "k2m", "--gamma", "1", "--kappa", &kappa]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_of(&o)["kind"], "cap");

    let o = run(&["--degree-cap", "4", "jack", "expand", "--lambda", "[3,2]", "--N", "2", "--theta", "1"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["simulate-chain", "--spec", r#"{"kind":"plancherel","delta":"6"}"#, "--N", "2", "--theta", "1/2", "--steps", "1", "--jump-cutoff", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_of(&o)["kind"], "defect");
}

#[test]
fn lln_experiment_writes_report_and_rows() {
    let cfg = tmp("lln.json");
    std::fs::write(&cfg, r#"{"family":"plancherel","t":"1","gamma":"1","N":10,"samples":400,"L":3,"seed":4}"#).unwrap();
    let rows = tmp("rows.csv");
    let out = tmp("report.json");
    let o = run(&["lln", "--config", cfg.to_str().unwrap(), "--rows-csv", rows.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["result"]["cumulants"], serde_json::json!(["1", "0", "0"]));
    assert_eq!(v["result"]["status"], "pass");
    assert_eq!(v["config"]["resolved"]["experiment"]["N"], 10);
    let csv = std::fs::read_to_string(&rows).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("ell,predicted,"));
    assert_eq!(csv.lines().count(), 2 + 3);
    assert!(csv.starts_with(&format!("# jackht {} schema=1 config_hash={}", env!("CARGO_PKG_VERSION"), v["config_hash"].as_str().unwrap())));

    let again = tmp("report2.json");
    run(&["lln", "--config", cfg.to_str().unwrap(), "--out", again.to_str().unwrap()]);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn convolution_report() {
    let v = json_ok(&[
        "convolve", "--a", r#"[[[1], "1/2"], [[], "1/2"]]"#, "--b", r#"[[[2], 1]]"#, "--N", "2", "--theta", "1/2", "--degree", "3",
    ]);
    let r = &v["result"];
    assert_eq!(r["total_mass_one"], true);
    assert_eq!(r["jgf_product_exact"], true);
    assert_eq!(r["log_jgf_additive"], true);
    assert_eq!(r["cumulant_addition_exact"], true);

    let o = run(&["convolve", "--a", r#"[[[1], "1/2"]]"#, "--b", r#"[[[2], 1]]"#, "--N", "2", "--theta", "1/2"]);
    assert_eq!(o.status.code(), Some(1));
}
