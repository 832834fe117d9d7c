use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbar-lpt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn rationals(list: &Value, key: &str) -> Vec<String> {
    list.as_array()
        .unwrap()
        .iter()
        .map(|row| row[key].as_str().unwrap().to_string())
        .collect()
}

fn temp_config(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("hbar-lpt-{}-{name}.json", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn yukawa_coefficients() {
    let out = run(&["series", "--kind", "yukawa", "--g", "1", "--lambda", "1/10", "--count", "4"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(
        rationals(&v["coefficients"], "rational"),
        ["-1", "1/10", "-1/200", "1/6000", "-1/240000"]
    );
}

#[test]
fn coulomb_coefficients() {
    let out = run(&["series", "--kind", "coulomb", "--g", "2", "--count", "2", "--output", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "i,numerator,denominator,decimal");
    assert_eq!(&rows[1..], ["0,-2,1,-2.000000000000", "1,0,1,0.000000000000", "2,0,1,0.000000000000"]);
}

#[test]
fn custom_coefficients_echo_normalized() {
    let path = temp_config("custom", r#"{"potential": {"coeffs": ["-2/2", "2/20"]}}"#);
    let out = run(&["series", "--config", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["kind"], "custom");
    assert_eq!(rationals(&v["coefficients"], "rational"), ["-1", "1/10"]);
}

#[test]
fn coulomb_energies_vanish_beyond_leading_order() {
    let out = run(&["energies", "--kind", "coulomb", "--order", "5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(rationals(&v["states"][0]["energies"], "rational"), ["-1/2", "0", "0", "0", "0", "0"]);
}

#[test]
fn first_order_energy_is_v1() {
    let out = run(&["energies", "--kind", "yukawa", "--lambda", "1/10", "--order", "1"]);
    let v = json(&out);
    assert_eq!(rationals(&v["states"][0]["energies"], "rational"), ["-1/2", "1/10"]);
}

#[test]
fn yukawa_energies_match_frozen_output() {
    let out = run(&["energies", "--kind", "yukawa", "--g", "1", "--lambda", "1/10", "--order", "6", "--state", "0,0", "--state", "1,0"]);
    assert!(out.status.success());
    let frozen = include_str!("fixtures/yukawa_k6.json");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), frozen);
}

#[test]
fn table_flag_adds_laurent_grid() {
    let out = run(&["energies", "--kind", "hulthen", "--lambda", "1/10", "--order", "3", "--table"]);
    let v = json(&out);
    let table = v["states"][0]["table"].as_array().unwrap();
    assert_eq!(table.len(), 4);
    assert_eq!(table[1][0], "1");
    assert!(table.iter().all(|row| row.as_array().unwrap().len() == 4));
}

#[test]
fn config_file_and_flag_override() {
    let path = temp_config(
        "job",
        r#"{"potential": {"kind": "yukawa", "g": "1", "lambda": "1/10"}, "mass": "1",
            "states": [[0, 0], [1, 0]], "order": 2, "pade": [[1, 1]], "validate": false, "tol": 1e-6}"#,
    );
    let out = run(&["energies", "--config", path.to_str().unwrap(), "--order", "1"]);
    std::fs::remove_file(&path).ok();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["order"], 1);
    assert_eq!(v["states"].as_array().unwrap().len(), 2);
    assert_eq!(rationals(&v["states"][1]["energies"], "rational"), ["-1/8", "1/10"]);
}

#[test]
fn config_errors_exit_one() {
    let float_g = temp_config("float", r#"{"potential": {"kind": "yukawa", "g": 0.5}}"#);
    let unknown = temp_config("unknown", r#"{"potential": {"kind": "yukawa"}, "colour": 1}"#);
    for args in [
        vec!["energies", "--kind", "nope"],
        vec!["energies", "--lambda", "0.1", "--kind", "yukawa"],
        vec!["energies", "--state", "0"],
        vec!["energies", "--config", float_g.to_str().unwrap()],
        vec!["energies", "--config", unknown.to_str().unwrap()],
        vec!["energies", "--config", "/nonexistent/job.json"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
    std::fs::remove_file(&float_g).ok();
    std::fs::remove_file(&unknown).ok();
}

#[test]
fn insufficient_coefficients_exit_two() {
    let out = run(&["energies", "--coeffs", "-1,1/10", "--order", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("needs 4"), "{err}");
}

#[test]
fn coulomb_validation_is_tight() {
    let out = run(&["validate", "--kind", "coulomb", "--state", "0,0", "--state", "1,0", "--state", "0,1", "--tol", "1e-9"]);
    assert_eq!(out.status.code(), Some(0));
    for st in json(&out)["states"].as_array().unwrap() {
        assert_eq!(st["status"], "ok");
    }
}

#[test]
fn weak_yukawa_pade_validation() {
    let out = run(&["validate", "--kind", "yukawa", "--lambda", "1/100", "--pade", "3,3", "--state", "0,0", "--state", "1,0", "--tol", "1e-8"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    for st in json(&out)["states"].as_array().unwrap() {
        assert_eq!(st["method"], "pade[3/3]");
        let rel: f64 = st["rel_dev"].as_str().unwrap().parse().unwrap();
        assert!(rel <= 1e-8);
    }
}

#[test]
fn tolerance_exceeded_exits_three() {
    let out = run(&["validate", "--kind", "yukawa", "--lambda", "1/2", "--order", "2", "--tol", "1e-12"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["states"][0]["status"], "exceeds_tol");
}

#[test]
fn custom_potential_validation_unavailable() {
    let out = run(&["validate", "--coeffs", "-1,1/10,0", "--order", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["states"][0]["status"], "unavailable");
    assert!(v["states"][0]["message"].as_str().unwrap().contains("unavailable"));
}

#[test]
fn sum_reports_singular_pade_without_aborting() {
    // A Coulomb series is (-1/2, 0, 0, ...); [0/2] is fine, but an order
    // too short for the requested degrees is reported per entry.
    let out = run(&["sum", "--kind", "coulomb", "--order", "2", "--pade", "0,2", "--pade", "3,3"]);
    assert!(out.status.success());
    let v = json(&out);
    let pade = v["states"][0]["pade"].as_array().unwrap();
    assert_eq!(pade[0]["rational"], "-1/2");
    assert!(pade[1]["error"].is_string());
    assert!(pade[1]["rational"].is_null());
}

#[test]
fn states_keep_input_order() {
    let out = run(&["energies", "--kind", "yukawa", "--lambda", "1/5", "--order", "4", "--state", "3,1", "--state", "0,0", "--state", "1,2"]);
    let v = json(&out);
    let order: Vec<(u64, u64)> = v["states"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["n"].as_u64().unwrap(), s["l"].as_u64().unwrap()))
        .collect();
    assert_eq!(order, [(3, 1), (0, 0), (1, 2)]);
}
