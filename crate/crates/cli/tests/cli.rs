use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn gsd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsd"))
        .args(args)
        .env_remove("GSD_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = gsd(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn ghz_report() {
    let r = json(&["decompose", "ghz-ext", "0.7071", "0", "0", "0.7071"]);
    let d = &r["decomposition"];
    assert!((f(&d["g"]) - 0.5f64.sqrt()).abs() < 1e-9);
    assert!((f(&d["h"]) - 0.5f64.sqrt()).abs() < 1e-9);
    assert_eq!(r["teleportation_applicable"], true);
    assert_eq!(r["receiver_qubits"], serde_json::json!([1, 2, 3]));
    assert!(r["predicates"].as_array().unwrap().iter().all(|p| p["reduction_mixed"] == true));
}

#[test]
fn unnormalized_input_warns() {
    let out = gsd(&["decompose", "ghz-ext", "1", "0", "0", "1"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let out = gsd(&["decompose", "ghz-ext", "0.6", "0", "0", "0.8"]);
    assert!(out.stderr.is_empty(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn product_state_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("product3.json");
    fs::write(&path, r#"{"n": 3, "amps": [[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]}"#).unwrap();
    let r = json(&["decompose", "--state", path.to_str().unwrap()]);
    assert!((f(&r["decomposition"]["g"]) - 1.0).abs() < 1e-12);
    assert_eq!(r["classification"]["class"], "Product");
    assert!(r["predicates"].as_array().unwrap().iter().all(|p| p["separable"] == true));
    assert_eq!(r["teleportation_applicable"], false);
}

#[test]
fn classify_w3_symmetric_point() {
    let r = json(&["classify", "w3", "0.5", "0.5", "0.5", "0.5"]);
    assert_eq!(r["class"], "HighlyEntangled");
    // all r_x are 1/2 but every one-qubit reduction is completely mixed
    assert_eq!(r["region"], "SharedType1");
    assert!(f(&r["h"]) > 0.0);

    let r = json(&["classify", "w3", "0.9", "0.2", "0.3", "0.1"]);
    assert_eq!(r["class"], "SlightlyEntangled");
    assert_eq!(r["region"], "SlightA");
    assert_eq!(f(&r["h"]), 0.0);
}

#[test]
fn report_round_trip() {
    let dir = TempDir::new().unwrap();
    let state = dir.path().join("state.json");
    fs::write(
        &state,
        r#"{"n": 3, "amps": [[0.1,0.2],[0.3,-0.1],[0.0,0.4],[0.2,0.2],[-0.3,0.1],[0.1,0.0],[0.25,-0.2],[0.05,0.3]]}"#,
    )
    .unwrap();
    let report = dir.path().join("report.json");
    let out = gsd(&["decompose", "--state", state.to_str().unwrap(), "--json", "--out", report.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());

    let first: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let again = json(&["decompose", "--state", report.to_str().unwrap()]);
    // the re-ingested state matches the echoed input amplitude by amplitude
    let (a, b) = (&first["input"]["state"]["amps"], &again["input"]["state"]["amps"]);
    let mut overlap = (0.0, 0.0);
    for (x, y) in a.as_array().unwrap().iter().zip(b.as_array().unwrap()) {
        let (xr, xi, yr, yi) = (f(&x[0]), f(&x[1]), f(&y[0]), f(&y[1]));
        overlap.0 += xr * yr + xi * yi;
        overlap.1 += xr * yi - xi * yr;
    }
    let fidelity = overlap.0 * overlap.0 + overlap.1 * overlap.1;
    assert!(fidelity > 1.0 - 1e-9, "fidelity {fidelity}");
    assert!((f(&first["decomposition"]["g"]) - f(&again["decomposition"]["g"])).abs() < 1e-9);
}

#[test]
fn oracle_cross_check() {
    let r = json(&["decompose", "w3", "0.57735", "0.57735", "0.57735", "0", "--verify-oracle"]);
    let (g, oracle) = (f(&r["decomposition"]["g"]), f(&r["oracle_g"]));
    assert!((g - 2.0 / 3.0).abs() < 1e-9);
    assert!(oracle <= g + 1e-12 && g - oracle < 1e-6);
}

#[test]
fn enumerate_lists_w3_solutions() {
    let r = json(&["enumerate", "w3", "0.4", "0.5", "0.6", "0.3"]);
    let points = r["points"].as_array().unwrap();
    assert!(points.len() >= 5);
    let dominant: Vec<_> = points.iter().filter(|p| p["dominant"] == true).collect();
    assert_eq!(dominant.len(), 1);
    assert_eq!(dominant[0]["kind"], "Fifth");

    let r = json(&["enumerate", "w3", "0.4", "0.5", "0.6", "0.3", "--solver", "numeric"]);
    let g = f(&r["points"][0]["g"]);
    assert!((g - f(&dominant[0]["g"])).abs() < 1e-9);
}

#[test]
fn sweep_is_deterministic() {
    let a = gsd(&["sweep", "w3", "--grid", "6"]);
    let b = gsd(&["sweep", "w3", "--grid", "6"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# gsd sweep v1"));
    assert_eq!(lines.next().unwrap(), "a,b,c,d,g,t1,t2,t3,h,phi,region");
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 84);
    assert!(rows.iter().all(|r| r.split(',').count() == 11));

    let n1 = gsd(&["sweep", "w3", "--grid", "3", "--solver", "numeric", "--seed", "7"]);
    let n2 = Command::new(env!("CARGO_BIN_EXE_gsd"))
        .args(["sweep", "w3", "--grid", "3", "--solver", "numeric"])
        .env("GSD_SEED", "7")
        .output()
        .unwrap();
    assert!(n1.status.success());
    assert_eq!(n1.stdout, n2.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(gsd(&["decompose", "qutrit", "1", "2"]).status.code(), Some(2));
    assert_eq!(gsd(&["decompose", "w3", "1", "2"]).status.code(), Some(2));
    assert_eq!(gsd(&["decompose", "w3", "-1", "0", "0", "0"]).status.code(), Some(2));
    assert_eq!(gsd(&["frobnicate"]).status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"n\": 2, \"amps\": [[1, 0]").unwrap();
    assert_eq!(gsd(&["decompose", "--state", bad.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&bad, r#"{"n": 2, "amps": [[0,0],[0,0],[0,0],[0,0]]}"#).unwrap();
    assert_eq!(gsd(&["decompose", "--state", bad.to_str().unwrap()]).status.code(), Some(2));

    // one sweep cannot converge on a generic state
    let state = dir.path().join("state.json");
    fs::write(&state, r#"{"n": 3, "amps": [[0.3,0.1],[0.2,0],[0.1,0.4],[0,0.3],[0.5,0],[0.1,0.1],[0.2,0.3],[0.1,0.3]]}"#).unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"solver": {"max_iterations": 1, "restarts": 2}}"#).unwrap();
    let out = gsd(&["decompose", "--state", state.to_str().unwrap(), "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn twelve_significant_digits() {
    let out = gsd(&["decompose", "w3", "0.57735", "0.57735", "0.57735", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("g          0.666666666667\n"), "{text}");
}
