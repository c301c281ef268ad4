use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsq"))
        .args(args)
        .env_remove("FSQ_OUT_DIR")
        .output()
        .expect("fsq runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn qpoly_export_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    let out = fsq(&["export", "Qpoly", "--m", "3", "--k", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/qpoly_m3_k2.json");
    assert_eq!(std::fs::read_to_string(path).unwrap(), std::fs::read_to_string(golden).unwrap());
}

#[test]
fn golden_is_the_hand_computed_polynomial() {
    // Q_2 = x0^2 + (2/3) x0 (x1 e1 + x2 e2 + x3 e3) - (x1^2 + x2^2 + x3^2) / 3
    let golden: Value =
        serde_json::from_str(include_str!("golden/qpoly_m3_k2.json")).unwrap();
    let mut seen = Vec::new();
    for t in golden["polynomial"]["terms"].as_array().unwrap() {
        let exps: Vec<u64> = t["exps"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
        let c = &t["coeff"]["terms"].as_array().unwrap()[0];
        let blade: Vec<u64> = c["blade"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
        let expect = match (exps[0], exps[1..].iter().sum::<u64>()) {
            (2, 0) => (vec![], "1"),
            (1, 1) => (vec![1 + exps[1..].iter().position(|&e| e == 1).unwrap() as u64], "2/3"),
            (0, 2) => (vec![], "-1/3"),
            other => panic!("unexpected monomial {other:?}"),
        };
        assert_eq!((blade, c["re"].as_str().unwrap()), (expect.0, expect.1));
        seen.push(exps);
    }
    assert_eq!(seen.len(), 7);
}

#[test]
fn fueter_power_m3_l2_is_minus_four() {
    let out = fsq(&["export", "fueter_power", "--m", "3", "--power", "2"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    let t = &v["value"]["terms"][0];
    assert_eq!(t["exps"], serde_json::json!([0, 0, 0, 0]));
    assert_eq!(t["coeff"]["terms"][0]["re"], "-4");
}

#[test]
fn cauchy_m1_descriptor() {
    let v = json_of(&fsq(&["export", "cauchyE", "--m", "1"]));
    assert_eq!(v["kind"], "cauchyE");
    assert_eq!(v["closed_form"]["m"], 1);
}

#[test]
fn verify_writes_json_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_fsq"))
        .args(["verify", "gck", "--m", "4", "--degree", "0"])
        .env("FSQ_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 failed"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify_gck.json")).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["summary"]["passed"], true);
    assert!(v["cases"][0].get("elapsed_ms").is_none());
}

#[test]
fn verify_fueter_m2_reports_kernel_branch_for_zero_only() {
    let branch = |l: &str| {
        let out = fsq(&["verify", "fueter", "--m", "2", "--power", l]);
        assert!(out.status.success());
        let v = json_of(&out);
        v["cases"][0]["note"].as_str().unwrap_or_default().to_string()
    };
    assert_eq!(branch("0"), "branch kernel");
    assert_eq!(branch("1"), "branch positive");
    let out = fsq(&["verify", "fueter", "--m", "2", "--power", "-1"]);
    assert!(out.status.success());
}

#[test]
fn verify_is_deterministic() {
    let a = fsq(&["verify", "radon", "--m", "2", "--max-degree", "3", "--seed", "7"]);
    let b = fsq(&["verify", "radon", "--m", "2", "--max-degree", "3", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors() {
    assert_eq!(fsq(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(fsq(&["verify", "gck", "--m", "7"]).status.code(), Some(2));
    assert_eq!(fsq(&["verify", "gck", "--max-degree", "11"]).status.code(), Some(2));
    assert_eq!(fsq(&["export", "nothing", "--m", "2"]).status.code(), Some(2));
    let out = fsq(&["export", "Qpoly", "--m", "2", "--out", "/nonexistent/dir/q.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("No such file"));
}

#[test]
fn fueter_verb_with_laurent_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, r#"{"terms": [{"n": 4, "c": "1"}, {"n": 1, "c": "3"}]}"#).unwrap();
    let out = fsq(&["fueter", "--m", "3", "--laurent", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["result"]["m"], 3);
    let out = fsq(&["fueter", "--m", "3", "--power", "5"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["result"]["branch"], "positive");
}

#[test]
fn radon_and_cst_checks() {
    for rule in ["exact", "gauss:12", "mc:20000:3"] {
        let out = fsq(&["radon-check", "--m", "3", "--degree", "3", "--rule", rule]);
        assert!(out.status.success(), "{rule}");
        assert_eq!(json_of(&out)["passed"], true);
    }
    assert_eq!(fsq(&["radon-check", "--m", "3", "--degree", "3", "--rule", "simpson"]).status.code(), Some(2));
    let out = fsq(&["cst-check", "--m", "2", "--which", "unitarity", "--family", "hermite:3"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["quad_levels"].as_array().unwrap().len(), 2);
    assert!(v["residual"].as_f64().unwrap() < 1e-5);
    let out = fsq(&["cst-check", "--m", "3", "--which", "fueter-routes", "--family", "hermite:2", "--tol", "1e-7"]);
    assert!(out.status.success());
}
