//! The `isolab` binary: documents, exit codes and reproducible output.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn isolab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isolab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn generate_theorem_5() {
    let out = isolab(&["generate", "--theorem", "5", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["kind"], "pvi_family");
    assert_eq!(doc["y"], "(1/2*x^3 - 2*x^2 + 1/2*x)/(x^3 - 3/2*x^2 - 3/2*x + 1)");
    assert_eq!(doc["provenance"]["theorem"], 5);
}

#[test]
fn generate_theorem_10() {
    let out = isolab(&["generate", "--theorem", "10", "--M", "2", "--m", "4", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let b: Vec<&str> = doc["b"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(b, ["-3/4*a1 + 1/4*a2 + 1/4", "1/4*a1 - 3/4*a2 + 1/4", "1/4*a1 + 1/4*a2 + 1/4", "1/4*a1 + 1/4*a2 - 3/4"]);
}

#[test]
fn theorem_5_hypothesis_is_named() {
    let out = isolab(&["generate", "--theorem", "5", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("3 divides n"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(isolab(&["generate", "--theorem", "9"]).status.code(), Some(2));
    assert_eq!(isolab(&["generate", "--theorem", "5"]).status.code(), Some(2));
    assert_eq!(isolab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(isolab(&["reproduce", "bogus"]).status.code(), Some(2));
    assert_eq!(isolab(&["generate", "--theorem", "5", "--n", "2", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn verify_theorem_6_family() {
    let out = isolab(&["verify", "--theorem", "6", "--n", "-2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["passed"], true);
    for check in report["checks"].as_array().unwrap() {
        assert_eq!(check["residual"], "0");
    }
}

#[test]
fn verify_round_trip_and_perturbation() {
    let good = scratch("thm6.json");
    let out = isolab(&["generate", "--theorem", "6", "--n", "-2", "--out", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(isolab(&["verify", good.to_str().unwrap()]).status.code(), Some(0));

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    let y = doc["y"].as_str().unwrap().to_string();
    doc["y"] = Value::String(format!("x + {y}"));
    let bad = scratch("thm6-perturbed.json");
    std::fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = isolab(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["passed"], false);
    assert_ne!(report["checks"][0]["residual"], "0");

    let junk = scratch("junk.json");
    std::fs::write(&junk, "{\"kind\": 3}").unwrap();
    assert_eq!(isolab(&["verify", junk.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_garnier_numeric() {
    let base = ["verify", "--theorem", "10", "--M", "2", "--m", "2", "--n", "1", "--numeric"];
    let out = isolab(&[&base[..], &["--a", "2.2,3.7", "--eps", "++++"]].concat());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checks"].as_array().unwrap().len(), 1);
    // a2 - a1 = 1 is degenerate for this solution
    let out = isolab(&[&base[..], &["--a", "2,3", "--eps", "++++"]].concat());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition"));
}

#[test]
fn verify_schlesinger_document() {
    let out = isolab(&["verify", "--theorem", "3", "--p", "3", "--N", "3", "--m", "3", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["subject"], "triangular_solution");
}

#[test]
fn verify_liouvillian() {
    let out = isolab(&["verify", "--theorem", "7", "--n", "1", "--b=-1/3", "--c", "1/3", "--numeric"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["checks"].as_array().unwrap().len(), 7);
}

#[test]
fn zeros_tables() {
    let out = isolab(&["zeros", "--n", "25", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("poly_id,degree,re,im,conjugate_paired,inversion_paired"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.iter().filter(|l| l.starts_with("P26,")).count(), 26);
    assert_eq!(rows.iter().filter(|l| l.starts_with("Q26,")).count(), 26);

    let out = isolab(&["zeros", "--n", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let p2: Vec<&str> = text.lines().filter(|l| l.starts_with("P2,")).collect();
    assert_eq!(p2, ["P2,2,-1.0,0.0,true,true", "P2,2,0.0,0.0,true,true"]);

    let out = isolab(&["zeros", "--n", "28", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 29 + 29);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true,true")));
}

#[test]
fn reproduce_every_example() {
    for id in ["example-1", "example-2", "example-3", "example-4", "example-8", "example-9"] {
        let out = isolab(&["reproduce", id]);
        assert_eq!(out.status.code(), Some(0), "{id}: {}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(json(&out)["passed"], true);
    }
}

#[test]
fn periods_report_and_matrix() {
    let args = ["periods", "--m", "3", "--n", "1", "--a", "0,1,2.1+0.9i"];
    let out = isolab(&args);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["rank"], 2);
    assert_eq!(report["case"], "punctured_at_infinity");
    let out = isolab(&[&args[..], &["--format", "csv"]].concat());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("row,col,re,im"));
    assert_eq!(text.lines().count(), 1 + 3 * 4);
    let out = isolab(&[&args[..], &["--trace", "1"]].concat());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("segment,t,z_re,z_im,w_re,w_im"));
}

#[test]
fn output_is_byte_identical() {
    for args in [
        vec!["generate", "--theorem", "6", "--n", "-3"],
        vec!["generate", "--theorem", "3", "--p", "3", "--N", "4", "--m", "2", "--n", "1"],
        vec!["zeros", "--n", "10", "--format", "csv"],
    ] {
        let first = isolab(&args).stdout;
        let second = Command::new(env!("CARGO_BIN_EXE_isolab"))
            .args(&args)
            .env("ISOLAB_THREADS", "1")
            .output()
            .unwrap()
            .stdout;
        assert!(!first.is_empty());
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn thread_count_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_isolab"))
        .args(["reproduce", "example-1"])
        .env("ISOLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file() {
    let path = scratch("example-3.json");
    let out = isolab(&["reproduce", "example-3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(doc["example"], "example-3");
}
