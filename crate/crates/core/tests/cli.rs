//! End-to-end runs of the `elliquot` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn elliquot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elliquot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn decompose_seven_three() {
    let out = elliquot(&["decompose", "7", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["entries"], serde_json::json!([3, 2, 2]));
    assert_eq!(v["sigma_generators"], serde_json::json!([2, 3]));
}

#[test]
fn structure_from_explicit_generators() {
    let out = elliquot(&["structure", "--g-plus-1", "6", "--generators", "1,3,4,5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["sizes"], serde_json::json!([2, 4]));
    assert_eq!(v["galois"], serde_json::json!([4, 4]));
    assert_eq!(v["j_empty"], true);
}

#[test]
fn verification_passes_and_is_reproducible() {
    let args = [
        "report",
        "--n",
        "7",
        "--k",
        "3",
        "--samples",
        "10",
        "--seed",
        "4",
        "--torsion-level",
        "3",
    ];
    let a = elliquot(&args);
    let b = elliquot(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["pass"], true);
    assert!(json(&a).get("wall_time_ms").is_none());

    let timed = elliquot(&["verify-cover", "--n", "5", "--k", "2", "--samples", "3", "--timing"]);
    assert!(json(&timed)["wall_time_ms"].is_u64());
}

#[test]
fn lift_with_explicit_translation() {
    let ok = elliquot(&["verify-lift", "--n", "5", "--k", "2", "--t", "1/2,0/1;1/4,0/1;1/4,0/1"]);
    assert_eq!(ok.status.code(), Some(0));
    // not constant on the block {2, 3}
    let bad = elliquot(&["verify-lift", "--n", "5", "--k", "2", "--t", "1/2,0/1;1/3,0/1;1/4,0/1"]);
    assert_ne!(bad.status.code(), Some(0));
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(elliquot(&["decompose", "4", "2"]).status.code(), Some(2));
    assert_eq!(
        elliquot(&["verify-cover", "--n", "7", "--k", "3", "--samples", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(elliquot(&["structure", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn output_file_and_sweep() {
    let path = std::env::temp_dir().join(format!("elliquot-sweep-{}.json", std::process::id()));
    let out = elliquot(&["sweep", "--n-max", "6", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let rows: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    // coprime pairs 1 <= k < n <= 6
    assert_eq!(rows.as_array().unwrap().len(), 1 + 2 + 2 + 4 + 2);
}
