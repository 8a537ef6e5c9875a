use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fockcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn eval_vacuum_counit() {
    let out = fockcat(&["eval", "--expr", "vac ; e", "--dim", "3", "--cutoff", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rows"], 1);
    assert_eq!(v["data"][0][0].as_f64().unwrap(), 1.0);
}

#[test]
fn eval_with_bindings_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let phi = write(
        dir.path(),
        "phi.json",
        r#"{"rows":2,"cols":1,"data":[[1,0],[0,0]]}"#,
    );
    let out_path = dir.path().join("out.json");
    let out = fockcat(&[
        "eval",
        "--expr",
        "vac ; raise(phi) ; raise(phi)",
        "--env",
        &format!("phi={}", phi.display()),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(v["rows"], 10);
    // |2,0> sits at offset 3 in the d=2, N=3 layout
    let amp = v["data"][3][0].as_f64().unwrap();
    assert!((amp - 2f64.sqrt()).abs() < 1e-14);
}

#[test]
fn syntax_and_type_errors_exit_with_two() {
    let out = fockcat(&["eval", "--expr", "raise("]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 7"));
    let out = fockcat(&["eval", "--expr", "vac ; eps ; e"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vac ; eps ; e"));
    let out = fockcat(&["eval"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fockcat(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn coherent_norm_matches_partial_sum() {
    let dir = tempfile::tempdir().unwrap();
    let phi = write(
        dir.path(),
        "phi.json",
        r#"{"rows":1,"cols":1,"data":[[1,0]]}"#,
    );
    let out = fockcat(&["coherent", "--phi", phi.to_str().unwrap(), "--cutoff", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let norm = v["norm_sqr"].as_f64().unwrap();
    let oracle: f64 = (0..=10)
        .map(|n| 1.0 / (1..=n).product::<u64>() as f64)
        .sum();
    assert!((norm - oracle).abs() < 1e-12);
    assert!((norm - 2.7182818011).abs() < 1e-9);
}

#[test]
fn commutator_reports_inner_product() {
    let dir = tempfile::tempdir().unwrap();
    let phi = write(
        dir.path(),
        "phi.json",
        r#"{"rows":2,"cols":1,"data":[[1,0],[0,1]]}"#,
    );
    let psi = write(
        dir.path(),
        "psi.json",
        r#"{"rows":2,"cols":1,"data":[[0,1],[2,0]]}"#,
    );
    let out = fockcat(&[
        "commutator",
        "--phi",
        phi.to_str().unwrap(),
        "--psi",
        psi.to_str().unwrap(),
        "--cutoff",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    // <phi, psi> = conj(1) i + conj(i) 2 = -i
    assert!((v["inner_product"][0].as_f64().unwrap()).abs() < 1e-15);
    assert!((v["inner_product"][1].as_f64().unwrap() + 1.0).abs() < 1e-15);
    assert!(v["mixed_unrestricted"].as_f64().unwrap() > 1e-3);
}

#[test]
fn check_writes_a_deterministic_report() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = fockcat(&[
            "check",
            "--dims",
            "1,2",
            "--cutoffs",
            "2,3",
            "--seed",
            "7",
            "--report",
            p.to_str().unwrap(),
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let ra = std::fs::read(&a).unwrap();
    assert_eq!(ra, std::fs::read(&b).unwrap());
    let v: Value = serde_json::from_slice(&ra).unwrap();
    let reports = v.as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["passed"] == true));
}

#[test]
fn exp_of_elementwise_monoid() {
    let dir = tempfile::tempdir().unwrap();
    let monoid = write(
        dir.path(),
        "m.json",
        r#"{"carrier":{"dim":2,"structure":"base"},
            "mult":{"rows":2,"cols":4,"data":[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[1,0]]},
            "unit":{"rows":2,"cols":1,"data":[[1,0],[1,0]]}}"#,
    );
    let x = write(
        dir.path(),
        "x.json",
        r#"{"rows":2,"cols":1,"data":[[1,0],[0,0]]}"#,
    );
    let out = fockcat(&[
        "exp",
        "--monoid",
        monoid.to_str().unwrap(),
        "--element",
        x.to_str().unwrap(),
        "--order",
        "25",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert!((v["data"][0][0].as_f64().unwrap() - std::f64::consts::E).abs() < 1e-12);
    assert!((v["data"][1][0].as_f64().unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn exp_of_noncommutative_monoid_is_a_law_failure() {
    let dir = tempfile::tempdir().unwrap();
    // matrix algebra on C^2 flattened: mult(E_ij ⊗ E_kl) = δ_jk E_il
    let mut data = vec!["[0,0]"; 4 * 16];
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                let row = i * 2 + l;
                let col = (i * 2 + j) * 4 + (j * 2 + l);
                data[row * 16 + col] = "[1,0]";
            }
        }
    }
    let monoid = write(
        dir.path(),
        "m.json",
        &format!(
            r#"{{"carrier":{{"dim":4,"structure":"base"}},
                "mult":{{"rows":4,"cols":16,"data":[{}]}},
                "unit":{{"rows":4,"cols":1,"data":[[1,0],[0,0],[0,0],[1,0]]}}}}"#,
            data.join(",")
        ),
    );
    let x = write(
        dir.path(),
        "x.json",
        r#"{"rows":4,"cols":1,"data":[[0,0],[1,0],[0,0],[0,0]]}"#,
    );
    let out = fockcat(&[
        "exp",
        "--monoid",
        monoid.to_str().unwrap(),
        "--element",
        x.to_str().unwrap(),
        "--order",
        "5",
    ]);
    assert_eq!(
        out.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
