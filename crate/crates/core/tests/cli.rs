//! End-to-end checks of the kplane binary: exit codes, output formats
//! and byte-level reproducibility for a fixed seed.

use std::process::{Command, Output};

fn kplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kplane"))
        .args(args)
        .output()
        .expect("failed to spawn kplane")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

#[test]
fn unknown_lemma_id_is_usage_error() {
    let out = kplane(&["verify", "bogus", "--n", "2", "--k", "1"]);
    assert_eq!(code(&out), 64);
    assert!(!out.stderr.is_empty());
}

#[test]
fn bad_parameters_are_usage_errors() {
    // k >= n is rejected by the library
    let out = kplane(&["verify", "lemma26", "--n", "2", "--k", "2", "--samples", "1000"]);
    assert_eq!(code(&out), 64);
    // missing required field argument is rejected by the parser
    let out = kplane(&["transform", "--n", "2", "--k", "1"]);
    assert_eq!(code(&out), 64);
    // lp and lorentz are mutually exclusive
    let out = kplane(&[
        "norm", "--n", "2", "--field", "ball:r=1", "--lp", "2", "--lorentz", "p=2,q=1",
    ]);
    assert_eq!(code(&out), 64);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&kplane(&["--help"])), 0);
    assert_eq!(code(&kplane(&["--version"])), 0);
}

#[test]
fn passing_verifier_exits_zero_with_json_report() {
    let out = kplane(&[
        "verify", "gram", "--n", "4", "--k", "2", "--samples", "500", "--seed", "7",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["lemma_id"], "gram");
    assert_eq!(v["verdict"], "pass");
    assert!(v["cases"].as_array().unwrap().len() > 1);
}

#[test]
fn csv_format_has_header() {
    let out = kplane(&[
        "verify", "gram", "--n", "3", "--k", "1", "--samples", "200", "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .any(|l| l == "desc,lhs,rhs,ratio,stderr,pass"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join("kplane_cli_out.json");
    let _ = std::fs::remove_file(&path);
    let out = kplane(&[
        "verify", "gram", "--n", "3", "--k", "2", "--samples", "200",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["lemma_id"], "gram");
    let _ = std::fs::remove_file(&path);
}

#[test]
fn transform_evaluates_diameter_of_disk() {
    // a line through the center of the unit disk meets it in a segment of length 2
    let out = kplane(&[
        "transform", "--n", "2", "--k", "1", "--field", "ball:r=1",
        "--through-origin", "--samples", "50000", "--seed", "3",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let value = v["value"].as_f64().unwrap();
    let stderr = v["stderr"].as_f64().unwrap();
    assert!((value - 2.0).abs() <= 3.0 * stderr + 1e-9);
}

#[test]
fn norm_matches_analytic_gaussian_l2() {
    let out = kplane(&[
        "norm", "--n", "2", "--field", "gauss:gamma=1", "--lp", "2",
        "--samples", "200000", "--seed", "5",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let value = v["value"].as_f64().unwrap();
    let want = 2.0f64.powf(-0.5);
    assert!((value - want).abs() <= 0.05 * want, "got {value}, want {want}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "verify", "lemma26", "--n", "3", "--k", "1", "--samples", "20000", "--seed", "9",
    ];
    let a = kplane(&args);
    let b = kplane(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
