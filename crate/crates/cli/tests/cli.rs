use std::process::{Command, Output};

use serde_json::Value;

fn hk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hk")).args(args).output().expect("failed to spawn hk")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is not JSON")
}

fn column(v: &Value, key: &str) -> Vec<Value> {
    v["rows"].as_array().unwrap().iter().map(|r| r[key].clone()).collect()
}

#[test]
fn compute_elliptic_curve() {
    let out = hk(&["compute", "--prime", "5", "--vars", "x,y,z", "--poly", "y^2*z - x^3 - x*z^2", "--q", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(column(&v, "hk"), [55]);
    assert_eq!(column(&v, "maximal_rank"), [true]);
}

#[test]
fn compute_cayley_surface_rows_sorted() {
    let out = hk(&[
        "compute",
        "--prime",
        "3",
        "--vars",
        "x,y,z,w",
        "--poly",
        "x*y*z + x*y*w + x*z*w + y*z*w",
        "--q",
        "3,1,2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(column(&v, "q"), [1, 2, 3]);
    assert_eq!(column(&v, "hk"), [1, 14, 51]);
}

#[test]
fn parse_error_exits_2() {
    let out = hk(&["compute", "--prime", "3", "--vars", "x,y", "--poly", "x^", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn inhomogeneous_input_exits_3() {
    let out = hk(&["compute", "--prime", "3", "--vars", "x,y", "--poly", "x^2 + y", "--q", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_cayley() {
    let out = hk(&["verify", "--family", "cayley", "--prime", "5", "--qmax", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(column(&v, "match"), vec![Value::Bool(true); 8]);
}

#[test]
fn verify_nodal_at_frobenius_powers() {
    let out = hk(&["verify", "--family", "nodal", "--prime", "7", "--qmax", "49"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(column(&v, "q"), [7, 49]);
    assert_eq!(column(&v, "formula"), column(&v, "hk"));
}

#[test]
fn verify_characteristic_mismatch_exits_3() {
    let out = hk(&["verify", "--family", "elliptic_odd", "--prime", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_mismatch_exits_4() {
    // the closed form exceeds q^3 = 8 at q = 2
    let out = hk(&["verify", "--family", "elliptic_char2_j0", "--prime", "2", "--qmax", "4"]);
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    assert_eq!(column(&v, "match"), [false, true]);
}

#[test]
fn beta_list() {
    let out = hk(&["beta", "--nmax", "6", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let values: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(values, ["1", "1", "3/4", "2/3", "115/192", "11/20"]);
}

#[test]
fn hankel_mod_7() {
    let out = hk(&["hankel", "--kmax", "10", "--prime", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let holds = column(&v, "holds");
    assert_eq!(holds.len(), 20);
    assert!(holds.iter().all(|h| h == &Value::Bool(true)));
}

#[test]
fn hankel_even_modulus_exits_3() {
    assert_eq!(hk(&["hankel", "--kmax", "3", "--prime", "2"]).status.code(), Some(3));
}

#[test]
fn bound_table_entry() {
    let out = hk(&["bound", "--n", "2", "--d", "3", "--q", "4"]);
    let v = json(&out);
    assert_eq!(column(&v, "m"), [5]);
    assert_eq!(column(&v, "L"), ["34"]);
}

#[test]
fn identical_runs_differ_only_in_timing() {
    let args = ["verify", "--family", "cuspidal", "--prime", "5", "--qmax", "6"];
    let mut a = json(&hk(&args));
    let mut b = json(&hk(&args));
    a.as_object_mut().unwrap().remove("timing_ms");
    b.as_object_mut().unwrap().remove("timing_ms");
    assert_eq!(a, b);
    let csv = |args: &[&str]| hk(&[args, &["--format", "csv"]].concat()).stdout;
    assert_eq!(csv(&args), csv(&args));
}

#[test]
fn sequential_matches_parallel() {
    let args = [
        "compute",
        "--prime",
        "3",
        "--vars",
        "x,y,z",
        "--poly",
        "x^3 + y^3 + z^3 + x*y*z",
        "--q",
        "4,9",
        "--format",
        "csv",
    ];
    let par = hk(&args).stdout;
    let seq = hk(&[&args[..], &["--sequential"]].concat()).stdout;
    assert_eq!(par, seq);
}

#[test]
fn property_suite_seed_is_reproducible() {
    let a = hk(&["properties", "--seed", "7", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    let b = hk(&["properties", "--seed", "7", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().lines().count() > 50);
}
