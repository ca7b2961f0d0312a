use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn kmm(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kmm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const IDENTITY_3: &str = r#"{"rows":3,"cols":3,"data":[[1,0,0],[0,1,0],[0,0,1]]}"#;

#[test]
fn solve_identity() {
    let out = kmm(&["solve"], IDENTITY_3);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["format"], 1);
    assert_eq!(v["l"], 3);
    assert_eq!(v["o"], 3);
    assert_eq!(v["equal"], true);
    assert_eq!(v["selection"]["picks"].as_array().unwrap().len(), 3);
}

#[test]
fn format_tag_is_checked_on_input() {
    let tagged = r#"{"format":1,"rows":1,"cols":1,"data":[[1]]}"#;
    assert!(kmm(&["solve"], tagged).status.success());
    let wrong = r#"{"format":2,"rows":1,"cols":1,"data":[[1]]}"#;
    assert_eq!(kmm(&["solve"], wrong).status.code(), Some(2));
}

#[test]
fn verify_exhaustive_small() {
    let out = kmm(&["verify", "--exhaustive", "3"], "");
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["agree"], true);
    assert_eq!(v["checked"], 512);
}

#[test]
fn verify_random_sweep() {
    let out = kmm(&["verify", "--random", "30", "--n", "6", "--seed", "4"], "");
    assert!(out.status.success());
    assert_eq!(json(&out)["checked"], 30);
}

#[test]
fn verify_exhaustive_too_large_is_budget() {
    let out = kmm(&["verify", "--exhaustive", "5"], "");
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "budget");
}

#[test]
fn oracle_over_budget_exits_3() {
    let out = kmm(&["gen", "matrix", "--n", "12", "--seed", "1"], "");
    let text = String::from_utf8(out.stdout).unwrap();
    let out = kmm(&["oracle", "cover", "--budget-n", "6"], &text);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reduce_menger_on_identity() {
    let out = kmm(&["reduce", "menger"], r#"{"rows":2,"cols":2,"data":[[1,0],[0,1]]}"#);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["lambda"], 2);
    assert_eq!(v["kappa"], 2);
    assert_eq!(v["l"], 2);
    assert_eq!(v["o"], 2);
}

#[test]
fn gen_is_deterministic() {
    for kind in ["matrix", "graph", "set-system", "poset"] {
        let a = kmm(&["gen", kind, "--n", "6", "--seed", "11"], "");
        let b = kmm(&["gen", kind, "--n", "6", "--seed", "11"], "");
        assert!(a.status.success(), "{kind}");
        assert_eq!(a.stdout, b.stdout, "{kind}");
    }
}

#[test]
fn gen_zero_density_is_zero_matrix() {
    let v = json(&kmm(&["gen", "matrix", "--n", "4", "--density", "0"], ""));
    assert!(v["data"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(|x| x == 0));
}

#[test]
fn gen_bad_density_is_schema_error() {
    assert_eq!(kmm(&["gen", "matrix", "--n", "4", "--density", "1.5"], "").status.code(), Some(2));
}

#[test]
fn generated_poset_is_accepted_and_reduced() {
    let out = kmm(&["gen", "poset", "--n", "6", "--seed", "3"], "");
    let text = String::from_utf8(out.stdout).unwrap();
    let out = kmm(&["reduce", "dilworth"], &text);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["lambda"], v["kappa"]);
    assert_eq!(v["incidence_l"], v["incidence_o"]);
}

#[test]
fn cyclic_poset_is_rejected() {
    let out = kmm(&["oracle", "dilworth"], r#"{"n":2,"lt":[[1,2],[2,1]]}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(kmm(&["solve"], "not json").status.code(), Some(2));
    assert_eq!(kmm(&["solve"], r#"{"rows":2}"#).status.code(), Some(2));
    assert_eq!(kmm(&["solve"], r#"{"rows":1,"cols":1,"data":[[2]]}"#).status.code(), Some(2));
    assert_eq!(kmm(&["no-such-command"], "").status.code(), Some(2));
}

#[test]
fn eval_examples() {
    let v = json(&kmm(&["eval", "1 + 1"], ""));
    assert_eq!(v["value"], 2);
    let v = json(&kmm(&["eval", "forall i <= 3. i <= 3"], ""));
    assert_eq!(v["value"], true);
    assert_eq!(kmm(&["eval", "forall i. i = i"], "").status.code(), Some(2));
}

#[test]
fn diagonalize_reports_diagonal_form() {
    let v = json(&kmm(&["diagonalize"], r#"{"rows":3,"cols":3,"data":[[0,1,0],[0,0,1],[1,0,0]]}"#));
    assert_eq!(v["diagonal"], true);
}

#[test]
fn pretty_output_parses_the_same() {
    let a = json(&kmm(&["solve"], IDENTITY_3));
    let b = json(&kmm(&["solve", "--json-pretty"], IDENTITY_3));
    assert_eq!(a, b);
}
