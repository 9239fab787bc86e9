use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramlock"))
        .args(args)
        .env_remove("RAMLOCK_BUDGET")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ramlock-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn bound_single_row() {
    let v = json(&["bound", "--p", "3", "--e", "1", "--r", "1", "--n", "1"]);
    assert_eq!(v, serde_json::json!([{"p": 3, "e": 1, "r": 1, "n": 1, "u": "5/2"}]));
}

#[test]
fn bound_grid_and_weight_zero() {
    let v = json(&["bound", "--p", "5", "--max-n", "2"]);
    // r in 0..p-1, n in 1..=2
    assert_eq!(v.as_array().unwrap().len(), 8);
    let v = json(&["bound", "--p", "5", "--r", "0"]);
    assert!(v.as_array().unwrap().iter().all(|row| row["u"] == "0"));
}

#[test]
fn bound_outside_range_is_input_error() {
    let out = run(&["bound", "--p", "3", "--r", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn breaks_of_each_tower() {
    let v = json(&["breaks", "--tower", "Fn"]);
    let row = &v[0];
    assert_eq!(row["u"], "5/2");
    assert_eq!(row["matches_closed_form"], true);

    let v = json(&["breaks", "--tower", "kummer"]);
    assert_eq!(v[0]["s_f"], "5/3");
    assert_eq!(v[0]["alpha_f"], "5/6");

    let v = json(&["breaks", "--tower", "cyclotomic", "--p", "5", "--n", "1"]);
    assert_eq!(v[0]["u"], "2");

    let v = json(&["breaks"]);
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn solve_bundled_weight_one() {
    let v = json(&["solve", "--bundled", "weight_one"]);
    assert_eq!(v["counts"][0]["count"], 1);
    assert_eq!(v["counts"][1]["count"], 3);
    assert_eq!(v["break"], "5/2");
    assert_eq!(v["bound"], "5/2");
    assert_eq!(v["verdict"], "bound respected, sharp");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys.last().unwrap().as_str(), "verdict");
}

#[test]
fn solve_from_module_file_matches_bundled() {
    let listed = json(&["modules"]);
    let module = listed
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["name"] == "weight_one_split")
        .unwrap()["module"]
        .clone();
    let path = scratch("split.json");
    std::fs::write(&path, module.to_string()).unwrap();
    let from_file = json(&["solve", "--module", path.to_str().unwrap()]);
    let bundled = json(&["solve", "--bundled", "weight_one_split"]);
    assert_eq!(from_file, bundled);
}

#[test]
fn malformed_module_is_input_error() {
    let path = scratch("bad.json");
    std::fs::write(&path, "{\"d\": 1, \"C\": ").unwrap();
    let out = run(&["solve", "--module", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve", "--bundled", "no_such_module"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_one() {
    let out = Command::new(env!("CARGO_BIN_EXE_ramlock"))
        .args(["solve", "--bundled", "weight_one"])
        .env("RAMLOCK_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("partial count"));
    let out = run(&["solve", "--bundled", "weight_one", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [&["breaks"][..], &["solve", "--bundled", "etale_twisted"], &["witt-polys", "--p", "3", "--n", "2"]] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn csv_and_output_file() {
    let path = scratch("bound.csv");
    let out = run(&["--format", "csv", "--output", path.to_str().unwrap(), "bound", "--r", "1", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "p,e,r,n,u\n3,1,1,1,5/2\n");

    let out = run(&["--format", "csv", "solve", "--bundled", "weight_one"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("field,count,target"));
    assert!(text.lines().any(|l| l == "break,5/2"));
    assert_eq!(text.lines().last(), Some("verdict,\"bound respected, sharp\""));
}

#[test]
fn pretty_adds_decimals() {
    let v = json(&["--pretty", "bound", "--r", "1", "--n", "1"]);
    assert_eq!(v[0]["u_decimal"], 2.5);
    let out = run(&["--pretty", "bound", "--r", "1", "--n", "1"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("\n  "));
}

#[test]
fn help_and_bad_flags() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["bound", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["breaks", "--tower", "nonsense"]).status.code(), Some(2));
}

#[test]
fn pj_bracket_on_default_grid() {
    let v = json(&["pj"]);
    let row = &v[0];
    assert_eq!(row["fails_at"], "5/2");
    assert_eq!(row["holds_at"], "8/3");
    assert_eq!(row["expected"], "5/2");
    assert_eq!(row["contains_expected"], true);
    assert_eq!(run(&["pj", "--step", "0"]).status.code(), Some(2));
    assert_eq!(run(&["pj", "--lo", "x"]).status.code(), Some(2));
}
