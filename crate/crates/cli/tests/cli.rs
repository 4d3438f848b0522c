//! End-to-end tests of the binary: output shapes and the exit-code
//! contract (0 ok, 2 usage, 3 domain, 4 internal).

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_snakeforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_snakeforge"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn check_reports_the_worked_example() {
    let out = run(&["check", "4 5 1 3 2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("snake: yes"));
    assert!(text.contains("separable: yes"));
    assert!(text.contains("orientation: descending"));
    assert!(text.contains("((4 + 5) - (1 + (3 - 2)))"));
}

#[test]
fn check_handles_non_separable_input() {
    let out = run(&["check", "3 1 4 2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("separable: no"));
    assert!(text.contains("snake: yes"));
}

#[test]
fn check_emits_json() {
    let out = run(&["check", "1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["snake"], true);
    assert_eq!(v["separable"], true);
    assert_eq!(v["orientation"], "none");
}

#[test]
fn realize_round_trips_through_json() {
    let out = run(&["realize", "2 1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["witness_x"], "1/2");
    assert_eq!(v["verified_snake"], "2 1");
    assert_eq!(v["q"], "(-3/2*x)*y^2 + y^3");
    assert_eq!(v["critical_values"][1], "-1/16");
}

#[test]
fn realize_rejects_wrong_orientation_with_exit_3() {
    let out = run(&["realize", "1 2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("orientation"));
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(run(&["realize", "not a perm"]).status.code(), Some(2));
    assert_eq!(run(&["check", "1 1"]).status.code(), Some(2));
    assert_eq!(run(&["snake-of", "y^"]).status.code(), Some(2));
    // clap usage errors share the code
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn snake_of_extracts_the_intro_example() {
    let out = run(&["snake-of", "y^5 - 35/2*y^4 + 105*y^3 - 265*y^2 + 280*y"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("snake: 3 2 4 1"));
}

#[test]
fn snake_of_rejects_non_morse_with_exit_3() {
    let out = run(&["snake-of", "y^3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("critical point"));
}

#[test]
fn valuation_prints_both_methods() {
    let out = run(&[
        "valuation",
        "0",
        "x^4",
        "x^3 + x^4",
        "x^2 + x^3 + x^4",
        "x + x^2 + x^3 + x^4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("11"));
    let json = run(&[
        "valuation",
        "0",
        "x^4",
        "x^3 + x^4",
        "x^2 + x^3 + x^4",
        "x + x^2 + x^3 + x^4",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["rows"][2]["formula_valuation"], 11);
    assert_eq!(v["rows"][2]["oracle_valuation"], 11);
    assert_eq!(v["rows"][2]["side"], "above");
}

#[test]
fn valuation_rejects_unsorted_roots_with_exit_3() {
    let out = run(&["valuation", "x", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn enumerate_prints_the_census() {
    let out = run(&["enumerate", "--max-n", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("22"));
    assert!(text.contains("10"));

    let out = run(&["enumerate", "--max-n", "11"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_verifies_with_sampling() {
    let out = run(&[
        "enumerate",
        "--max-n",
        "5",
        "--verify",
        "--sample",
        "3",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[4]["n"], 5);
    assert_eq!(v[4]["verified_pass"], 3);
    assert_eq!(v[4]["verified_fail"], 0);
}

#[test]
fn plot_data_emits_csv() {
    let out = run(&["plot-data", "--poly", "y^2 - 2", "--samples", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "y,value");

    let zero = run(&["plot-data", "--poly", "y^2", "--samples", "0"]);
    assert_eq!(zero.status.code(), Some(2));

    let neither = run(&["plot-data", "--samples", "5"]);
    assert_eq!(neither.status.code(), Some(2));
}

#[test]
fn plot_data_covers_realized_critical_points() {
    let out = run(&[
        "plot-data",
        "--perm",
        "2 1",
        "--samples",
        "9",
        "--range",
        "-1/2:1",
        "--precision",
        "6",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 10);
    // Q at x* = 1/2 is y^3 - 3/4 y^2; at y = 1 the value is 1/4
    assert!(text.lines().last().unwrap().starts_with("1,0.25"));
}

#[test]
fn export_tree_json_and_dot() {
    let out = run(&["export-tree", "4 5 1 3 2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["sign"], "-");

    let dot = run(&["export-tree", "4 5 1 3 2", "--format", "dot"]);
    assert!(stdout(&dot).starts_with("digraph separating_tree"));

    let contact = run(&["export-tree", "4 5 1 3 2", "--kind", "contact"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&contact)).unwrap();
    assert_eq!(v["valuation"], 0);

    let bad = run(&["export-tree", "3 1 4 2"]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn witness_cap_env_var_is_honoured() {
    let out = run_env(&["realize", "2 1"], "SNAKEFORGE_MAX_HALVINGS", "0");
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("witness"));

    let bad = run_env(&["realize", "2 1"], "SNAKEFORGE_MAX_HALVINGS", "many");
    assert_eq!(bad.status.code(), Some(2));
}
