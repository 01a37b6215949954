//! End-to-end tests of the command-line interface.

use std::io::Write;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sci-tableau"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn valid_formula_exits_zero() {
    let output = cli(&["decide", "--mode", "valid", "(p == q) -> (p -> q)"]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    assert_eq!(stdout(&output).trim(), "valid");
}

#[test]
fn invalid_formula_exits_one_with_a_small_countermodel() {
    let output = cli(&["decide", "--mode", "valid", "~~p==p", "--model", "json"]);
    assert_eq!(output.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(json["verdict"], "invalid");
    let model = json["model"].as_object().unwrap();
    for key in ["universe", "designated", "neg", "impl", "ident", "valuation"] {
        assert!(model.contains_key(key), "missing {key}");
    }
    assert!(model["universe"].as_array().unwrap().len() <= 7);
}

#[test]
fn satisfiability_mode_reports_sat_and_unsat() {
    let output = cli(&["decide", "--mode", "sat", "p"]);
    assert_eq!(output.status.code(), Some(1));
    assert_eq!(stdout(&output).trim(), "sat");
    let output = cli(&["decide", "--mode", "sat", "p == ~p"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output).trim(), "unsat");
}

#[test]
fn parse_errors_exit_two() {
    let output = cli(&["decide", "p -> ("]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("parse error"), "{}", stderr(&output));
    let output = cli(&["decide"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn proof_dot_is_plain_graphviz() {
    let output = cli(&["decide", "p -> p", "--proof", "dot"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.starts_with("digraph proof {"), "{text}");
    assert!(text.trim_end().ends_with('}'));
}

#[test]
fn proof_dot_refuses_json_outputs() {
    let output = cli(&["decide", "p -> p", "--proof", "dot", "--stats"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn proof_json_and_stats_combine_into_one_document() {
    let output = cli(&[
        "decide", "--mode", "valid", "p == q -> (p -> q)", "--proof", "json", "--stats",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(json["verdict"], "valid");
    assert_eq!(json["proof"]["rule"], "root");
    assert_eq!(json["proof"]["kind"], "normal");
    let stats = json["stats"].as_object().unwrap();
    assert_eq!(stats["depth"], 7);
    assert_eq!(stats["size"], 11);
    let bound = stats["rule_application_bound"].as_u64().unwrap();
    for count in stats["branch_rule_applications"].as_array().unwrap() {
        assert!(count.as_u64().unwrap() <= bound);
    }
}

#[test]
fn oracle_flag_cross_checks() {
    let output = cli(&["decide", "--mode", "valid", "~~p == p", "--oracle"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("agrees"), "{}", stdout(&output));
}

#[test]
fn transform_flag_preserves_the_verdict() {
    let output = cli(&["decide", "--mode", "valid", "p == q -> (p -> q)", "--transform-t", "--oracle"]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    assert!(stdout(&output).starts_with("valid"));
}

#[test]
fn formulas_can_come_from_a_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "p -> p").unwrap();
    let output = cli(&["decide", "--file", file.path().to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn fuzz_is_deterministic_and_clean() {
    let args = ["fuzz", "--count", "100", "--atoms", "2", "--depth", "4", "--seed", "7"];
    let first = cli(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    assert!(
        stdout(&first).contains("checked: 100, disagreements: 0, errors: 0"),
        "{}",
        stdout(&first)
    );
    let second = cli(&args);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn bench_prints_a_depth_size_table() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# axioms").unwrap();
    writeln!(file, "p == q -> (p -> q)").unwrap();
    writeln!(file, "p == p").unwrap();
    let output = cli(&["bench", "--file", file.path().to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.lines().next().unwrap().contains("plain"), "{text}");
    assert!(text.lines().next().unwrap().contains("blocking"), "{text}");
    // Two data rows in depth/size form.
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].contains("7/11"), "{text}");
    for row in rows {
        assert!(row.contains('/'), "{row}");
        assert!(row.trim_end().ends_with("valid"), "{row}");
    }
}
