use std::io::Write;

use assert_cmd::Command;
use predicates::prelude::*;
use serde_json::Value;

const A1: &str = "[0.3104, -0.4866, -0.2186, 0.2235]";

fn specnorm() -> Command {
    Command::cargo_bin("specnorm").unwrap()
}

fn json_of(cmd: &mut Command) -> Value {
    let out = cmd.assert().success().get_output().stdout.clone();
    serde_json::from_slice(&out).unwrap()
}

fn file_with(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn first_example_from_file() {
    let f = file_with(A1);
    let v = json_of(specnorm().args(["compute", "--d", "3", "--field", "complex,real", "--roots", "--coeffs"]).arg(f.path()));
    assert!((v["sigma_complex"].as_f64().unwrap() - 0.7027).abs() < 5e-4);
    assert!((v["sigma_real"].as_f64().unwrap() - 0.6205).abs() < 5e-4);
    assert_eq!(v["roots"].as_array().unwrap().len(), 5);
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
    assert_eq!(v["census"]["mu_reported"], 5);
}

#[test]
fn dicke_state() {
    let v = json_of(specnorm().args(["compute", "--dicke", "3", "2,1"]));
    assert!((v["sigma_complex"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-4);
    assert!((v["eta"].as_f64().unwrap() - 1.1699).abs() < 1e-4);
    assert_eq!(v["exceptional"]["kind"], "monomial");
}

#[test]
fn top_monomial_uses_generic_path() {
    let v = json_of(specnorm().args(["compute", "--d", "3", "--coeffs", "[0,0,0,1]"]));
    let r = &v["results"][0];
    assert!((r["sigma"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(r["method"], "generic");
    let w = &r["witness"];
    assert!(w[0][0].as_f64().unwrap().abs() < 1e-12 && w[0][1].as_f64().unwrap().abs() < 1e-12);
    let x1 = (w[1][0].as_f64().unwrap().powi(2) + w[1][1].as_f64().unwrap().powi(2)).sqrt();
    assert!((x1 - 1.0).abs() < 1e-12);
}

#[test]
fn floats_have_seventeen_significant_digits() {
    let out = specnorm().args(["compute", "--coeffs", A1]).assert().success().get_output().stdout.clone();
    let text = String::from_utf8(out).unwrap();
    let line = text.lines().find(|l| l.contains("\"sigma_complex\"")).unwrap();
    let num = line.split(':').nth(1).unwrap().trim().trim_end_matches(',');
    let digits: String = num.chars().filter(|c| c.is_ascii_digit()).collect();
    assert_eq!(digits.trim_start_matches('0').len(), 17, "{num}");
}

#[test]
fn report_round_trips_through_input_echo() {
    let first = specnorm().args(["compute", "--roots", "--coeffs", A1]).assert().success().get_output().stdout.clone();
    let v: Value = serde_json::from_slice(&first).unwrap();
    let echo = file_with(&v["input"].to_string());
    let second = specnorm().args(["compute", "--roots", "--coeffs"]).arg(echo.path()).assert().success().get_output().stdout.clone();
    assert_eq!(first, second);
}

#[test]
fn table_format() {
    specnorm()
        .args(["compute", "--coeffs", A1, "--roots", "--format", "table", "--field", "complex,real"])
        .assert()
        .success()
        .stdout(predicate::str::contains("lambda_q").and(predicate::str::contains("0.70270")));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["compute", "--coeffs", "[1, 2"],
        vec!["compute", "--d", "4", "--coeffs", "[1, 0, 0]"],
        vec!["compute", "--coeffs", "[[0,1],[1,0],[0,0],[0,0]]", "--field", "real"],
        vec!["compute", "--coeffs", "[0, 0, 0, 0]"],
        vec!["compute", "--dicke", "3", "1,1"],
        vec!["compute", "--coeffs", "/no/such/file.json"],
        vec!["compute", "--coeffs", A1, "--tol", "-1"],
        vec!["compute"],
        vec!["reproduce", "table9"],
    ] {
        specnorm().args(&args).assert().code(2).stderr(predicate::str::is_empty().not());
    }
}

#[test]
fn reproduce_targets() {
    specnorm().args(["reproduce", "table1"]).assert().success().stdout(predicate::str::contains("reference"));
    specnorm().args(["reproduce", "tables2to4"]).assert().success().stdout(predicate::str::contains("0 outside tolerance"));
    let out = specnorm().args(["reproduce", "appendixA", "--format", "json"]).assert().code(1).get_output().stdout.clone();
    let v: Value = serde_json::from_slice(&out).unwrap();
    let bad: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["ok"] == Value::Bool(false))
        .map(|r| r["item"].as_str().unwrap())
        .collect();
    assert_eq!(bad, ["A7 sigma_complex", "A7 sigma_real", "A13 excluded", "A14 excluded", "A17 real_roots"]);
}

#[test]
fn oracle_is_seeded() {
    let run = |seed: &str| specnorm().args(["oracle", "--coeffs", A1, "--seed", seed]).assert().success().get_output().stdout.clone();
    assert_eq!(run("5"), run("5"));
    let v: Value = serde_json::from_slice(&run("5")).unwrap();
    assert_eq!(v["oracle"][0]["seed"], 5);
    assert!((v["oracle"][0]["value"].as_f64().unwrap() - 0.7027).abs() < 1e-4);
}

#[test]
fn census_command() {
    let v = json_of(specnorm().args(["census", "--coeffs", "[1, 0, 0, 1]"]));
    assert_eq!(v["census"]["mu_reported"], 5);
    assert_eq!(v["census"]["finite_count"], 4);
    let v = json_of(specnorm().args(["census", "--dicke", "4", "2,2"]));
    assert_eq!(v["census"], Value::Null);
    assert_eq!(v["exceptional"]["kind"], "monomial");
}

#[test]
fn batch_preserves_order_and_reports_bad_lines() {
    let lines = [A1, "[0, 0, 0, 1]", "not json", r#"{"d": 4, "s": [0, 0, 0.4082482904638631, 0, 0]}"#, "[1, 0.5, 0.2]"];
    let f = file_with(&lines.join("\n"));
    let out = specnorm()
        .env("SPECNORM_THREADS", "3")
        .args(["compute", "--batch"])
        .arg(f.path())
        .assert()
        .code(2)
        .get_output()
        .stdout
        .clone();
    let text = String::from_utf8(out).unwrap();
    let got: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(got.len(), 5);
    assert_eq!(got[2]["line"], 3);
    assert_eq!(got[2]["exit_code"], 2);
    for (i, line) in lines.iter().enumerate().filter(|&(i, _)| i != 2) {
        let single = json_of(specnorm().args(["compute", "--coeffs", line]));
        assert_eq!(got[i], single, "line {}", i + 1);
    }
}

#[test]
fn batch_thread_setting_is_validated() {
    let f = file_with(A1);
    specnorm().env("SPECNORM_THREADS", "zero").args(["compute", "--batch"]).arg(f.path()).assert().code(2);
}
