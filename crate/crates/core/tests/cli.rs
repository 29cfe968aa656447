use std::process::Command;

use zeta_gb::audit::AuditReport;
use zeta_gb::cli::{run_with_io, CountOutput, EvalOutput, EPS_ENV};
use zeta_gb::records::{parse_csv, parse_jsonl, write_csv, write_jsonl, CSV_HEADER};

fn run(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("zeta-gb").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with_io(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zeta-gb"))
}

#[test]
fn eval_zeta_two_as_json() {
    let (code, out, _) = run(&["eval", "--re", "2", "--im", "0", "--eps", "1e-10", "--format", "json"]);
    assert_eq!(code, 0);
    let v: EvalOutput = serde_json::from_str(&out).unwrap();
    assert!((v.value_re - 1.6449340668).abs() < 1e-10);
    assert!(v.remainder_bound <= 1e-10);
    assert!(!v.params_override);
    assert_eq!(serde_json::to_string(&v).unwrap(), out);
}

#[test]
fn zeros_csv_has_three_rows() {
    let (code, out, _) = run(&["zeros", "--t-min", "0", "--t-max", "30", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some(CSV_HEADER));
    let recs = parse_csv(&out).unwrap();
    assert_eq!(recs.len(), 3);
    assert!((recs[0].t - 14.134725).abs() < 1e-6);
    assert_eq!(write_csv(&recs), out);
}

#[test]
fn csv_and_json_agree_digit_for_digit() {
    let (_, csv, _) = run(&["zeros", "--t-min", "10", "--t-max", "26", "--format", "csv"]);
    let (_, json, _) = run(&["zeros", "--t-min", "10", "--t-max", "26", "--format", "json"]);
    let a = parse_csv(&csv).unwrap();
    let b = parse_jsonl(&json).unwrap();
    assert_eq!(a, b);
    assert_eq!(write_jsonl(&a), json);
    for (row, line) in csv.lines().skip(1).zip(json.lines()) {
        for field in row.split(',').take(6) {
            assert!(line.contains(field), "{field} not in {line}");
        }
    }
}

#[test]
fn count_prints_three() {
    let (code, out, _) = run(&["count", "--sigma-min", "0.01", "--sigma-max", "0.99", "--t-min", "0.1", "--t-max", "30"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "3");
    let (_, json, _) = run(&[
        "count", "--sigma-min", "0.01", "--sigma-max", "0.49", "--t-min", "0.1", "--t-max", "30", "--format", "json",
    ]);
    let c: CountOutput = serde_json::from_str(&json).unwrap();
    assert_eq!(c.zeros, 0);
    assert_eq!(serde_json::to_string(&c).unwrap(), json);
}

#[test]
fn count_through_a_zero_is_inconclusive() {
    let (code, _, err) = run(&[
        "count", "--sigma-min", "0.2", "--sigma-max", "0.8", "--t-min", "10", "--t-max", "14.134725141734695",
    ]);
    assert_eq!(code, 4, "{err}");
    assert!(err.contains("expand the rectangle"));
}

#[test]
fn audit_report_round_trips() {
    let (code, out, err) = run(&["audit", "--t-min", "0", "--t-max", "30", "--format", "json"]);
    assert_eq!(code, 0, "{err}");
    assert!(err.contains("PASS"));
    let report = AuditReport::from_json(&out).unwrap();
    assert!(report.complete && report.all_passed());
    assert_eq!(report.zero_checks.len(), 3);
    assert_eq!(report.to_json(), out);
    let (_, again, _) = run(&["audit", "--t-min", "0", "--t-max", "30", "--format", "json"]);
    assert_eq!(again, out);
}

#[test]
fn audit_rejects_csv() {
    let (code, _, _) = run(&["audit", "--t-min", "0", "--t-max", "30", "--format", "csv"]);
    assert_eq!(code, 2);
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(run(&["zeros", "--t-min", "5", "--t-max", "1"]).0, 2);
    assert_eq!(run(&["eval", "--re", "0.5", "--im", "600"]).0, 2);
    assert_eq!(run(&["eval", "--re", "2", "--N", "0", "--nu", "3"]).0, 2);
    assert_eq!(run(&["eval"]).0, 2);
    assert_eq!(run(&["eval", "--re", "2", "--bogus"]).0, 2);
}

#[test]
fn fail_on_refine_is_opt_in() {
    // |ζ(1/2 + it)| has a non-zero local minimum near t = 2.5
    let (code, out, err) = run(&["zeros", "--t-min", "0", "--t-max", "5", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, format!("{CSV_HEADER}\n"));
    assert!(err.contains("failed to refine"));
    let (code, _, _) = run(&["zeros", "--t-min", "0", "--t-max", "5", "--fail-on-refine"]);
    assert_eq!(code, 5);
    let (code, _, _) = run(&["zeros", "--t-min", "10", "--t-max", "30", "--fail-on-refine"]);
    assert_eq!(code, 0);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.csv");
    let status = binary()
        .args(["zeros", "--t-min", "0", "--t-max", "30", "--format", "csv", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(status.status.success());
    assert!(status.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(parse_csv(&text).unwrap().len(), 3);
}

#[test]
fn default_eps_from_environment() {
    let eval = |env: Option<&str>| {
        let mut cmd = binary();
        cmd.args(["eval", "--re", "0.5", "--im", "20", "--format", "json"]).env_remove(EPS_ENV);
        if let Some(v) = env {
            cmd.env(EPS_ENV, v);
        }
        cmd.output().unwrap()
    };
    let loose: EvalOutput = serde_json::from_slice(&eval(None).stdout).unwrap();
    let tight: EvalOutput = serde_json::from_slice(&eval(Some("1e-12")).stdout).unwrap();
    assert!(loose.remainder_bound <= 1e-8);
    assert!(tight.remainder_bound <= 1e-12);
    assert!(tight.n > loose.n || tight.nu > loose.nu);
    assert_eq!(eval(Some("nope")).status.code(), Some(2));
}
