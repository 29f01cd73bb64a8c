use std::process::{Command, Output};

use serde_json::Value;
use stableforms::exterior::parse_form;

fn run_with(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_stableforms"));
    cmd.args(args).env_remove("STABLEFORMS_RETRY_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_with(args, &[])
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).expect("valid json");
    (v, out.status.code().unwrap())
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn diag(c: &str, signs: [i32; 6]) -> Value {
    let rows: Vec<Vec<String>> = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| match (i == j, signs[i]) {
                    (false, _) => "0".to_string(),
                    (true, 1) => c.to_string(),
                    (true, _) => format!("-{c}"),
                })
                .collect()
        })
        .collect();
    serde_json::to_value(rows).unwrap()
}

const G2_OMEGA: &str = "a12*e12+a14*e14+a15*e15+a23*e23+a46*e46";

#[test]
fn parse_echoes_series_and_step() {
    let (v, code) = json(&["parse", "(0,0,12,13,14+23,34-25)"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "stableforms/1");
    assert_eq!(v["algebra"]["series_dims"], serde_json::json!([6, 4, 3, 2, 1, 0]));
    assert_eq!(v["algebra"]["step"], 5);
    assert_eq!(v["algebra"]["jacobi"], true);

    let (v, _) = json(&["parse", "(0,0)"]);
    assert_eq!(v["algebra"]["step"], 1);
    assert_eq!(v["algebra"]["brackets"], serde_json::json!([]));
}

#[test]
fn parse_errors_exit_2() {
    let out = run(&["parse", "(0,12)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("entry 2 references e^2"), "{}", stderr(&out));

    let out = run(&["parse", "(0,0,12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("position 7"), "{}", stderr(&out));
}

#[test]
fn analyze_g2_ricci_operator() {
    let (v, code) = json(&["analyze", "--algebra", "g2", "--omega", G2_OMEGA, "--subs", "a14=0"]);
    assert_eq!(code, 0);
    assert_eq!(v["ricci_operator"], diag("a46/(2*a15*a23)", [-1, -1, -1, 1, -1, 1]));
    assert_eq!(v["lambda"], "a46^4");
    assert_eq!(v["epsilon"], 1);
    assert_eq!(v["nijenhuis_zero"], false);
    assert_eq!(v["signature"], serde_json::json!([3, 3]));
    assert_eq!(v["pair"]["half_flat"], true);
}

#[test]
fn output_is_deterministic_and_key_sorted() {
    let args = ["analyze", "--algebra", "g2", "--omega", G2_OMEGA, "--format", "json"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    // serde_json's default map is ordered, so re-serializing sorts the keys
    let mut sorted = serde_json::to_string_pretty(&v).unwrap();
    sorted.push('\n');
    assert_eq!(String::from_utf8(a).unwrap(), sorted);

    let text = ["analyze", "--algebra", "g2", "--omega", G2_OMEGA];
    assert_eq!(run(&text).stdout, run(&text).stdout);
}

#[test]
fn reported_forms_round_trip() {
    let (v, _) = json(&["analyze", "--algebra", "g1", "--omega", "a13*e13+a14*e14+a46*e46+a56*e56"]);
    for key in ["omega", "d_omega"] {
        let text = v[key].as_str().unwrap();
        let form = parse_form(text, 6).unwrap();
        assert_eq!(form.to_string(), text);
    }
}

#[test]
fn degenerate_omega_reports_up_to_the_metric() {
    let out = run(&["analyze", "--algebra", "g5", "--omega", "e56", "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("metric stage"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["d_omega"], "-e126 + e345");
    assert_eq!(v["lambda"], "1");
    assert_eq!(v["J_or_P"], diag("1", [1, 1, -1, -1, -1, 1]));
    assert_eq!(v["failure"]["stage"], "metric");
}

#[test]
fn abelian_form_is_unstable() {
    let out = run(&["analyze", "--algebra", "abelian6", "--omega", "e12+e34+e56"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("structure stage"));
    assert!(stderr(&out).contains("unstable"));
}

#[test]
fn non_square_lambda_is_reported_symbolically() {
    let (v, code) = json(&["analyze", "--algebra", "g1", "--omega", "a16*e16+a46*e46+a56*e56"]);
    assert_eq!(code, 0);
    assert_eq!(v["J_or_P"], "K/sqrt(|lambda|)");
    assert_eq!(v["lambda"], "4*a16*a56^3+a46^4");
    assert!(v.get("metric").is_none());
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        &["analyze", "--algebra", "g2", "--omega", "a12*e12+"][..],
        &["analyze", "--algebra", "g2", "--omega", "e123"],
        &["analyze", "--algebra", "g7", "--omega", "e12"],
        &["analyze", "--algebra", "g2", "--omega", "e12", "--subs", "a14"],
        &["analyze", "--algebra", "g2", "--omega", "e12", "--sample-point", "a12=a13"],
        &["scenario", "run", "nope"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    let out = run(&["scenario", "run", "nope"]);
    assert!(stderr(&out).contains("unknown scenario `nope`"));
}

#[test]
fn retry_budget_and_sample_points() {
    let args = ["analyze", "--algebra", "g2", "--omega", G2_OMEGA, "--format", "json"];
    let out = run_with(&args, &[("STABLEFORMS_RETRY_BUDGET", "lots")]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_with(&args, &[("STABLEFORMS_RETRY_BUDGET", "0")]);
    assert_eq!(out.status.code(), Some(0));

    let (v, code) = json(&["analyze", "--algebra", "g2", "--omega", G2_OMEGA, "--sample-point", "a46=-1"]);
    assert_eq!(code, 0);
    for s in v["signature_samples"].as_array().unwrap() {
        assert_eq!(s["point"]["a46"], "-1");
    }
    assert_eq!(v["signature"], serde_json::json!([3, 3]));
}

#[test]
fn scenario_list_and_run() {
    let (v, code) = json(&["scenario", "list"]);
    assert_eq!(code, 0);
    assert_eq!(v["scenarios"].as_object().unwrap().len(), 13);
    assert_eq!(v["scenarios"]["g4_a56zero"], "g4");

    let (v, code) = json(&["scenario", "run", "g5_main"]);
    assert_eq!(code, 0);
    assert_eq!(v["all_match"], true);
    assert!(v.get("first_mismatch").is_none());
}

#[test]
fn scenario_substitution_gives_zero_scalar_curvature() {
    let (v, code) = json(&[
        "scenario",
        "run",
        "g1_opt1",
        "--subs",
        "a13=(a46^8+8*a56^6*a46*a14)/(8*a56^7)",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["analysis"]["scalar_curvature"], "0");
    assert_ne!(v["analysis"]["ricci"], diag("0", [1; 6]));
}

#[test]
fn scenario_mismatch_exits_4() {
    let out = run(&["scenario", "run", "g4_general", "--format", "json"]);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_match"], false);
    assert_eq!(v["first_mismatch"], "scalar_curvature[a46^2-a56^2>0]");
    assert!(stderr(&out).contains("mismatch in scalar_curvature"));
}
