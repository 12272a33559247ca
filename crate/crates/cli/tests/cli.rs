use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use reptor_cli::regress::{default_corpus, run_corpus};
use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    default_corpus().join(name)
}

fn reptor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reptor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("reptor-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    dir
}

#[test]
fn bundled_corpus_passes() {
    let results = run_corpus(&default_corpus()).unwrap();
    assert!(results.len() >= 25);
    let failed: Vec<_> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{}: {}", r.name, r.detail))
        .collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn regress_command_exit_codes() {
    let o = reptor(&["regress"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("0 failed"));

    let dir = scratch("bad-corpus");
    fs::create_dir_all(&dir).unwrap();
    let mut spec: Value =
        serde_json::from_str(&fs::read_to_string(corpus("check_circle.json")).unwrap()).unwrap();
    spec["expect"]["vanishing_bound"] = Value::from(7);
    fs::write(dir.join("wrong.json"), spec.to_string()).unwrap();
    let o = reptor(&["regress", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL wrong.json"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn check_example() {
    let o = reptor(&[
        "check",
        corpus("check_su3_trivial_circle.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout_json(&o);
    assert_eq!(r["classification"]["verdict"], "Strict");
    assert_eq!(r["intersection_rank"], 0);
    assert_eq!(r["vanishing_bound"], 1);
}

#[test]
fn reports_are_byte_identical() {
    let path = corpus("tor_su3_trivial_circle.json");
    let a = reptor(&["tor", path.to_str().unwrap(), "--seed", "5"]);
    let b = reptor(&["tor", path.to_str().unwrap(), "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(reptor(&["check"]).status.code(), Some(1));
    assert_eq!(reptor(&["frobnicate"]).status.code(), Some(1));
    let spec = corpus("check_circle.json");
    assert_eq!(
        reptor(&["check", spec.to_str().unwrap(), "--field", "r"])
            .status
            .code(),
        Some(1)
    );
    let o = reptor(&["check", "/definitely/missing.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["status"], "error");
    assert_eq!(reptor(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_override_exits_two() {
    let spec = corpus("tor_su3_torus_pair.json");
    let o = reptor(&["tor", spec.to_str().unwrap(), "--max-spairs", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout_json(&o)["status"], "inconclusive");
}

#[test]
fn several_specs_and_out_directory() {
    let a = corpus("ktheory_circle.json");
    let b = corpus("ktheory_refuses_neither.json");
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());

    let o = reptor(&["ktheory", a, b, "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let reports = stdout_json(&o);
    assert_eq!(reports.as_array().unwrap().len(), 2);
    assert_eq!(reports[0]["status"], "ok");
    assert_eq!(reports[1]["status"], "error");

    let dir = scratch("out");
    let o = reptor(&["ktheory", a, b, "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let written: Value =
        serde_json::from_str(&fs::read_to_string(dir.join("ktheory_circle.ktheory.json")).unwrap())
            .unwrap();
    assert_eq!(written["ktheory"]["k1"]["exact"]["z_rank"], 1);
    assert!(dir.join("ktheory_refuses_neither.ktheory.json").exists());

    let single = dir.join("single.json");
    assert_eq!(
        reptor(&["ktheory", a, "--out", single.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    assert!(single.is_file());
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn timing_only_on_request() {
    let spec = corpus("check_circle.json");
    let plain = stdout_json(&reptor(&["check", spec.to_str().unwrap()]));
    assert!(plain["diagnostics"].get("elapsed_ms").is_none());
    let timed = stdout_json(&reptor(&["check", spec.to_str().unwrap(), "--timing"]));
    assert!(timed["diagnostics"]["elapsed_ms"].is_number());
}

#[test]
fn certify_flag_certifies_bases() {
    let spec = corpus("tor_su2_torus_pair.json");
    let r = stdout_json(&reptor(&["tor", spec.to_str().unwrap(), "--certify"]));
    let g = &r["diagnostics"]["grobner"];
    assert_eq!(g["certified_bases"], g["bases"]);
    assert_eq!(r["settings"]["certify"], true);
}
