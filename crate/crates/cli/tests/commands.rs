use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use contractible::gradlie::{gradation_from_automorphism, SpecFile};
use contractible::ufield::fmt_rational;
use contractible::ulinalg::char_subspaces;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contractible"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (v, out.status.code().unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("contractible-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn gradation_of_heisenberg() {
    let (r, code) = json(&["gradation", "heisenberg.json"]);
    assert_eq!(code, 0);
    assert_eq!(r["valuations"], serde_json::json!(["1", "1", "2"]));
    assert_eq!(r["m"], 1);
    assert_eq!(r["layer_dims"], serde_json::json!({"1": 2, "2": 1}));
    assert_eq!(r["status"], "pass");
    assert_eq!(r["convention"]["a"], "q");
    assert_eq!(r["convention"]["q"], 5);
}

#[test]
fn identity_is_not_contractive() {
    let (r, code) = json(&["analyze", "identity.json"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["name"], "NotContractive");
    assert_eq!(r["status"], "error");
    assert_eq!(r["contractive"], false);
}

#[test]
fn parse_errors_exit_1_with_position() {
    let dir = scratch("parse");
    let path = dir.join("bad.json");
    fs::write(&path, "{\"field\": {\"kind\": \"padic\", \"p\": 5}, \"dim\": x}").unwrap();
    let (r, code) = json(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["error"]["name"], "ParseError");
    assert!(r["error"]["message"].as_str().unwrap().contains("position 44"));
}

#[test]
fn missing_file_is_a_precondition_failure() {
    let (r, code) = json(&["analyze", "/nonexistent/spec.json"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["name"], "IoError");
}

#[test]
fn q2_integration_is_rejected() {
    let (r, code) = json(&["integrate", "heisenberg-q2.json"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["name"], "DenominatorNotUnit");
}

#[test]
fn integrate_heisenberg_passes() {
    let (r, code) = json(&["integrate", "heisenberg.json"]);
    assert_eq!(code, 0);
    assert_eq!(r["bch"]["class"], 2);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for want in ["associativity", "automorphism", "contraction_certificate"] {
        assert!(names.contains(&want), "{want} missing from {names:?}");
    }
}

#[test]
fn central_series_of_filiform() {
    let (r, code) = json(&["central-series", "filiform.json"]);
    assert_eq!(code, 0);
    assert_eq!(r["nilpotency_class"], 3);
    assert_eq!(r["lower_central_series"], serde_json::json!([4, 2, 1, 0]));
    assert_eq!(r["filtration"]["dims"], serde_json::json!([1, 2, 4]));
}

#[test]
fn gradation_and_theta_stand_in_for_the_automorphism() {
    let (r, code) = json(&["gradation", "graded-heisenberg.json"]);
    assert_eq!(code, 0);
    assert_eq!(r["valuations"], serde_json::json!(["1", "1", "2"]));
}

#[test]
fn same_linearization_demo_passes() {
    let (r, code) = json(&["demo", "same-linearization"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "pass");
    let pairs = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "noncommuting_pairs")
        .expect("noncommuting_pairs check");
    let witness = pairs["witness"].as_str().unwrap();
    for s in 1..=10 {
        assert!(witness.contains(&format!("s={s}:")), "level {s} missing");
    }
}

#[test]
fn every_demo_reports_named_checks() {
    for name in contractible::cgroups::DEMO_NAMES {
        let (r, _) = json(&["demo", name]);
        let checks = r["checks"].as_array().unwrap();
        assert!(!checks.is_empty(), "{name}");
        let mut names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
        names.sort();
        let n = names.len();
        names.dedup();
        assert_eq!(names.len(), n, "{name} repeats a check name");
    }
}

#[test]
fn reports_are_deterministic() {
    for args in [&["gradation", "heisenberg.json"][..], &["demo", "semidirect"], &["integrate", "heisenberg.json"]] {
        let mut a = vec!["--json", "--seed", "7"];
        a.extend_from_slice(args);
        assert_eq!(run(&a).stdout, run(&a).stdout, "{args:?}");
    }
}

#[test]
fn seeds_change_samples() {
    let a = run(&["--json", "--seed", "1", "demo", "interleave-2"]).stdout;
    let b = run(&["--json", "--seed", "2", "demo", "interleave-2"]).stdout;
    assert_ne!(a, b);
}

#[test]
fn out_writes_the_report() {
    let dir = scratch("out");
    let path = dir.join("report.json");
    let out = run(&["--json", "--out", path.to_str().unwrap(), "analyze", "heisenberg.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["status"], "pass");
    let leftovers: Vec<_> = fs::read_dir(&dir).unwrap().collect();
    assert_eq!(leftovers.len(), 1);
}

#[test]
fn low_precision_is_refused() {
    let out = run(&["--precision", "8", "analyze", "heisenberg.json"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn dumped_examples_parse_and_round_trip() {
    let dir = scratch("dump");
    let out = run(&["dump-examples", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut count = 0;
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let spec = SpecFile::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
        assert!(spec.algebra().is_ok(), "{}", path.display());
        count += 1;
    }
    assert_eq!(count, 6);
    // the dumped copy analyzes exactly like the embedded one
    let path = dir.join("heisenberg.json");
    let (from_disk, _) = json(&["gradation", path.to_str().unwrap()]);
    let (embedded, _) = json(&["gradation", "heisenberg.json"]);
    assert_eq!(from_disk["layers"], embedded["layers"]);
}

#[test]
fn report_matches_library() {
    let dir = scratch("lib");
    run(&["dump-examples", dir.to_str().unwrap()]);
    for name in ["heisenberg.json", "filiform.json", "ramified.json"] {
        let path = dir.join(name);
        let spec = SpecFile::from_json(&fs::read_to_string(&path).unwrap()).unwrap().with_precision(64);
        let l = spec.algebra().unwrap();
        let b = spec.automorphism().unwrap().unwrap();
        let dec = char_subspaces(&b).unwrap();
        let g = gradation_from_automorphism(&l, &b).unwrap();
        let (r, _) = json(&["gradation", path.to_str().unwrap()]);
        let vals: Vec<String> = dec.valuations_with_multiplicity().iter().map(fmt_rational).collect();
        assert_eq!(r["valuations"], serde_json::json!(vals), "{name}");
        assert_eq!(r["m"], g.m, "{name}");
        assert_eq!(r["layers"], serde_json::to_value(g.report().layers).unwrap(), "{name}");
    }
}

#[test]
fn text_output_ends_with_status() {
    let out = run(&["analyze", "heisenberg.json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("valuations: [1, 1, 2]"));
    assert!(text.trim_end().ends_with("status: pass"));
}
