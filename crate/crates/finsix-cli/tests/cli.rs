use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn finsix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finsix")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn run_selected_suites_as_json() {
    let o = finsix(&["--suite", "corr,hecke", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"hecke.s3-c2") && ids.contains(&"corr.finset-duals"));
    let again = finsix(&["run", "--suite", "corr,hecke", "--format", "json"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn gated_field_skips() {
    let o = finsix(&["--suite", "hecke", "--field", "fp:3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("SKIP hecke.s3-c2"), "{out}");
    assert!(out.contains("field=fp:3"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(finsix(&["--suite", "nope"]).status.code(), Some(2));
    assert_eq!(finsix(&["--field", "fp:4"]).status.code(), Some(2));
    assert_eq!(finsix(&["--suite", "setup", "--input", &data("bad.json")]).status.code(), Some(1));
    assert_eq!(finsix(&["sections", "--input", &data("bad.json")]).status.code(), Some(2));
    assert_eq!(finsix(&["--format", "yaml"]).status.code(), Some(2));
}

#[test]
fn hecke_table_s3() {
    let o = finsix(&["hecke", "table", "--group", "S3", "--subgroup", "(12)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("dim 2"), "{out}");
    let v = json(&finsix(&["hecke", "table", "--group", "S3", "--subgroup", "(12)", "--format", "json"]));
    assert_eq!(v["table"]["basis"].as_array().unwrap().len(), 2);
    assert_eq!(v["involution"]["involutive"], true);
}

#[test]
fn kernels_verify_maps() {
    let o = finsix(&[
        "kernels",
        "verify",
        "--base",
        &data("s3.json"),
        "--maps",
        &data("c2_in_s3.json"),
        &data("points_in_s3.json"),
        "--probes",
        "3",
    ]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.contains("with 3 objects"), "{out}");
    assert!(!out.contains("FAIL"));
    assert!(out.contains("PASS prim[2]"));
}

#[test]
fn adjunctions_and_mates() {
    let v = json(&finsix(&["adj", "verify", "--format", "json"]));
    let adjs = v["adjunctions"].as_array().unwrap();
    assert!(!adjs.is_empty());
    let a = &adjs[0];
    let args: Vec<String> = ["left", "right", "unit", "counit"]
        .iter()
        .flat_map(|k| [format!("--{k}"), a[k].as_str().unwrap().to_string()])
        .collect();
    let mut full = vec!["adj", "verify"];
    full.extend(args.iter().map(String::as_str));
    let o = finsix(&full);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("first triangle true"));
    let m = finsix(&["adj", "mate"]);
    assert_eq!(m.status.code(), Some(0));
    assert!(stdout(&m).contains("0 failures"));
    let audit = finsix(&["adj", "audit", "--map", a["left"].as_str().unwrap()]);
    assert_eq!(audit.status.code(), Some(0), "{}", String::from_utf8_lossy(&audit.stderr));
    assert!(stdout(&audit).contains("agree true"));
}

#[test]
fn setup_table() {
    let o = finsix(&["setup", "table"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("every subset"));
    let o = finsix(&["setup", "table", "--input", &data("arrow_setup.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let row = &json(&o)["rows"][0];
    assert_eq!(row["agree"], true);
    assert_eq!(row["diagonal_verdict"], true);
}

#[test]
fn pyramid_and_sections() {
    let o = finsix(&["pyramid", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("t ≅ rev∘t: true"));
    let o = finsix(&["sections", "--input", &data("sheaf.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim Γ = 2  dim Γ_c = 2"));
    let o = finsix(&["sections", "--field", "fp:2"]);
    let out = stdout(&o);
    assert!(out.contains("*/c3") && !out.contains("*/c2 "), "{out}");
}
