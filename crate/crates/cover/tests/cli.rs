//! Black-box tests of the `cover` binary.

use std::path::PathBuf;
use std::process::Command;

fn cover() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cover"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn instances_list_names_five() {
    let out = cover().args(["instances", "--list"]).output().unwrap();
    assert!(out.status.success());
    let names: Vec<&str> = std::str::from_utf8(&out.stdout).unwrap().lines().collect();
    assert_eq!(names.len(), 5);
    assert!(names.contains(&"star") && names.contains(&"minkowski"));
}

#[test]
fn instances_emit_star_round_trips() {
    let out = cover().args(["instances", "--emit", "star"]).output().unwrap();
    assert!(out.status.success());
    let json: cover::geometry::RegionJson =
        serde_json::from_slice(&out.stdout).unwrap();
    let region = json.into_region().unwrap();
    assert!((region.volume() - 15.28093084375720).abs() <= 1e-10);
}

#[test]
fn eval_reports_analytic_g() {
    let region = tmp("r3x3.json");
    std::fs::write(
        &region,
        r#"{"polygons":[[[0,0],[3,0],[3,3],[0,3]]]}"#,
    )
    .unwrap();
    let config = tmp("fig10.json");
    std::fs::write(&config, r#"{"m":2,"r":1.0,"centers":[[0.0,3.0],[1.2,1.7]]}"#).unwrap();
    let out = cover()
        .args(["eval", "--region"])
        .arg(&region)
        .arg("--config")
        .arg(&config)
        .args(["--grad", "--screen"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["g"].as_f64().unwrap() - 5.218281352144436).abs() <= 1e-12);
    assert_eq!(v["grad"].as_array().unwrap().len(), 5);
    assert_eq!(v["screen"]["ok"], serde_json::Value::Bool(true));
}

#[test]
fn solve_is_byte_deterministic_and_solves_the_square() {
    let region = tmp("square.json");
    std::fs::write(&region, r#"{"polygons":[[[0,0],[1,0],[1,1],[0,1]]]}"#).unwrap();
    let run = |out_path: &PathBuf| {
        let st = cover()
            .args(["solve", "--region"])
            .arg(&region)
            .args(["--m", "1", "--trials", "2", "--seed", "11", "--out"])
            .arg(out_path)
            .status()
            .unwrap();
        assert!(st.success());
    };
    let (a, b) = (tmp("sol_a.json"), tmp("sol_b.json"));
    run(&a);
    run(&b);
    let bytes_a = std::fs::read(&a).unwrap();
    assert_eq!(bytes_a, std::fs::read(&b).unwrap());
    let sol: serde_json::Value = serde_json::from_slice(&bytes_a).unwrap();
    let r = sol["r"].as_f64().unwrap();
    assert!((r - 0.5_f64.sqrt()).abs() <= 2e-4);
    assert!(sol["g"].as_f64().unwrap().abs() <= 1e-8);
}

#[test]
fn render_writes_svg() {
    let out_path = tmp("cesaro.svg");
    let st = cover()
        .args(["render", "--instance", "cesaro", "--out"])
        .arg(&out_path)
        .status()
        .unwrap();
    assert!(st.success());
    let svg = std::fs::read_to_string(&out_path).unwrap();
    assert!(svg.starts_with("<svg "));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn check_validates_derivatives() {
    let region = tmp("two_squares.json");
    std::fs::write(
        &region,
        r#"{"polygons":[[[0,0],[1,0],[1,1],[0,1]],[[2,0],[3,0],[3,1],[2,1]]]}"#,
    )
    .unwrap();
    let out = cover()
        .args(["check", "--region"])
        .arg(&region)
        .args(["--m", "3", "--seed", "4", "--configs", "5"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn bad_inputs_exit_2() {
    let st = cover().args(["solve", "--instance", "star", "--m", "0"]).status().unwrap();
    assert_eq!(st.code(), Some(2));
    let st = cover()
        .args(["check", "--instance", "star", "--m", "2", "--configs", "0"])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(2));
    let st = cover().args(["instances", "--emit", "no_such"]).status().unwrap();
    assert_eq!(st.code(), Some(2));
}
