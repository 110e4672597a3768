use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_newtonma")).args(args).env_remove("NEWTONMA_SEED").output().unwrap()
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn bounds_of_hyperbola_and_line() {
    let r = report(&["bounds", "--n", "2", "--poly", "z1*z2-1", "--poly", "z1+z2-3"]);
    assert_eq!(r["bounds"]["mixed_volume"], json!([2, 1]));
    assert_eq!(r["bounds"]["bezout"], json!([2, 1]));
    assert_eq!(r["bounds"]["sigmas"], json!([[2, 1], [1, 1]]));
    assert_eq!(r["bounds"]["permanent"], json!([4, 1]));
    let dir = r["bounds"]["directional"]["value"].as_f64().unwrap();
    assert!((dir - 2.0).abs() < 1e-6);
    assert_eq!(r["version"], json!(env!("CARGO_PKG_VERSION")));
    assert_eq!(r["seed"], json!(0));
}

#[test]
fn newton_at_a_shifted_center() {
    let r = report(&["newton", "--n", "2", "--poly", "z1*z2", "--center", "1,1"]);
    let ind = &r["indicators"][0];
    assert_eq!(ind["vertices"], json!([[[0, 1], [0, 1]], [[0, 1], [1, 1]], [[1, 1], [0, 1]], [[1, 1], [1, 1]]]));
    assert_eq!(ind["normalized_volume"], json!([2, 1]));
    let at_origin = report(&["newton", "--n", "2", "--poly", "z1*z2"]);
    assert_eq!(at_origin["indicators"][0]["normalized_volume"], json!([0, 1]));
}

#[test]
fn verify_roots_on_the_grid() {
    let r = report(&["verify", "roots", "--n", "2", "--poly", "z1^2-1", "--poly", "z2^2-1"]);
    assert_eq!(r["roots"]["affine"], json!(4));
    assert_eq!(r["roots"]["torus"], json!(4));
    assert_eq!(r["roots"]["certified"], json!(true));
    assert_eq!(r["roots"]["tol"], json!(1e-8));
}

#[test]
fn mixed_volume_of_boxes() {
    let r = report(&["mixed-volume", "--polytope", "0,0;1,0;0,2;1,2", "--polytope", "box:3,1", "--n", "2"]);
    assert_eq!(r["mixed_volume"], json!([7, 2]));
    assert_eq!(r["normalized_mixed_volume"], json!([7, 1]));
}

#[test]
fn degree_report() {
    let r = report(&["degree", "--n", "2", "--u", "hull:1,1", "--weight", "simplex"]);
    assert_eq!(r["generalized_degree_bound"], json!([2, 1]));
    assert_eq!(r["swept_measure"]["total"], json!([1, 2]));
    assert_eq!(r["relative_type"], json!([2, 1]));
    assert!(r["identity_check"]["skipped"].is_string());
    let r = report(&["degree", "--n", "2", "--u", "box:1,1", "--weight", "simplex:2"]);
    assert_eq!(r["identity_check"]["equal"], json!(true));
    assert_eq!(r["generalized_degree_bound"], json!([4, 1]));
}

#[test]
fn verify_modes_report_seeds_and_tolerances() {
    let r = report(&["verify", "mv-oracle", "--polytope", "0,0;1,1", "--polytope", "simplex", "--n", "2"]);
    assert_eq!(r["agree"], json!(true));
    assert_eq!(r["oracle_mixed_volume"], json!([1, 1]));
    let r = report(&["verify", "type-grid", "--n", "2", "--u", "box:1,1", "--grid", "400"]);
    assert_eq!(r["relative_type"], json!([2, 1]));
    assert_eq!(r["grid_maximum"], json!(2.0));
    let r = report(&["verify", "swept-mean", "--n", "2", "--poly", "z1*z2-1", "--samples", "2000"]);
    let v = r["value_over_r"].as_f64().unwrap();
    assert!((v - 2.0).abs() < 0.02);
    assert!(r["estimate"]["stderr"].is_number());
    assert_eq!(r["estimate"]["seed"], json!(0));
}

#[test]
fn torus_mode_gives_bernstein_number() {
    let r = report(&["bounds", "--n", "2", "--mode", "torus", "--laurent", "--poly", "z1 + z1^-1 + z2", "--poly", "z2 - 2"]);
    assert_eq!(r["bernstein"], json!([2, 1]));
}

#[test]
fn spec_file_and_flag_override() {
    let dir = std::env::temp_dir().join(format!("newtonma-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("system.json");
    std::fs::write(
        &path,
        r#"{"n_vars": 2, "polynomials": ["z1*z2 - 1", "z1 + z2 - 3"], "delta_t": "3", "center": ["0", "0"]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let r = report(&["bounds", "--spec", p]);
    assert_eq!(r["bounds"]["mixed_volume"], json!([6, 1]));
    let r = report(&["bounds", "--spec", p, "--delta-t", "1/2"]);
    assert_eq!(r["bounds"]["mixed_volume"], json!([1, 1]));
    std::fs::write(&path, r#"{"n_vars": 2, "bogus": 1}"#).unwrap();
    assert_eq!(run(&["bounds", "--spec", p]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    // input errors
    assert_eq!(run(&["bounds", "--n", "2", "--poly", "z3"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--poly", "z1"]).status.code(), Some(2));
    assert_eq!(run(&["degree", "--n", "2", "--u", "blob"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    // preconditions
    let out = run(&["degree", "--n", "2", "--u", "simplex", "--weight", "hull:1,1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
    let out = run(&["verify", "roots", "--n", "2", "--poly", "z1*z2 - z1", "--poly", "z2^2 - 1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(run(&["bounds", "--n", "2", "--poly", "0"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "swept-mean", "--n", "2", "--poly", "z1^2 + z2 - 1", "--samples", "5000"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let seeded = |s: &str| {
        Command::new(env!("CARGO_BIN_EXE_newtonma")).args(args).env("NEWTONMA_SEED", s).output().unwrap()
    };
    let c = seeded("7");
    assert_eq!(c.stdout, seeded("7").stdout);
    assert_ne!(c.stdout, a.stdout);
    let v: Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(v["seed"], json!(7));
    assert_eq!(seeded("x").status.code(), Some(2));
}

#[test]
fn tsv_output() {
    let out = run(&["--format", "tsv", "mixed-volume", "--polytope", "simplex", "--polytope", "simplex", "--n", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "mixed_volume.0\t1"));
    assert!(text.lines().any(|l| l == "mixed_volume.1\t2"));
    assert!(text.lines().all(|l| l.split('\t').count() == 2));
}
