use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bellgems::dump::parse_matrix;
use bellgems_core::Complex64;
use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bellgems"))
        .args(args)
        .output()
        .unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn ising_transform_is_diagonal() {
    let out = run(&[
        "transform",
        "--input",
        &fixture("ising_d1.json"),
        "--t",
        "0",
    ]);
    assert!(out.status.success());
    let m = parse_matrix(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let expected = [1.0, -1.0, -1.0, 1.0];
    for r in 0..4 {
        for k in 0..4 {
            let want = if r == k { expected[r] } else { 0.0 };
            assert!((m[(r, k)] - Complex64::new(want, 0.0)).norm() <= 1e-15);
        }
    }
}

#[test]
fn transform_oracle_report() {
    let v = ok_json(&[
        "transform",
        "--input",
        &fixture("type2_d2.json"),
        "--t",
        "0.2",
        "--check-oracle",
    ]);
    assert_eq!(v["matrix"]["rows"], 16);
    assert!(v["report"]["oracle_deviation"].as_f64().unwrap() <= 1e-12);
    assert!(v["report"]["hermiticity_deviation"].as_f64().unwrap() <= 1e-13);
}

#[test]
fn ising_field_blocks() {
    let v = ok_json(&[
        "blocks",
        "--input",
        &fixture("ising_field_d1.json"),
        "--t",
        "0.5",
    ]);
    assert_eq!(v["pairing"], serde_json::json!([[0, 1], [2, 3]]));
    let block = &v["blocks"][0]["block"]["data"];
    // [[J, 2B], [2B, -J]] with J = 1, B = 0.25
    assert_eq!(
        block,
        &serde_json::json!([[[1.0, 0.0], [0.5, 0.0]], [[0.5, 0.0], [-1.0, 0.0]]])
    );
    let p = &v["blocks"][0]["params"];
    assert!((p["delta_minus"].as_f64().unwrap() - 1.25f64.sqrt()).abs() <= 1e-12);
    assert!(p["delta_plus"].as_f64().unwrap().abs() <= 1e-12);
}

#[test]
fn diagonal_fixture_has_no_couplings() {
    let v = ok_json(&[
        "blocks",
        "--input",
        &fixture("diagonal_d2.json"),
        "--t",
        "0",
        "--emit",
        "both",
    ]);
    let m = parse_matrix(&v["matrix"].to_string()).unwrap();
    for r in 0..m.nrows() {
        for k in 0..m.ncols() {
            if r != k {
                assert_eq!(m[(r, k)], Complex64::new(0.0, 0.0));
            }
        }
    }
    assert!(v["report"]["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|b| b["coupled"] == false));
}

#[test]
fn dense_blocks_report_violation() {
    let out = run(&["blocks", "--input", &fixture("dense_d2.json"), "--t", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    let msg = stderr(&out);
    let listed = msg.split('[').nth(1).unwrap().split(']').next().unwrap();
    assert!(listed.split(',').count() >= 3, "{msg}");
}

#[test]
fn custom_pairing() {
    let pairing = format!("custom:{}", fixture("pairing_d1.json"));
    let v = ok_json(&[
        "blocks",
        "--input",
        &fixture("ising_field_d1.json"),
        "--t",
        "0",
        "--pairing",
        &pairing,
    ]);
    assert_eq!(v["pairing"], serde_json::json!([[0, 1], [2, 3]]));
    let v = ok_json(&[
        "evolve",
        "--input",
        &fixture("ising_field_d1.json"),
        "--T",
        "1",
        "--pairing",
        &pairing,
    ]);
    assert_eq!(v["group_structure_pass"], true);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[[0, 2], [1, 3]]").unwrap();
    let out = run(&[
        "blocks",
        "--input",
        &fixture("ising_field_d1.json"),
        "--t",
        "0",
        "--pairing",
        &format!("custom:{}", bad.display()),
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
}

#[test]
fn evolve_report() {
    let v = ok_json(&[
        "evolve",
        "--input",
        &fixture("ising_field_d1.json"),
        "--T",
        "1",
        "--check-oracle",
    ]);
    assert!(v["unitarity_deviation"].as_f64().unwrap() <= 1e-9);
    assert!(v["determinant_product_deviation"].as_f64().unwrap() <= 1e-9);
    assert!(v["oracle_deviation"].as_f64().unwrap() <= 1e-8);
    assert_eq!(v["group_structure_pass"], true);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 2);
}

#[test]
fn empty_spec_evolves_to_identity() {
    let out = run(&[
        "evolve",
        "--input",
        &fixture("empty_d1.json"),
        "--T",
        "1",
        "--emit",
        "matrix",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let u = parse_matrix(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(u, bellgems_core::ComplexMatrix::identity(4, 4));
}

#[test]
fn axis_switch_drifts() {
    let out = run(&[
        "evolve",
        "--input",
        &fixture("axis_switch_d1.json"),
        "--T",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("segment 1"), "{}", stderr(&out));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path: PathBuf = dir.path().join("basis.json");
    let out = run(&["basis", "--d", "1", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let b = parse_matrix(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(b.shape(), (4, 4));

    let missing = dir.path().join("no/such/dir/out.json");
    let out = run(&["basis", "--d", "1", "--output", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn basis_report() {
    let v = ok_json(&["basis", "--d", "3", "--emit", "report"]);
    assert_eq!(v["dim"], 64);
    assert!(v["orthonormality_deviation"].as_f64().unwrap() <= 1e-12);
    assert_eq!(v["max_imaginary"], 0.0);
}

#[test]
fn input_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("malformed.json", "{\"n\": 2, \"terms\": ["),
        (
            "odd.json",
            r#"{"n": 3, "terms": [{"axes": [3, 0, 3], "schedule": [[1.0, 1.0]]}]}"#,
        ),
        (
            "axis.json",
            r#"{"n": 2, "terms": [{"axes": [4, 0], "schedule": [[1.0, 1.0]]}]}"#,
        ),
        (
            "arity.json",
            r#"{"n": 2, "terms": [{"axes": [3], "schedule": [[1.0, 1.0]]}]}"#,
        ),
        ("extra.json", r#"{"n": 2, "terms": [], "extra": 1}"#),
        (
            "schedule.json",
            r#"{"n": 2, "terms": [{"axes": [3, 3], "schedule": [[1.0, 1.0], [0.5, 2.0]]}]}"#,
        ),
    ];
    for (name, text) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        let out = run(&["classify", "--input", path.to_str().unwrap()]);
        let code = out.status.code();
        // odd arity is a valid document that no command can process
        let expected = if name == "odd.json" { Some(1) } else { Some(3) };
        assert_eq!(code, expected, "{name}: {}", stderr(&out));
        assert!(stderr(&out).starts_with("error: "));
    }
}

#[test]
fn usage_errors_exit_2() {
    let input = fixture("ising_d1.json");
    for args in [
        vec!["basis", "--d", "0"],
        vec!["evolve", "--input", &input],
        vec!["blocks", "--input", &input, "--tol", "-1"],
        vec!["blocks", "--input", &input, "--pairing", "descending"],
        vec!["transform", "--input", &input, "--emit", "yaml"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn time_outside_schedule_fails() {
    let out = run(&[
        "transform",
        "--input",
        &fixture("ising_d1.json"),
        "--t",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
