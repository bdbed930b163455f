use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinplanar")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn dims(report: &Value) -> Vec<u64> {
    report["levels"].as_array().unwrap().iter().map(|l| l["dim"].as_u64().unwrap()).collect()
}

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn check_accepts_the_five_by_five_latin_square() {
    let out = run(&["check", "--input", data("latin5.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().next(), Some("quantum Latin square; {0,1}-biunitary in P_(3,+)"));
}

#[test]
fn check_rejects_all_ones_hadamard_with_named_defect() {
    let out = run(&["check", "--input", data("ones2.json").to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["verdict"], false);
    assert_eq!(report["defects"][0]["relation"], "H H* = nI");
}

#[test]
fn check_accepts_pauli_basis_with_partial_swap_certificate() {
    let out = run(&["check", "--input", data("pauli.json").to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["certificate"]["name"], "{A,R(4,+)}-biunitary in P_(4,+)");
}

#[test]
fn malformed_input_reports_position_and_exits_2() {
    let f = temp_json("{\"type\": \"hadamard\",\n \"n\": 2, \"entries\": [[1, 0]");
    let out = run(&["check", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["check", "--input", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn qdims_tables() {
    let out = run(&["qdims", "--input", data("fourier2.json").to_str().unwrap(), "--max-level", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(dims(&json(&out)), vec![1, 1]);

    let z3 = temp_json(r#"{"type": "latin", "n": 3, "rows": [[1, 2, 3], [2, 3, 1], [3, 1, 2]]}"#);
    let out = run(&["qdims", "--input", z3.path().to_str().unwrap(), "--max-level", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(dims(&json(&out)), vec![1, 1, 3, 9, 27]);
}

#[test]
fn qdims_closure_section() {
    let out = run(&[
        "qdims",
        "--input",
        data("fourier2.json").to_str().unwrap(),
        "--max-level",
        "3",
        "--closure",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["closure"]["last_level"], 3);
    assert!(report["closure"]["rotation"].as_f64().unwrap() < 1e-9);
}

#[test]
fn qdims_refuses_ueb_and_oversized_runs() {
    let out = run(&["qdims", "--input", data("pauli.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unitary error basis"));

    let out = run(&["qdims", "--input", data("latin5.json").to_str().unwrap(), "--max-level", "4", "--cap", "1000"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("15625 rows"));
}

#[test]
fn qdims_rejects_non_biunitary_input() {
    let out = run(&["qdims", "--input", data("ones2.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn group_s3_matches_predictions() {
    let out = run(&["group", "--name", "S3", "--max-level", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(dims(&report), vec![1, 1, 6, 36]);
    let predicted: Vec<u64> =
        report["levels"].as_array().unwrap().iter().map(|l| l["predicted"].as_u64().unwrap()).collect();
    assert_eq!(predicted, dims(&report));
    assert!(report["x_elements"]["residual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn group_from_table_file_and_bad_table() {
    let out = run(&["group", "--input", data("z3_table.json").to_str().unwrap(), "--max-level", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = run(&["group", "--input", data("not_a_group.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["group", "--name", "Z9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest", "--spins", "3", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("all relations hold"));
}

#[test]
fn convert_round_trips() {
    let out = run(&["convert", "--input", data("fourier2.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let element = json(&out);
    assert_eq!(element["source"], "hadamard");
    let terms = element["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 4);
    for t in terms {
        let re = t["coeff"][0].as_f64().unwrap();
        assert!((re.abs() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    let f = temp_json(&serde_json::to_string(&element).unwrap());
    let out = run(&["convert", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let back = json(&out);
    let original: Value = serde_json::from_str(&std::fs::read_to_string(data("fourier2.json")).unwrap()).unwrap();
    assert_eq!(back["type"], "hadamard");
    let flat = |v: &Value| -> Vec<f64> {
        v["entries"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap().clone()).flat_map(|c| {
            c.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect::<Vec<_>>()
        }).collect()
    };
    for (a, b) in flat(&back).iter().zip(flat(&original)) {
        assert!((a - b).abs() < 1e-12);
    }

    let mut anonymous = element.clone();
    anonymous.as_object_mut().unwrap().remove("source");
    let f = temp_json(&serde_json::to_string(&anonymous).unwrap());
    assert_eq!(run(&["convert", "--input", f.path().to_str().unwrap()]).status.code(), Some(2));
    let out = run(&["convert", "--input", f.path().to_str().unwrap(), "--to", "hadamard"]);
    assert_eq!(out.status.code(), Some(0));
}
