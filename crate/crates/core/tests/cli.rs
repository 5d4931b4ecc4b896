use std::path::Path;
use std::process::{Command, Output};

use lehmer_verify::report::{Report, Status};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().unwrap()
}

#[test]
fn unknown_suite_exits_2() {
    let out = verify(&["bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
}

#[test]
fn bad_precision_exits_2() {
    assert_eq!(verify(&["lattice", "--precision", "-1"]).status.code(), Some(2));
    assert_eq!(verify(&["lattice", "--precision", "abc"]).status.code(), Some(2));
}

#[test]
fn missing_data_dir_exits_2() {
    assert_eq!(verify(&["cubic", "--data", "/nonexistent"]).status.code(), Some(2));
}

#[test]
fn markdown_lattice_report() {
    let out = verify(&["lattice"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("lambda10 interval"));
    assert!(text.contains("**PASS**"));
}

#[test]
fn json_surface_report_with_explicit_data_dir() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let out = verify(&["surface", "--format", "json", "--data", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert!(r.leaves().iter().all(|l| l.elapsed_ms.is_none()));
}

#[test]
fn timings_are_recorded_on_request() {
    let out = verify(&["cubic", "--format", "json", "--timings"]);
    let r = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(r.elapsed_ms.is_some());
}

#[test]
fn broken_data_fails_with_exit_1() {
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let dir = std::env::temp_dir().join(format!("verify-broken-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for f in ["surface.poly", "automorphism.poly", "points.dat", "e10_basis.dat"] {
        std::fs::copy(src.join(f), dir.join(f)).unwrap();
    }
    let auto = std::fs::read_to_string(dir.join("automorphism.poly")).unwrap();
    std::fs::write(dir.join("automorphism.poly"), auto.replace("fz = x*z", "fz = g*x*z")).unwrap();
    let out = verify(&["surface", "--format", "json", "--data", dir.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(out.status.code(), Some(1));
    let r = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(!r.failures().is_empty());
}
