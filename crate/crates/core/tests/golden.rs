//! Byte-for-byte comparisons against checked-in outputs. Set
//! `UPDATE_GOLDEN=1` to rewrite them.

use std::fs;
use std::path::PathBuf;

use lehmer_verify::cubic::alpha_table;
use lehmer_verify::gf2m::Field;
use lehmer_verify::suites::{run, Config, Suite};

fn check(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == actual, "{name} differs from the golden copy; rerun with UPDATE_GOLDEN=1 if intended");
}

#[test]
fn alpha_table_matches() {
    check("alpha_table.dat", &alpha_table(&Field::gf32()));
}

#[test]
fn full_report_matches() {
    let r = run(Suite::All, &Config::default());
    assert!(r.passed());
    check("all.json", &r.to_json());
}
