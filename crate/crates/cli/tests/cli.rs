use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fakeherm_core::ingest::{read_snapshot, serialize_snapshot, SnapshotKind};
use serde_json::Value;

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fakeherm"))
        .arg("--data-dir")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_in(&data(), args)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn diff_rows(v: &Value) -> Vec<String> {
    v["diffs"].as_array().unwrap().iter().map(|d| d["row"].as_str().unwrap().to_string()).collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(dir.join("fields")).unwrap();
    std::fs::create_dir_all(dir.join("tables")).unwrap();
    std::fs::create_dir_all(dir.join("golden")).unwrap();
    for f in ["tables/martinet.tsv", "tables/regulators.tsv", "golden/reference.tsv"] {
        std::fs::copy(data().join(f), dir.join(f)).unwrap();
    }
    dir
}

#[test]
fn bounds_row_for_twelve() {
    let out = run(&["--format", "json", "bounds", "--dk", "12"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let row = &v["tables"][0]["rows"][0];
    assert_eq!(row["h4"], "8");
    assert_eq!(row["D_l"], "25493");
    assert_eq!(row["D_l/D_k^2"], "177");
    assert_eq!(diff_rows(&v), vec!["q1(2,12,8)"]);
}

#[test]
fn bounds_row_for_twenty_nine() {
    let out = run(&["--format", "json", "bounds", "--dk", "29"]);
    assert_eq!(out.status.code(), Some(0));
    let row = &json(&out)["tables"][0]["rows"][0];
    assert_eq!(row["D_l"], "7569");
    assert_eq!(row["D_l/D_k^2"], "9");
}

#[test]
fn bounds_rejects_four() {
    let out = run(&["bounds", "--dk", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("D_k = 4"));
}

#[test]
fn full_bounds_differ_only_in_known_cells() {
    let out = run(&["--format", "json", "bounds"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(diff_rows(&json(&out)), vec!["q1(2,12,8)", "large", "d1"]);
}

#[test]
fn missing_file_is_named() {
    let out = run_in(Path::new("/nonexistent-data"), &["bounds"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent-data/golden/reference.tsv"));

    let dir = scratch("missing-martinet");
    std::fs::remove_file(dir.join("tables/martinet.tsv")).unwrap();
    let out = run_in(&dir, &["split-primes"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("martinet.tsv"));
}

#[test]
fn low_precision_is_an_input_error() {
    let out = run(&["--precision-bits", "64", "lvalues"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_database_gives_empty_tables() {
    let dir = scratch("empty");
    let out = run_in(&dir, &["--format", "json", "lvalues"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for t in v["tables"].as_array().unwrap() {
        if t["title"] != "golden-ratio base field" {
            assert!(t["rows"].as_array().unwrap().is_empty(), "{}", t["title"]);
        }
    }
}

#[test]
fn split_prime_rows() {
    let out = run(&["--format", "json", "split-primes"]);
    let v = json(&out);
    let rows = v["tables"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 15);
    let find = |p: &str| rows.iter().find(|r| r["pair"] == p).unwrap()["primes"].as_str().unwrap().to_string();
    assert_eq!(find("Q(sqrt-7)"), "2, 11, 23, 29, 37, 43, 53, 67, 71");
    assert_eq!(find("C1"), "11, 31, 41, 61, 71");
    assert_eq!(find("Q(sqrt5)"), "11, 19, 29, 31, 41, 59, 61, 71");
    assert_eq!(diff_rows(&v), vec!["C2", "F1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sqrt_minus_7_with_quaternion_division_algebra() {
    let out = run(&["--format", "json", "classify", "--pair", "Q,-7", "--deg", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["tables"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["configuration"], "D=2 {2:C2bi, 3:C3bi, 7:C4bi}");
    assert_eq!(rows[0]["covolume"], "4/3");
    let pinned = v["tables"][1]["rows"].as_array().unwrap();
    let covolumes: Vec<&str> = pinned.iter().map(|r| r["covolume"].as_str().unwrap()).collect();
    assert_eq!(covolumes, vec!["1/720", "1/144", "4/3"]);
}

#[test]
fn pair_flags_are_validated() {
    assert_eq!(run(&["classify", "--pair", "Q,-7", "--deg", "3"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--pair", "Q,-7", "--deg", "1"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--pair", "Q,7"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--pair", "Q,-9999"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--deg", "2"]).status.code(), Some(2));
}

#[test]
fn golden_ratio_survivor_scans() {
    let out = run(&["--format", "json", "classify", "--pair", "C3"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out)["tables"][0]["rows"].as_array().unwrap().clone();
    assert_eq!(rows[0]["verdict"], "T_1 empty");
    assert_eq!(rows[1]["verdict"], "T empty");
}

#[test]
fn truncated_database_is_unverifiable() {
    let dir = scratch("truncated");
    let mut s = read_snapshot(&data().join("fields/imag_quadratic.tsv"), SnapshotKind::Fields).unwrap();
    s.records.retain(|r| r.cells[0] != "Q(sqrt-47)");
    std::fs::write(dir.join("fields/imag_quadratic.tsv"), serialize_snapshot(&s)).unwrap();
    let out = run_in(&dir, &["--format", "json", "classify"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let labels: Vec<&str> = v["unverifiable"].as_array().unwrap().iter().map(|u| u["label"].as_str().unwrap()).collect();
    assert!(labels.contains(&"Q(sqrt-47)"));
    assert!(labels.contains(&"D_k = 5"));
}

#[test]
fn output_is_reproducible() {
    for args in [&["--format", "json", "bounds"][..], &["--format", "tsv", "split-primes"], &["classify", "--pair", "Q,-7"]] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
