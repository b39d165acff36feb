use std::path::Path;
use std::process::{Command, Output};

use liedual_core::{BracketTableQ, Json, Tensor3Q};

fn liedual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liedual"))
        .args(args)
        .env("LIEDUAL_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn cybe_families_pass() {
    let o = liedual(&[
        "cybe",
        "--family",
        "witt-n",
        "--n",
        "2",
        "--algebra",
        "witt",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("PASS"));
    let residual = Tensor3Q::from_json_str(&stdout(&o)).unwrap();
    assert!(residual.is_zero());
    let o = liedual(&[
        "cybe", "--family", "xy", "--n", "2", "--ell", "1", "--k", "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = liedual(&[
        "cybe",
        "--family",
        "xy",
        "--n",
        "-3",
        "--ell",
        "-1/2",
        "--k",
        "3",
        "--algebra",
        "virasoro",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn raw_symmetric_tensor_fails() {
    let dir = tempfile::tempdir().unwrap();
    let r = write(
        dir.path(),
        "r.json",
        r#"{"kind": "witt", "terms": [{"labels": ["1", "3"], "coeff": "1"}, {"labels": ["3", "1"], "coeff": "1"}]}"#,
    );
    let o = liedual(&["cybe", "--family", "raw", "--r", &r]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("FAIL"));
    assert!(!Tensor3Q::from_json_str(&stdout(&o)).unwrap().is_zero());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["cybe", "--n", "1"],
        vec!["cybe", "--algebra", "lie"],
        vec!["cybe", "--family", "raw"],
        vec!["cybe", "--family", "xy", "--k", "0"],
        vec!["cybe", "--family", "xy", "--algebra", "one-sided-witt"],
        vec!["dual-table", "--window", "3", "-3"],
        vec!["dual-table", "--ell", "1/0", "--family", "xy"],
        vec!["verify", "--suite", "nonexistent"],
        vec!["verify", "--mutate", "nonexistent"],
        vec!["decompose", "/nonexistent/file.json"],
        vec!["frobnicate"],
    ] {
        let o = liedual(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    let o = Command::new(env!("CARGO_BIN_EXE_liedual"))
        .args(["cybe"])
        .env("LIEDUAL_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn csv_table_and_cross_check() {
    let o = liedual(&[
        "dual-table",
        "--algebra",
        "witt",
        "--n",
        "2",
        "--window",
        "-3",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "i,j,value");
    assert_eq!(rows.len(), 1 + 49);
    assert!(rows.contains(&"1,0,3*e^-1"));
    let o = liedual(&[
        "dual-table",
        "--algebra",
        "witt",
        "--n",
        "2",
        "--window",
        "-3",
        "3",
        "--format",
        "csv",
        "--cross-check",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("0 mismatches"), "{}", stderr(&o));
    let o = liedual(&[
        "dual-table",
        "--family",
        "xy",
        "--n",
        "3",
        "--ell",
        "2",
        "--k",
        "-1",
        "--cross-check",
        "--format",
        "latex",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("\\begin{tabular}"));
}

#[test]
fn mutated_cross_check_fails() {
    let o = liedual(&[
        "dual-table",
        "--n",
        "2",
        "--cross-check",
        "--mutate",
        "witt-case2-sign",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!stderr(&o).contains(" 0 mismatches"));
}

#[test]
fn one_sided_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let o = liedual(&[
        "dual-table",
        "--algebra",
        "one-sided-witt",
        "--n",
        "2",
        "--window",
        "0",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let table = BracketTableQ::from_json_str(&text).unwrap();
    assert_eq!(table.entries.len(), 16);
    assert!(table.get(1, 0).unwrap().is_empty());
    // Emitted JSON re-parses to an equal value and re-emits identically.
    assert_eq!(table.to_json_string(), text.trim_end());
}

#[test]
fn verify_exit_codes() {
    let o = liedual(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(
        stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(),
        9
    );
    let o = liedual(&["verify", "--suite", "jacobi", "--window", "-4", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = liedual(&["verify", "--mutate", "case1-sign"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL witt-table"));
    let o = liedual(&[
        "verify",
        "--suite",
        "xy-table",
        "--mutate",
        "xy-case3-sign",
        "--window",
        "-3",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn decompose_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let two = write(
        dir.path(),
        "two.json",
        r#"{"domain": "laurent", "rep": {"type": "recursive", "order": 2, "h": ["7", "-10"], "anchor": 0, "seeds": ["4", "17"]}}"#,
    );
    let o = liedual(&["decompose", &two]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["type"], "components");
    assert_eq!(
        v["components"],
        serde_json::json!([{"root": "2", "poly": ["1"]}, {"root": "5", "poly": ["3"]}])
    );
    assert!(stderr(&o).contains("2 components"));

    let fib = write(
        dir.path(),
        "fib.json",
        r#"{"domain": "poly", "rep": {"type": "recursive", "order": 2, "h": ["1", "1"], "anchor": 0, "seeds": ["0", "1"]}}"#,
    );
    let o = liedual(&["decompose", &fib]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["type"], "irreducible-factors");
    assert_eq!(
        v["minimal_polynomial"],
        serde_json::json!(["-1", "-1", "1"])
    );

    let zero = write(
        dir.path(),
        "zero.json",
        r#"{"domain": "laurent", "rep": {"type": "finite", "coeffs": {}}}"#,
    );
    let o = liedual(&["decompose", &zero]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("empty decomposition"));

    let finite = write(
        dir.path(),
        "e3.json",
        r#"{"domain": "laurent", "rep": {"type": "finite", "coeffs": {"3": "1"}}}"#,
    );
    assert_eq!(liedual(&["decompose", &finite]).status.code(), Some(1));
    let broken = write(
        dir.path(),
        "broken.json",
        r#"{"domain": "laurent", "rep": {"type": "recursive", "h": ["1"]}}"#,
    );
    assert_eq!(liedual(&["decompose", &broken]).status.code(), Some(2));
}
