use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

const LABELS: [&str; 19] = [
    "I", "II", "III(1)", "III(2)", "III(3)", "III(4)", "IV(1)", "IV(2)", "V", "XI", "XV", "Z2xZ2",
    "S3", "Z3xZ3", "D2", "D3", "D5", "S3xZ3", "trivial",
];

fn fanoq(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_fanoq"))
        .args(args)
        .output()
        .expect("run fanoq");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fanoq-test-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Cells that differ between two markdown tables, as (row label, column, ours, theirs).
fn cell_diff(ours: &str, theirs: &str) -> Vec<(String, String, String, String)> {
    let split = |s: &str| -> Vec<Vec<String>> {
        s.lines()
            .map(|l| {
                l.trim_matches('|')
                    .split('|')
                    .map(|c| c.trim().to_string())
                    .collect()
            })
            .collect()
    };
    let (a, b) = (split(ours), split(theirs));
    assert_eq!(a.len(), b.len(), "row count");
    assert_eq!(a[0], b[0], "header");
    let label_col = if a[0][0] == "O" { 1 } else { 0 };
    let mut out = Vec::new();
    for (ra, rb) in a.iter().zip(&b).skip(2) {
        assert_eq!(ra[label_col], rb[label_col]);
        for (j, (x, y)) in ra.iter().zip(rb).enumerate() {
            if x != y {
                out.push((ra[label_col].clone(), a[0][j].clone(), x.clone(), y.clone()));
            }
        }
    }
    out
}

#[test]
fn tables_against_transcriptions() {
    let (out, _, code) = fanoq(&["tables", "--format", "markdown"]);
    assert_eq!(code, 0);
    let (t1, t2) = out.split_once("\n\n").expect("two tables");
    assert_eq!(t2, golden("table2.md"));
    // The transcribed row III(4) reads c1^2 = -3, c2 = 3; the group data
    // forces -9, 9.
    let diff = cell_diff(&format!("{t1}\n"), &golden("table1.md"));
    let want = vec![
        (
            "III(4)".to_string(),
            "c1^2".to_string(),
            "-9".to_string(),
            "-3".to_string(),
        ),
        (
            "III(4)".to_string(),
            "c2".to_string(),
            "9".to_string(),
            "3".to_string(),
        ),
    ];
    assert_eq!(diff, want);
}

#[test]
fn tables_text_and_json() {
    let (text, _, code) = fanoq(&["tables"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("Table 1\n"));
    assert!(text.contains("\nTable 2\n"));
    let (json, _, code) = fanoq(&["tables", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&json).unwrap();
    let tables = v["tables"].as_array().unwrap();
    assert_eq!(tables.len(), 2);
    assert_eq!(tables[0]["rows"].as_array().unwrap().len(), 11);
    assert_eq!(tables[1]["rows"].as_array().unwrap().len(), 7);
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, json);
}

#[test]
fn empty_catalog_gives_empty_tables() {
    let dir = scratch("empty");
    let (out, _, code) = fanoq(&[
        "--catalog",
        dir.to_str().unwrap(),
        "tables",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    for t in v["tables"].as_array().unwrap() {
        assert!(t["rows"].as_array().unwrap().is_empty());
    }
}

#[test]
fn rationality_transcripts() {
    let (out, _, code) = fanoq(&["rationality", "klein"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("rationality_klein.txt"));
    let (out, _, code) = fanoq(&["rationality", "xv"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("rationality_xv.txt"));
}

#[test]
fn rationality_json_certificates() {
    let (out, _, code) = fanoq(&["rationality", "klein", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["q"], 0);
    assert_eq!(v["stage1"].as_array().unwrap().len(), 8);
    assert_eq!(v["a13_b13"], serde_json::json!([1, 3]));
    assert_eq!(v["certificates"].as_array().unwrap().len(), 2);
    let (out, _, code) = fanoq(&["rationality", "xv", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["certificate"]["contractions"].as_array().unwrap().len(),
        4
    );
}

#[test]
fn per_case_reports_match_golden_and_are_deterministic() {
    for label in LABELS {
        let (out, _, code) = fanoq(&["report", label, "--format", "json"]);
        assert_eq!(code, 0, "{label}");
        assert_eq!(out, golden(&format!("reports/{label}.json")), "{label}");
        let (again, _, _) = fanoq(&["report", label, "--format", "json"]);
        assert_eq!(out, again);
    }
}

#[test]
fn report_text_carries_the_citation() {
    let (out, _, code) = fanoq(&["report", "V"]);
    assert_eq!(code, 0);
    assert!(out.contains("c1^2 = 9, c2 = 15"));
    let (out, _, _) = fanoq(&["report", "v", "--format", "markdown"]);
    assert!(
        out.contains("| 5 | V | 9 | 15 | 1 | 2 | 2 | 4 | 2A_4 | yes* | 2* |"),
        "{out}"
    );
}

#[test]
fn unknown_case_is_an_input_error() {
    let (_, err, code) = fanoq(&["report", "VII"]);
    assert_eq!(code, 2);
    assert!(err.contains("VII"));
}

#[test]
fn resolve_command() {
    let (out, _, code) = fanoq(&["resolve", "11", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let chain: Vec<u64> = serde_json::from_value(v["chain"].clone()).unwrap();
    let a: Vec<String> = serde_json::from_value(v["discrepancies"].clone()).unwrap();
    assert!(
        (chain == [3, 4] && a == ["6/11", "7/11"]) || (chain == [4, 3] && a == ["7/11", "6/11"]),
        "{chain:?} {a:?}"
    );
    assert_eq!(v["k2_correction"], "-20/11");

    let (out, _, _) = fanoq(&["resolve", "2", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["chain"], serde_json::json!([2]));
    assert_eq!(v["discrepancies"], serde_json::json!(["0"]));
    assert_eq!(v["k2_correction"], "0");

    let (out, _, _) = fanoq(&["resolve", "7", "3"]);
    assert!(out.contains("chain          -3, -2, -2"), "{out}");

    let (_, err, code) = fanoq(&["resolve", "6", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("gcd(n,q) ≠ 1"));
}

#[test]
fn validate_command() {
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/catalog/XI.json");
    let (out, _, code) = fanoq(&["validate", shipped.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ok: XI"));

    let dir = scratch("validate");
    let text = std::fs::read_to_string(&shipped).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        text.replacen("\"group_order\": 11", "\"group_order\": 12", 1),
    )
    .unwrap();
    let (_, err, code) = fanoq(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(
        err.contains("group_order") || err.contains("generators"),
        "{err}"
    );

    let (_, _, code) = fanoq(&["validate", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn integrality_failure_exits_with_one() {
    let dir = scratch("integrality");
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/catalog/V.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(shipped).unwrap()).unwrap();
    v["label"] = "V-bad".into();
    v["singularities"][0]["q"] = 1.into();
    v["singularities"][0]
        .as_object_mut()
        .unwrap()
        .remove("tangent");
    std::fs::write(dir.join("bad.json"), serde_json::to_string(&v).unwrap()).unwrap();
    let (_, err, code) = fanoq(&["--catalog", dir.to_str().unwrap(), "report", "V-bad"]);
    assert_eq!(code, 1);
    assert!(err.contains("c1^2 = 27/5"), "{err}");
}

#[test]
fn invalid_catalog_directory_is_an_input_error() {
    let dir = scratch("invalid");
    std::fs::write(dir.join("x.json"), "{ \"schema\": 1 }").unwrap();
    let (_, err, code) = fanoq(&["--catalog", dir.to_str().unwrap(), "tables"]);
    assert_eq!(code, 2);
    assert!(err.contains("x.json"), "{err}");
}
