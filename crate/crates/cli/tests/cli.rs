use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn omsr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omsr"))
        .args(args)
        .output()
        .expect("run omsr")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn data(name: &str) -> String {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/groups")
        .join(name);
    format!("perm:{}", root.display())
}

#[test]
fn construct_dispatches_cyclic_m2() {
    let out = omsr(&["construct", "--group", "cyclic:7", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["family"], "cyclic-m2");
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["matrix"]["sets"]["0,0"], serde_json::json!([1, 2]));
}

#[test]
fn construct_reports_excluded_case_with_exit_2() {
    let out = omsr(&["construct", "--group", "cyclic:2", "--m", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Z2") && err.contains("m <= 4"), "{err}");
    assert_eq!(
        omsr(&["construct", "--group", "product:2,2", "--m", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn construct_klein_general() {
    let out = omsr(&["construct", "--group", "product:2,2", "--m", "5"]);
    assert_eq!(stdout_json(&out)["family"], "klein-general");
}

#[test]
fn construct_rejects_unknown_or_inapplicable_family() {
    let out = omsr(&[
        "construct",
        "--group",
        "cyclic:5",
        "--m",
        "2",
        "--family",
        "nope",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = omsr(&[
        "construct",
        "--group",
        "cyclic:5",
        "--m",
        "3",
        "--family",
        "klein-m3",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn construct_then_verify_round_trip_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("t.json");
    let dot = dir.path().join("t.dot");
    let report = dir.path().join("r.json");
    let s = |p: &PathBuf| p.to_str().unwrap().to_string();
    let out = omsr(&[
        "construct",
        "--group",
        "q8",
        "--m",
        "3",
        "--out",
        &s(&json),
        "--dot",
        &s(&dot),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&dot)
        .unwrap()
        .starts_with("digraph"));

    let out = omsr(&[
        "verify",
        "--group",
        "q8",
        "--matrix",
        &s(&json),
        "--json",
        "--report",
        &s(&report),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let first = stdout_json(&out);
    assert_eq!(first["checks"]["verdict"], "OMSR");
    assert_eq!(first["checks"]["aut_order"], 8);
    assert_eq!(first["family"], "two-gen");

    // A report is itself valid input and reproduces the verdict.
    let again = stdout_json(&omsr(&[
        "verify",
        "--group",
        "q8",
        "--matrix",
        &s(&report),
        "--json",
    ]));
    assert_eq!(again["checks"], first["checks"]);
}

#[test]
fn verify_worked_example_is_not_omsr() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z4.json");
    std::fs::write(
        &path,
        r#"{"m":2,"sets":{"0,0":[1],"0,1":[0,1],"1,0":[1,2],"1,1":[1]}}"#,
    )
    .unwrap();
    let out = omsr(&[
        "verify",
        "--group",
        "cyclic:4",
        "--matrix",
        path.to_str().unwrap(),
        "--json",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["checks"]["aut_order"], 8);
    assert_eq!(doc["checks"]["verdict"], "NOT-OMSR");
    let gens = doc["generators"].as_array().unwrap();
    assert!(!gens.is_empty());
    assert!(gens[0]["cycles"].as_str().unwrap().starts_with('('));
    assert_eq!(gens[0]["images"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_klein_m3_and_empty_matrix() {
    let out = omsr(&["verify", "--group", "product:2,2", "--m", "3"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("|Aut|            4"), "{text}");
    assert!(text.contains("verdict          OMSR"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(&path, r#"{"m":2,"sets":{}}"#).unwrap();
    let doc = stdout_json(&omsr(&[
        "verify",
        "--group",
        "cyclic:3",
        "--matrix",
        path.to_str().unwrap(),
        "--json",
    ]));
    assert_eq!(doc["checks"]["regular3"], false);
    assert_eq!(doc["checks"]["verdict"], "NOT-OMSR");
}

#[test]
fn verify_rejects_malformed_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"m":2,"sets":{"0,7":[1]}}"#).unwrap();
    let out = omsr(&[
        "verify",
        "--group",
        "cyclic:3",
        "--matrix",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn search_examples() {
    let doc = stdout_json(&omsr(&["search", "--group", "cyclic:3", "--m", "2"]));
    assert_eq!(doc["outcome"]["status"], "EXHAUSTED");
    let doc = stdout_json(&omsr(&[
        "search",
        "--group",
        "cyclic:2",
        "--m",
        "4",
        "--exact-histogram",
    ]));
    assert_eq!(doc["outcome"]["status"], "EXHAUSTED");
    assert!(!doc["outcome"]["aut_order_histogram"]
        .as_object()
        .unwrap()
        .is_empty());
    let doc = stdout_json(&omsr(&[
        "search",
        "--group",
        "cyclic:5",
        "--m",
        "2",
        "--connected",
        "--jobs",
        "1",
    ]));
    assert_eq!(doc["outcome"]["status"], "FOUND");
    assert!(doc["outcome"]["witness"].is_object());
}

#[test]
fn search_budget_exit_code_and_checkpoint() {
    let out = omsr(&[
        "search", "--group", "cyclic:2", "--m", "4", "--budget", "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cp.json");
    let args = [
        "search",
        "--group",
        "cyclic:2",
        "--m",
        "4",
        "--checkpoint",
        cp.to_str().unwrap(),
    ];
    let first = stdout_json(&omsr(&args));
    assert!(cp.exists());
    let resumed = stdout_json(&omsr(&args));
    assert_eq!(first, resumed);
}

#[test]
fn permutation_group_files() {
    let q8 = omsr(&["construct", "--group", &data("q8.json"), "--m", "2"]);
    assert_eq!(stdout_json(&q8)["group_order"], 8);
    for (file, order) in [
        ("s3.json", 6),
        ("d4.json", 8),
        ("d5.json", 10),
        ("a4.json", 12),
    ] {
        let doc = stdout_json(&omsr(&[
            "verify",
            "--group",
            &data(file),
            "--m",
            "2",
            "--json",
        ]));
        assert_eq!(doc["checks"]["aut_order"], order, "{file}");
        assert_eq!(doc["checks"]["verdict"], "OMSR");
    }
}

#[test]
fn suite_subset_and_explore() {
    let out = omsr(&["suite", "--criteria", "1,4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 2);

    let doc = stdout_json(&omsr(&[
        "explore",
        "--n",
        "4",
        "--k",
        "3",
        "--mode",
        "exhaustive",
    ]));
    assert_eq!(doc["exploratory"], true);
    assert_eq!(doc["status"], "EXHAUSTED");
}
