use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use spantree::graph::Graph;
use spantree::report::AnalysisReport;
use spantree::treepack::{verify_certificate, Certificate};

fn spantree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spantree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn help_and_usage_exit_codes() {
    assert_eq!(code(&spantree(&["--help"])), 0);
    assert_eq!(code(&spantree(&["--version"])), 0);
    assert_eq!(code(&spantree(&[])), 1);
    assert_eq!(code(&spantree(&["no-such-command"])), 1);
    assert_eq!(
        code(&spantree(&[
            "verify-family",
            "Gd",
            "--d-min",
            "4",
            "--d-max",
            "x"
        ])),
        1
    );
}

#[test]
fn construct_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let el = dir.path().join("g4.el");
    let o = spantree(&["construct", "Gd", "--d", "4", "-o", path(&el)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let g = Graph::read_edge_list(&el).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (15, 30));

    let json = dir.path().join("report.json");
    let cert = dir.path().join("cert.json");
    let o = spantree(&[
        "analyze",
        path(&el),
        "--json",
        path(&json),
        "--certificate",
        path(&cert),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8(o.stdout).unwrap();
    let report: AnalysisReport = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report.degree, "4");
    assert_eq!(report.sigma.value, 1);
    assert_eq!(report.kappa_prime, Some(2));
    assert!((report.lambda2.unwrap() - 3.569).abs() < 1e-3);
    assert!(report.theorems.iter().all(|t| t.k == 2 && !t.premise));
    assert_eq!(fs::read_to_string(&json).unwrap(), stdout);
    // struct-ordered output survives a round trip byte for byte
    assert_eq!(
        serde_json::to_string_pretty(&report).unwrap() + "\n",
        stdout
    );

    let c: Certificate = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(verify_certificate(&g, &c.to_result().unwrap()), Ok(()));
}

#[test]
fn construct_rejects_small_degree() {
    let dir = tempfile::tempdir().unwrap();
    let el = dir.path().join("g.el");
    assert_eq!(
        code(&spantree(&["construct", "Gd", "--d", "3", "-o", path(&el)])),
        1
    );
    assert_eq!(
        code(&spantree(&["construct", "Hd", "--d", "5", "-o", path(&el)])),
        1
    );
    assert!(!el.exists());
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let el = dir.path().join("bad.el");
    fs::write(&el, "3 2\n0 1\n1 x\n").unwrap();
    let o = spantree(&["analyze", path(&el)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn irregular_graph_notes_theorems_do_not_apply() {
    let dir = tempfile::tempdir().unwrap();
    let el = dir.path().join("p3.el");
    fs::write(&el, "3 2\n0 1\n1 2\n").unwrap();
    let o = spantree(&["analyze", path(&el)]);
    assert_eq!(code(&o), 0);
    let r: AnalysisReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.degree, "irregular");
    assert!(r.theorems.is_empty());
    assert!(!r.notes.is_empty());
}

#[test]
fn quotient_partition_errors() {
    let dir = tempfile::tempdir().unwrap();
    let el = dir.path().join("c4.el");
    fs::write(&el, "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let part = dir.path().join("p.txt");

    fs::write(&part, "0 2\n1 3\n").unwrap();
    let o = spantree(&["quotient", path(&el), path(&part)]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["equitable"], true);
    assert_eq!(v["eigenvalues"], serde_json::json!([2.0, -2.0]));

    for bad in ["0 1\n1 2 3\n", "0 1\n2\n", "0 1\n2 9\n", "0 1\n2 a\n"] {
        fs::write(&part, bad).unwrap();
        let o = spantree(&["quotient", path(&el), path(&part)]);
        assert_eq!(code(&o), 1, "partition {bad:?} accepted");
    }
}

#[test]
fn verify_family_small_range() {
    let o = spantree(&[
        "verify-family",
        "Gd",
        "--d-min",
        "4",
        "--d-max",
        "5",
        "--exact-range",
        "4..10",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);
    assert_eq!(
        code(&spantree(&[
            "verify-family",
            "Hd",
            "--d-min",
            "5",
            "--d-max",
            "6"
        ])),
        1
    );
    assert_eq!(
        code(&spantree(&[
            "verify-family",
            "Gd",
            "--d-min",
            "4",
            "--d-max",
            "4",
            "--exact-range",
            "9..5"
        ])),
        1
    );
}

#[test]
fn hunt_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path());
    let args = [
        "hunt",
        "--d",
        "6",
        "--n",
        "20",
        "--k",
        "2",
        "--trials",
        "6",
        "--seed",
        "7",
        "--out-dir",
        out,
    ];
    let a = spantree(&args);
    let b = spantree(&args);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(
        code(&spantree(&["hunt", "--d", "6", "--n", "20", "--k", "1"])),
        1
    );
    assert_eq!(
        code(&spantree(&["hunt", "--d", "5", "--n", "9", "--k", "2"])),
        1
    );
}
