use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Fixture {
            dir: tempfile::tempdir().unwrap(),
        };
        f.graph("k1", "1 0\n");
        f.graph("k2", "2 1\n0 1\n");
        f.graph("p3", "3 2\n0 1\n1 2\n");
        f.graph("c4", "# four-cycle\n4 4\n0 1\n1 2\n2 3\n0 3\n");
        f.graph("two_k1", "2 0\n");
        f
    }

    fn graph(&self, name: &str, text: &str) -> PathBuf {
        let p = self.path(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(format!("{name}.txt"))
    }
}

fn corona(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corona")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn build_vertex_corona_of_an_edge_is_a_four_cycle() {
    let f = Fixture::new();
    let out = corona(&["build", "--kind", "vertex", "--g1", s(&f.path("k1")), "--g2", s(&f.path("k2"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4 4\n0 1\n0 2\n1 3\n2 3\n");
}

#[test]
fn build_edge_corona_of_an_edge_is_a_star() {
    let f = Fixture::new();
    let out = corona(&["build", "--kind", "edge", "--g1", s(&f.path("k1")), "--g2", s(&f.path("k2"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("4 3\n"), "{text}");
}

#[test]
fn build_writes_manifest_next_to_output() {
    let f = Fixture::new();
    let out_path = f.dir.path().join("prod.txt");
    let out = corona(&[
        "build", "--kind", "vertex", "--g1", s(&f.path("k2")), "--g2", s(&f.path("p3")), "--out", s(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(f.dir.path().join("prod.txt.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["n"], 2 * (1 + 3 + 2));
    let classes = manifest["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 12);
    assert_eq!(classes[0]["class"], "subdivision");
    assert_eq!(classes[11]["class"], "base");
    assert_eq!(classes[11]["local"], 1);

    // Re-reading the written product reproduces it exactly.
    let again = f.dir.path().join("again.txt");
    let out = corona(&["build", "--kind", "vertex", "--g1", s(&f.path("k2")), "--g2", s(&f.path("p3")), "--out", s(&again)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&out_path).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn malformed_line_is_a_parse_error_with_line_number() {
    let f = Fixture::new();
    let bad = f.graph("bad", "3 2\n0 1\na b\n");
    let out = corona(&["build", "--kind", "vertex", "--g1", s(&bad), "--g2", s(&f.path("k2"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_a_usage_error() {
    let f = Fixture::new();
    let out = corona(&["build", "--kind", "vertex", "--g1", "/nonexistent/g1", "--g2", s(&f.path("k2"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_value_is_a_usage_error() {
    let out = corona(&["resistance", "--g1", "a", "--g2", "b", "--kind", "diagonal"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_resistances_of_the_four_cycle() {
    let f = Fixture::new();
    let out = corona(&["resistance", "--kind", "vertex", "--g1", s(&f.path("k1")), "--g2", s(&f.path("k2"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n"], 4);
    assert_eq!(v["method"], "oracle");
    let r = &v["resistance"];
    let get = |i: usize, j: usize| r[i][j].as_f64().unwrap();
    // 0 = s, 1 = a, 2 = b, 3 = u around the cycle s-a-u-b.
    assert!((get(0, 1) - 0.75).abs() < 1e-12);
    assert!((get(1, 2) - 1.0).abs() < 1e-12);
    assert!((get(0, 3) - 1.0).abs() < 1e-12);
    assert!(v["deviation"].is_null());
}

#[test]
fn both_methods_agree_on_the_star() {
    let f = Fixture::new();
    let out = corona(&[
        "resistance", "--kind", "edge", "--method", "both", "--g1", s(&f.path("k1")), "--g2", s(&f.path("k2")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["deviation"].as_f64().unwrap() < 1e-9);
}

#[test]
fn csv_resistance_has_one_row_per_vertex() {
    let f = Fixture::new();
    let out = corona(&[
        "resistance", "--kind", "vertex", "--method", "closed-form", "--format", "csv", "--g1", s(&f.path("k2")),
        "--g2", s(&f.path("k2")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.split(',').count() == 8));
}

#[test]
fn disconnected_base_is_a_precondition_error() {
    let f = Fixture::new();
    for method in ["oracle", "closed-form"] {
        let out = corona(&[
            "resistance", "--kind", "vertex", "--method", method, "--g1", s(&f.path("two_k1")), "--g2",
            s(&f.path("k2")),
        ]);
        assert_eq!(out.status.code(), Some(3), "{method}: {}", stderr(&out));
        assert!(stderr(&out).contains("disconnected"));
    }
}

#[test]
fn kirchhoff_formulas_on_an_edge() {
    let f = Fixture::new();
    let out = corona(&["kirchhoff", "--formula", "thm4.1", "--g1", s(&f.path("k1")), "--g2", s(&f.path("k2"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["value"].as_f64().unwrap() - 5.0).abs() < 1e-9);
    assert!(v["deviation"].as_f64().unwrap() < 1e-8);
    for key in ["kind", "method", "value", "oracle", "deviation"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }

    let out = corona(&["kirchhoff", "--formula", "thm4.3", "--g1", s(&f.path("k1")), "--g2", s(&f.path("k2"))]);
    assert_eq!(out.status.code(), Some(0));
    assert!((json(&out)["value"].as_f64().unwrap() - 9.0).abs() < 1e-9);

    let out = corona(&["kirchhoff", "--formula", "cor4.2", "--g1", s(&f.path("k2")), "--g2", s(&f.path("c4"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["deviation"].as_f64().unwrap() < 1e-8 * (1.0 + v["oracle"].as_f64().unwrap()));
}

#[test]
fn regular_only_formula_rejects_a_path() {
    let f = Fixture::new();
    let out = corona(&["kirchhoff", "--formula", "thm4.3", "--g1", s(&f.path("k1")), "--g2", s(&f.path("p3"))]);
    assert_eq!(out.status.code(), Some(3));
    let out = corona(&["kirchhoff", "--formula", "cor4.2", "--g1", s(&f.path("k1")), "--g2", s(&f.path("p3"))]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn formula_and_kind_must_agree() {
    let f = Fixture::new();
    let out = corona(&[
        "kirchhoff", "--formula", "thm4.3", "--kind", "vertex", "--g1", s(&f.path("k1")), "--g2", s(&f.path("k2")),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_formula_uses_requested_kind() {
    let f = Fixture::new();
    let out = corona(&[
        "kirchhoff", "--formula", "oracle", "--kind", "edge", "--format", "csv", "--g1", s(&f.path("k1")), "--g2",
        s(&f.path("k2")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "kind,method,value,oracle,deviation\nedge-corona,oracle-trace,9.0000000000000000e0,9.0000000000000000e0,0.0000000000000000e0\n"
    );
}

#[test]
fn verify_builtin_passes() {
    let out = corona(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 30);
}

#[test]
fn verify_user_pair_gates_edge_corona_on_regularity() {
    let f = Fixture::new();
    let out = corona(&[
        "verify", "--corpus", "none", "--pair", s(&f.path("p3")), s(&f.path("c4")), "--pair", s(&f.path("c4")),
        s(&f.path("p3")),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 2);
    let status = |pair: &Value, case: &str| -> String {
        pair["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["case"] == case)
            .unwrap_or_else(|| panic!("no {case}"))["status"]
            .as_str()
            .unwrap()
            .to_string()
    };
    let p3_c4 = pairs.iter().find(|p| p["pair"] == "user1:p3:c4").unwrap();
    assert_eq!(status(p3_c4, "vertex-corona/kirchhoff/general"), "pass");
    assert_eq!(status(p3_c4, "vertex-corona/resistance/copy-copy-same-copy"), "pass");
    assert_eq!(status(p3_c4, "edge-corona/kirchhoff/regular"), "pass");
    let c4_p3 = pairs.iter().find(|p| p["pair"] == "user2:c4:p3").unwrap();
    assert_eq!(status(c4_p3, "vertex-corona/kirchhoff/general"), "pass");
    assert_eq!(status(c4_p3, "edge-corona/kirchhoff/regular"), "skipped");
    assert_eq!(status(c4_p3, "edge-corona/one-inverse/residual"), "skipped");
}

#[test]
fn verify_with_tiny_tolerance_reports_failures() {
    let out = corona(&["verify", "--tolerance", "1e-15"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert!(v["failures"].as_u64().unwrap() > 0);
    assert!(stderr(&out).contains("failed"));
}

#[test]
fn verify_csv_and_out_file() {
    let f = Fixture::new();
    let path = f.dir.path().join("report.csv");
    let out = corona(&["verify", "--format", "csv", "--out", s(&path)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("pair,case,status,"));
    assert!(text.lines().any(|l| l.starts_with("K1:K2,vertex-corona/resistance/copy-copy-uncorrected,info,")));
}

#[test]
fn verify_with_nothing_to_do_is_a_usage_error() {
    let out = corona(&["verify", "--corpus", "none"]);
    assert_eq!(out.status.code(), Some(2));
}
