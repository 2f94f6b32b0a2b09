//! Runs the `hdisc` binary on small inputs and checks reports and exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const K3: &str = "3\n0 1\n1 2\n0 2\n";
const K4_MINUS_EDGE: &str = "# K4 without the edge 2-3\n4\n0 1\n0 2\n0 3\n1 2\n1 3\n";
const P3: &str = "3\n0 1\n1 2\n";

fn hdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdisc"))
        .args(args)
        .env_remove("HDISC_THREADS")
        .output()
        .expect("binary runs")
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn rational(v: &Value) -> (String, String) {
    (v["num"].as_str().unwrap().to_string(), v["den"].as_str().unwrap().to_string())
}

#[test]
fn analyze_reports_threshold_of_triangle() {
    let dir = TempDir::new().unwrap();
    let h = file(&dir, "k3.el", K3);
    let v = json(&hdisc(&["analyze", "--input", s(&h)]));
    assert_eq!(rational(&v["delta_star"]), ("3".into(), "4".into()));
    assert_eq!(v["theorem_case"], "tri-regular");
    assert!(v["trace"].as_array().unwrap().len() > 3);
}

#[test]
fn summary_is_plain_text() {
    let dir = TempDir::new().unwrap();
    let h = file(&dir, "p3.el", P3);
    let out = hdisc(&["analyze", "-i", s(&h), "--summary"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("delta* = 1/2 (bipartite-component-density)"), "{text}");
}

#[test]
fn output_flag_writes_file_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let h = file(&dir, "k4e.el", K4_MINUS_EDGE);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert!(hdisc(&["delta0", "-i", s(&h), "-o", s(&a)]).status.success());
    assert!(hdisc(&["delta0", "-i", s(&h), "--output", s(&b)]).status.success());
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(rational(&v["value"]), ("0".into(), "1".into()));
}

#[test]
fn template_decision_and_cross_check() {
    let dir = TempDir::new().unwrap();
    let h = file(&dir, "k4e.el", K4_MINUS_EDGE);
    // Every K_3 coloring of K4-e is a non-template, so delta0 is zero.
    let v = json(&hdisc(&["template", "--h", s(&h), "--frame", "star:3,+"]));
    assert_eq!(v["is_template"], false);
    let v = json(&hdisc(&["template", "--h", s(&h), "--frame", "butterfly:1"]));
    assert_eq!(v["is_template"], true);
    assert_eq!(v["certificate"]["part_sizes"].as_array().unwrap().len(), 5);
    let v = json(&hdisc(&["template", "--h", s(&h), "--frame", "butterfly:3", "--cross-check", "14"]));
    assert!(v["lp"]["is_template"].is_boolean());
    assert!(v["conclusive"].is_boolean());
}

#[test]
fn witness_round_trips_through_oracle_verify() {
    let dir = TempDir::new().unwrap();
    let h = file(&dir, "p3.el", P3);
    let w = json(&hdisc(&["witness", "--h", s(&h), "--frame", "clique_pair:2,1,+-", "--recipe", "shared-facet"]));
    let sizes: Vec<String> = w["spec"]["sizes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    assert_eq!(sizes, ["1", "2", "3"]);
    let host = dir.path().join("host.cel");
    let out = hdisc(&["blowup", "--frame", "clique_pair:2,1,+-", "--sizes", &sizes.join(","), "-o", s(&host)]);
    assert!(out.status.success());
    for (key, disc) in [("factor_1", "disc_1"), ("factor_2", "disc_2")] {
        let f = file(&dir, &format!("{key}.json"), &w[key].to_string());
        let v = json(&hdisc(&["oracle", "verify", "--h", s(&h), "--host", s(&host), "--factor", s(&f)]));
        assert_eq!(v["valid"], true);
        assert_eq!(v["discrepancy"], w[disc]);
    }
    let v = json(&hdisc(&["oracle", "enumerate", "--h", s(&h), "--host", s(&host)]));
    assert!(v["values"].as_object().unwrap().len() >= 2);
}

#[test]
fn lowerbound_and_hstar() {
    let dir = TempDir::new().unwrap();
    let h = file(&dir, "k3.el", K3);
    let host = dir.path().join("j.cel");
    let v = json(&hdisc(&["lowerbound", "--h", s(&h), "--case", "regular-star", "-m", "12", "--host-out", s(&host)]));
    assert_eq!(rational(&v["min_degree_ratio"]), ("3".into(), "4".into()));
    assert_eq!(v["claim"], "all_factors_zero");
    let v = json(&hdisc(&["oracle", "enumerate", "--h", s(&h), "--host", s(&host)]));
    assert_eq!(v["values"].as_object().unwrap().keys().collect::<Vec<_>>(), ["0"]);

    let h = file(&dir, "k4e.el", K4_MINUS_EDGE);
    let v = json(&hdisc(&["hstar", "--h", s(&h), "--eta", "1/10"]));
    assert_eq!(v["graph"]["complete_partite"], serde_json::json!([130, 129, 97]));
    assert_eq!(v["checks"]["perfect_factor"], true);
}

#[test]
fn exit_codes_follow_error_categories() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.el", "3\n0 7\n");
    assert_eq!(hdisc(&["analyze", "-i", s(&bad)]).status.code(), Some(2));

    let h = file(&dir, "k3.el", K3);
    // The triangle is regular, so the shared-facet recipe refuses.
    let out = hdisc(&["witness", "--h", s(&h), "--frame", "clique_pair:3,2,+++--", "--recipe", "shared-facet"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-regular"));
    assert_eq!(hdisc(&["hstar", "--h", s(&h), "--eta", "0"]).status.code(), Some(3));

    let missing = dir.path().join("missing.el");
    assert_eq!(hdisc(&["analyze", "-i", s(&missing)]).status.code(), Some(1));
}

#[test]
fn thread_cap_is_honored_and_validated() {
    let dir = TempDir::new().unwrap();
    let h = file(&dir, "k3.el", K3);
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_hdisc"))
            .args(["analyze", "-i", s(&h)])
            .env("HDISC_THREADS", threads)
            .output()
            .unwrap()
    };
    assert!(run("1").status.success());
    assert_eq!(run("many").status.code(), Some(2));
}
