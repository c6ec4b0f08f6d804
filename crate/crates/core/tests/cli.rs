use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use prect::cliques::CliqueCensus;
use prect::formats::{from_graph6, to_graph6};
use prect::pipeline::RunReport;

fn prect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prect"))
        .args(args)
        .env("PRECT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn build_then_full_verify_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let model = path(dir.path(), "l22.json");
    let report = path(dir.path(), "report.json");
    assert!(prect(&["build", "--family", "l2k", "--k", "2", "--out", &model]).status.success());
    let out = prect(&["verify", "--input", &model, "--profile", "full", "--out", &report]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rep: RunReport = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(rep.passed);
    assert!(rep.check("isomorphism").unwrap().passed);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(dir.path(), "a.json"), path(dir.path(), "b.json"));
    let args = ["verify", "--family", "subplane", "--p", "3", "--k", "2", "--profile", "quick", "--samples", "20000"];
    assert!(prect(&[&args[..], &["--out", &a]].concat()).status.success());
    assert!(prect(&[&args[..], &["--out", &b]].concat()).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn corrupted_graph_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = path(dir.path(), "g.g6");
    assert!(prect(&["export", "--family", "l2k", "--k", "2", "--format", "graph6", "--out", &g6]).status.success());
    let g = from_graph6(fs::read_to_string(&g6).unwrap().trim()).unwrap();
    let (u, v, _) = g.edges().next().unwrap();
    fs::write(&g6, to_graph6(&g.without_edge(u, v)).unwrap()).unwrap();
    let report = path(dir.path(), "r.json");
    let out = prect(&["verify", "--input", &g6, "--out", &report]);
    assert_eq!(out.status.code(), Some(1));
    let rep: RunReport = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let srg = rep.check("strongly regular").unwrap();
    assert!(!srg.passed);
    assert!(srg.detail.to_string().contains("\"witness\":{"));
}

#[test]
fn census_json_roundtrips() {
    let dir = tempfile::tempdir().unwrap();
    let census = path(dir.path(), "census.json");
    let out = prect(&["export", "--family", "l2k", "--k", "3", "--object", "census", "--out", &census]);
    assert!(out.status.success());
    let text = fs::read_to_string(&census).unwrap();
    let c: CliqueCensus = serde_json::from_str(&text).unwrap();
    assert_eq!((c.point_cliques.len(), c.plane_cliques.len()), (24, 112));
    let again = prect::pipeline::to_sorted_json(&c).unwrap();
    assert_eq!(again, text);
}

#[test]
fn dot_and_bilinear_exports() {
    let out = prect(&["export", "--family", "subplane", "--p", "2", "--k", "2", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph ") && dot.contains("--"));
    let out = prect(&["export", "--family", "subplane", "--p", "3", "--k", "2", "--format", "graph6", "--object", "bilinear"]);
    let h = from_graph6(String::from_utf8(out.stdout).unwrap().trim()).unwrap();
    assert_eq!(h.num_vertices(), 81);
    assert!((0..81).all(|v| h.degree(v) == 32));
}

#[test]
fn other_subcommands() {
    for sub in ["cliques", "iso", "geometry", "analyze"] {
        let out = prect(&[sub, "--family", "l2k", "--k", "2"]);
        assert_eq!(out.status.code(), Some(0), "{sub}: {}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(v.is_object());
    }
    let out = prect(&["build", "--family", "subplane", "--p", "6", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
