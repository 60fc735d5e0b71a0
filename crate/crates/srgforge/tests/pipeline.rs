use std::path::{Path, PathBuf};

use srgforge::fixture::{fixtures_from_files, load_fixtures};
use srgforge::graph6;
use srgforge::pipeline::{run, run_manifest, GraphFormat, PipelineOptions};
use srgforge_core::graph::Graph;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn bounded(max_degree: usize) -> PipelineOptions {
    PipelineOptions { max_degree, ..PipelineOptions::default() }
}

#[test]
fn degree_bound_filters_rows() {
    let out = run_manifest(&fixture("u42.toml"), &bounded(50)).unwrap();
    let vs: Vec<u64> = out.report.srgs.iter().map(|r| r.params[0]).collect();
    assert_eq!(vs, vec![27, 36, 40, 40, 45]);
    assert!(out.report.golden_ok);
    let names: Vec<&str> = out.report.collapses.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, vec!["E8 on G2_4"]);
    assert_eq!(out.report.subgroups.len(), 9);
}

#[test]
fn reports_are_deterministic() {
    let a = run_manifest(&fixture("a8.toml"), &PipelineOptions { threads: Some(1), ..bounded(150) }).unwrap();
    let b = run_manifest(&fixture("a8.toml"), &PipelineOptions { threads: Some(3), ..bounded(150) }).unwrap();
    assert_eq!(a.report.to_json(), b.report.to_json());
    assert_eq!(a.report.srgs.len(), 5);
}

#[test]
fn graph_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut out = run_manifest(&fixture("a8.toml"), &bounded(120)).unwrap();
    out.write_graphs(&dir.path().join("g6"), GraphFormat::Graph6).unwrap();
    for row in &out.report.srgs {
        let text = std::fs::read_to_string(dir.path().join("g6").join(row.file.as_ref().unwrap())).unwrap();
        let g = graph6::decode(&text).unwrap();
        assert_eq!(g.is_strongly_regular().map(|p| p.as_array()), Some(row.params));
    }
    out.write_graphs(&dir.path().join("adj"), GraphFormat::Adjacency).unwrap();
    for (row, found) in out.report.srgs.iter().zip(&out.found) {
        let text = std::fs::read_to_string(dir.path().join("adj").join(row.file.as_ref().unwrap())).unwrap();
        let mut lines = text.lines();
        let v: usize = lines.next().unwrap().parse().unwrap();
        let rows: Vec<Vec<u8>> = lines.map(|l| l.bytes().map(|b| b - b'0').collect()).collect();
        assert_eq!(rows.len(), v);
        let g = Graph::from_matrix(&rows).unwrap();
        assert_eq!(g, found.graph);
    }
}

#[test]
fn golden_mismatch_is_reported() {
    let mut fx = load_fixtures(&fixture("a8.toml")).unwrap();
    fx.manifest.expected_srgs[0] = [28, 15, 6, 10];
    let out = run(&fx, &bounded(40)).unwrap();
    assert!(!out.report.golden_ok);
    fx.manifest.expected_srgs[0] = [28, 12, 6, 4];
    assert!(run(&fx, &bounded(40)).unwrap().report.golden_ok);
}

#[test]
fn ad_hoc_search() {
    let fx = fixtures_from_files(&fixture("a8.grp"), &[fixture("a8/h1_4.grp"), fixture("a8/h1_5.grp")]).unwrap();
    let out = run(&fx, &PipelineOptions::default()).unwrap();
    assert!(out.report.golden_ok);
    let rows: Vec<(&str, [u64; 4])> = out.report.srgs.iter().map(|r| (r.subgroup.as_str(), r.params)).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.1 == [120, 56, 28, 24]));
    assert_ne!(out.report.srgs[0].fingerprint, out.report.srgs[1].fingerprint);
}

#[test]
fn report_json_shape() {
    let out = run_manifest(&fixture("a8.toml"), &bounded(35)).unwrap();
    let json: serde_json::Value = serde_json::from_str(&out.report.to_json()).unwrap();
    let row = &json["srgs"][0];
    for key in ["subgroup", "index", "rank", "primitive", "selection", "params", "fingerprint", "file"] {
        assert!(row.get(key).is_some(), "{key}");
    }
    assert_eq!(row["params"], serde_json::json!([28, 12, 6, 4]));
    assert_eq!(json["subgroups"][0]["subgroup_name"], "H1_1");
}
