mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::*;
use tda_core::mapper::{graph_cycle_rank, MapperGraph};
use tda_core::PersistenceDiagram;

fn tda(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tda"))
        .args(args)
        .arg("--output-dir")
        .arg(out)
        .env_remove("TDA_OUTPUT_DIR")
        .output()
        .unwrap()
}

fn ok(o: &Output) {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
}

fn raw(dir: &Path, name: &str, rows: &[Vec<f64>]) -> String {
    let p = dir.join(name);
    write(&p, &points_csv(rows));
    p.to_string_lossy().into_owned()
}

#[test]
fn two_points_two_red_bars() {
    let dir = tempfile::tempdir().unwrap();
    let input = raw(dir.path(), "pair.csv", &[vec![0.0, 0.0], vec![1.0, 0.0]]);
    let o = tda(&["barcode", "--input-path", &input, "--raw-points"], dir.path());
    ok(&o);
    let svg = std::fs::read_to_string(dir.path().join("pair_raw_barcode.svg")).unwrap();
    assert_eq!(svg.matches("class=\"bar dim0\"").count(), 2);
    assert!(svg.lines().filter(|l| l.contains("class=\"bar dim0\"")).all(|l| l.contains("fill=\"#d62728\"")));
    assert_eq!(svg.matches("class=\"bar dim1\"").count(), 0);
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 3);
}

#[test]
fn square_one_blue_bar() {
    let dir = tempfile::tempdir().unwrap();
    let square = [vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]];
    let input = raw(dir.path(), "square.csv", &square);
    ok(&tda(&["barcode", "--input-path", &input, "--raw-points", "--normalization", "minmax"], dir.path()));
    let svg = std::fs::read_to_string(dir.path().join("square_raw_barcode.svg")).unwrap();
    assert_eq!(svg.matches("class=\"bar dim1\"").count(), 1);
    assert!(svg.contains("#1f77b4"));
    let csv = std::fs::read_to_string(dir.path().join("square_raw_diagram.csv")).unwrap();
    let diagram = PersistenceDiagram::from_csv(&csv).unwrap();
    let h1: Vec<_> = diagram.in_dimension(1).collect();
    assert_eq!((h1[0].birth, h1[0].death), (1.0, 2f64.sqrt()));
    let merges = std::fs::read_to_string(dir.path().join("square_raw_merges.csv")).unwrap();
    assert_eq!(merges.lines().count(), 4);
}

#[test]
fn region_and_variant_in_file_names() {
    let dir = tempfile::tempdir().unwrap();
    let rows: Vec<_> = (1..=12u32)
        .map(|w| ("Texas".to_string(), 2021, w, (0..15).map(|c| 100 + c * w as u64 % 7).collect()))
        .chain((1..=12u32).map(|w| ("Vermont".to_string(), 2021, w, vec![5; 15])))
        .collect();
    let input = dir.path().join("cdc.csv");
    write(&input, &cdc_csv(&rows));
    let o = tda(&["barcode", "--input-path", input.to_str().unwrap(), "--region", "South", "--no-dates"], dir.path());
    ok(&o);
    for artifact in ["diagram.csv", "merges.csv", "barcode.svg"] {
        assert!(dir.path().join(format!("south_nodates_{artifact}")).exists(), "{artifact}");
    }
    assert!(!dir.path().join("northeast_nodates_diagram.csv").exists());
}

#[test]
fn lens_dim_larger_than_columns_fails() {
    let dir = tempfile::tempdir().unwrap();
    let input = raw(dir.path(), "flat.csv", &noisy_circle(1, 20, 0.1));
    let o = tda(&["mapper", "--input-path", &input, "--raw-points", "--lens-dim", "3"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert!(!dir.path().join("flat_raw_mapper.json").exists());
}

#[test]
fn single_blob_single_node() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = rng(2);
    let input = raw(dir.path(), "blob.csv", &random_points(&mut rng, 40, 3));
    ok(&tda(
        &["mapper", "--input-path", &input, "--raw-points", "--n-intervals", "1", "--eps", "10", "--min-samples", "2"],
        dir.path(),
    ));
    let json = std::fs::read_to_string(dir.path().join("blob_raw_mapper.json")).unwrap();
    let graph = MapperGraph::from_json(&json).unwrap();
    assert_eq!(graph.nodes.len(), 1);
    assert_eq!(graph.nodes[0].members.len(), 40);
    assert!(graph.edges.is_empty());
}

#[test]
fn circle_mapper_has_one_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let input = raw(dir.path(), "ring.csv", &noisy_circle(9, 300, 0.05));
    ok(&tda(
        &[
            "mapper", "--input-path", &input, "--raw-points", "--lens-dim", "1", "--cluster-dim", "2",
            "--n-intervals", "10", "--eps", "0.3", "--min-samples", "3", "--html",
        ],
        dir.path(),
    ));
    let graph = MapperGraph::from_json(&std::fs::read_to_string(dir.path().join("ring_raw_mapper.json")).unwrap()).unwrap();
    assert_eq!(graph_cycle_rank(&graph), 1);
    let dot = std::fs::read_to_string(dir.path().join("ring_raw_mapper.dot")).unwrap();
    assert!(dot.starts_with("graph mapper {"));
    assert_eq!(dot.matches(" -- ").count(), graph.edges.len());
    let html = std::fs::read_to_string(dir.path().join("ring_raw_mapper.html")).unwrap();
    assert!(html.contains("id=\"mapper-data\""));
    let pca = std::fs::read_to_string(dir.path().join("ring_raw_pca.txt")).unwrap();
    assert_eq!(pca.lines().count(), 3);
}

#[test]
fn output_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let input = raw(dir.path(), "pair.csv", &[vec![0.0], vec![1.0]]);
    let out = dir.path().join("from-env");
    let o = Command::new(env!("CARGO_BIN_EXE_tda"))
        .args(["barcode", "--input-path", &input, "--raw-points"])
        .env("TDA_OUTPUT_DIR", &out)
        .output()
        .unwrap();
    ok(&o);
    assert!(out.join("pair_raw_diagram.csv").exists());
}

#[test]
fn diagnose_reports_and_rejects_single_row() {
    let dir = tempfile::tempdir().unwrap();
    let planar: Vec<Vec<f64>> = noisy_circle(4, 30, 0.1).into_iter().map(|p| vec![p[0], p[1], p[0] - p[1]]).collect();
    let input = raw(dir.path(), "planar.csv", &planar);
    let o = tda(&["diagnose", "--input-path", &input, "--raw-points", "--lens-dim", "2"], dir.path());
    ok(&o);
    assert!(String::from_utf8_lossy(&o.stdout).contains("pearson correlation: 1.000000"));

    let input = raw(dir.path(), "one.csv", &[vec![1.0, 2.0]]);
    let o = tda(&["diagnose", "--input-path", &input, "--raw-points"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no pairs"));
}

#[test]
fn missing_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.csv");
    let o = tda(&["barcode", "--input-path", missing.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("absent.csv"));
}
