use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const GAP_TRIPLE: &str = "0,0,0,0.485\n1,0.9,0,0.485\n2,0.45,0.8,0.485\n";
const FIVE_B: &str = "# five cells\nid,x,y,r\n0,0,1.05,0.5\n1,-0.1,0.15,0.6\n2,0.6,0,0.6\n3,1.2,0.2,0.5\n4,0.9,0.9,0.8\n";

fn cech(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cech"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = cech(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn file(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn report(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn numbers(v: &Value) -> Vec<u64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect()
}

#[test]
fn five_b_file_gives_betti_and_indices() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(dir.path(), "five_b.csv", FIVE_B);
    let out_report = dir.path().join("report.json");
    let out_complex = dir.path().join("complex.json");
    let out_svg = dir.path().join("cells.svg");
    let rep = report(&[
        "build",
        "--input",
        &input,
        "--dmax",
        "full",
        "--out-report",
        out_report.to_str().unwrap(),
        "--out-complex",
        out_complex.to_str().unwrap(),
        "--out-svg",
        out_svg.to_str().unwrap(),
    ]);
    assert_eq!(&numbers(&rep["betti"])[..2], &[1, 0]);
    for ix in rep["vertex_indices"].as_array().unwrap() {
        assert_eq!(ix["value"], 2);
        assert_eq!(ix["at_least"], false);
    }
    let written: Value = serde_json::from_str(&fs::read_to_string(out_report).unwrap()).unwrap();
    assert_eq!(written["betti"], rep["betti"]);
    let complex: Value = serde_json::from_str(&fs::read_to_string(out_complex).unwrap()).unwrap();
    assert_eq!(complex["kind"], "cech");
    assert_eq!(complex["dmax"], Value::Null);
    assert_eq!(
        complex["levels"][2],
        serde_json::json!([[0, 1, 4], [1, 2, 4], [2, 3, 4]])
    );
    assert!(fs::read_to_string(out_svg).unwrap().starts_with("<svg"));
}

#[test]
fn empty_file_reports_zeros() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(dir.path(), "empty.csv", "");
    let rep = report(&["build", "--input", &input]);
    assert_eq!(rep["cells"], 0);
    assert_eq!(numbers(&rep["level_sizes"]), vec![0]);
    assert!(numbers(&rep["betti"]).iter().all(|&b| b == 0));
}

#[test]
fn gap_triple_rips_misses_the_hole() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(dir.path(), "gap.csv", GAP_TRIPLE);
    assert_eq!(
        numbers(&report(&["build", "--input", &input])["betti"]),
        vec![1, 1]
    );
    assert_eq!(
        numbers(&report(&["build", "--rips", "--input", &input])["betti"]),
        vec![1, 0]
    );
    let rips = report(&["rips", "--input", &input]);
    assert_eq!(numbers(&rips["betti"]), vec![1, 0]);
    assert_eq!(rips["kind"], "rips");
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let args = ["build", "--density", "1.5", "--seed", "9", "--dmax", "3"];
    let mut a = report(&args);
    let mut b = report(&[
        "build",
        "--density",
        "1.5",
        "--seed",
        "9",
        "--dmax",
        "3",
        "--threads",
        "0",
    ]);
    for r in [&mut a, &mut b] {
        r["construction_ms"] = Value::Null;
        r["threads"] = Value::Null;
    }
    assert_eq!(a, b);
    assert_eq!(a["scenario"]["density"], 1.5);
}

#[test]
fn malformed_line_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(dir.path(), "bad.csv", "0,0,0,1\n# note\n1,0,zero,1\n");
    let out = cech(&["build", "--input", &input]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.csv:3"), "{err}");

    let missing = cech(&["build", "--input", "/nonexistent/cells.csv"]);
    assert!(!missing.status.success());
    assert!(!missing.stderr.is_empty());
}

#[test]
fn invalid_flags_are_rejected() {
    for args in [
        &["build", "--dmax", "0"][..],
        &["build", "--eps", "-1"],
        &["generate", "--density", "0"],
        &["generate", "--rmin", "1", "--rmax", "0.5"],
        &["crosscheck", "--resolution", "0"],
    ] {
        let out = cech(args);
        assert!(!out.status.success(), "{args:?} succeeded");
        assert!(!out.stderr.is_empty(), "{args:?} gave no diagnostic");
    }
    let err = String::from_utf8_lossy(&cech(&["generate", "--density", "0"]).stderr).into_owned();
    assert!(err.contains("density"), "{err}");
}

#[test]
fn generate_round_trips_through_build() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("cells.csv");
    let json = dir.path().join("cells.json");
    ok(&["generate", "--seed", "5", "--out", csv.to_str().unwrap()]);
    ok(&["generate", "--seed", "5", "--out", json.to_str().unwrap()]);
    assert_eq!(
        ok(&["generate", "--seed", "5"]),
        fs::read_to_string(&csv).unwrap()
    );
    let from_csv = report(&["build", "--input", csv.to_str().unwrap()]);
    let from_json = report(&["build", "--input", json.to_str().unwrap()]);
    let generated = report(&["build", "--seed", "5"]);
    for key in ["level_sizes", "betti", "vertex_indices"] {
        assert_eq!(from_csv[key], generated[key]);
        assert_eq!(from_json[key], generated[key]);
    }
}

#[test]
fn render_gap_triple_shows_the_hole() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(dir.path(), "gap.csv", GAP_TRIPLE);
    let svg = ok(&["render", "--input", &input]);
    assert_eq!(svg.matches("class=\"cell\"").count(), 3);
    assert_eq!(svg.matches("class=\"edge\"").count(), 3);
    assert_eq!(svg.matches("class=\"simplex\"").count(), 0);
    let rips = ok(&["render", "--rips", "--input", &input]);
    assert_eq!(rips.matches("class=\"simplex\"").count(), 1);
}

#[test]
fn bench_with_no_repeats_prints_header_only() {
    let out = ok(&["bench", "--repeats", "0"]);
    assert_eq!(
        out,
        "density,dmax,repeats,mean_cells,mean_degree,mean_ms,stddev_ms\n"
    );
}

#[test]
fn bench_rows_and_raw_samples() {
    let dir = tempfile::tempdir().unwrap();
    let raw = dir.path().join("raw.csv");
    let out = ok(&[
        "bench",
        "--repeats",
        "2",
        "--densities",
        "0.5,1",
        "--dmax",
        "2,full",
        "--out-raw",
        raw.to_str().unwrap(),
    ]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[1].starts_with("0.5,full,2,"), "{}", rows[1]);
    assert_eq!(fs::read_to_string(raw).unwrap().lines().count(), 1 + 8);
}

#[test]
fn crosscheck_agrees_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(dir.path(), "five_b.csv", FIVE_B);
    let out = ok(&["crosscheck", "--input", &input, "--dmax", "full"]);
    assert!(out.trim_end().ends_with("0 disagreements"), "{out}");
    let out = ok(&[
        "crosscheck",
        "--density",
        "1",
        "--seed",
        "3",
        "--dmax",
        "3",
        "--threads",
        "2",
    ]);
    assert!(out.trim_end().ends_with("0 disagreements"), "{out}");
}
