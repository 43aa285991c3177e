use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kneser(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kneser")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn diagnostic(o: &Output) -> Value {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    serde_json::from_str(err.lines().last().expect("a diagnostic line")).expect("JSON diagnostic")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    let o = kneser(&["construct", "--family", "kn2-achromatic", "--n", "13", "--out", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&file).unwrap();
    let parsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["classes"].as_array().unwrap().len(), 30);

    let o = kneser(&[
        "verify", "--graph", "kneser", "--n", "13", "--k", "2", "--coloring", path_str(&file), "--checks",
        "proper,complete,grundy",
    ]);
    assert_eq!(o.status.code(), Some(1), "the size-sorted n = 13 coloring need not be Grundy");
    let o = kneser(&["verify", "--n", "13", "--k", "2", "--coloring", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["color_count"], 30);

    // Re-serializing the typed file reproduces it byte for byte.
    let typed: kneser_colorings::ColoringFile = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&typed).unwrap() + "\n", text);
}

#[test]
fn grundy_family_passes_grundy_check() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    let o = kneser(&["construct", "--family", "kn2-grundy", "--n", "11", "--out", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let o = kneser(&["verify", "--coloring", path_str(&file), "--checks", "proper,complete,grundy"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn tampered_coloring_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    kneser(&["construct", "--family", "kn2-achromatic", "--n", "13", "--out", path_str(&file)]);
    let mut c: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let classes = c["classes"].as_array_mut().unwrap();
    let big = classes.iter().position(|cl| cl.as_array().unwrap().len() >= 2).unwrap();
    let moved = classes[big].as_array_mut().unwrap().pop().unwrap();
    let target = (big + 1) % classes.len();
    classes[target].as_array_mut().unwrap().push(moved);
    std::fs::write(&file, serde_json::to_string(&c).unwrap()).unwrap();

    let o = kneser(&["verify", "--n", "13", "--k", "2", "--coloring", path_str(&file)]);
    assert_eq!(o.status.code(), Some(1));
    let d = diagnostic(&o);
    assert_eq!(d["error"], "verification_failed");
    assert!(!d["detail"]["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn bounds_csv_rows() {
    let o = kneser(&["bounds", "--n-max", "10", "--k-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rd.records().count(), 9);
}

#[test]
fn usage_and_domain_errors_exit_two() {
    let o = kneser(&["construct", "--family", "kn2-achromatic", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(diagnostic(&o)["error"], "usage");

    let o = kneser(&["design", "--kind", "sts", "--n", "11"]);
    assert_eq!(o.status.code(), Some(2));
    let d = diagnostic(&o);
    assert_eq!(d["error"], "domain");
    assert!(d["message"].as_str().unwrap().contains("mod 6"));

    let o = kneser(&["oracle", "--param", "alpha", "--n", "8", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(diagnostic(&o)["error"], "size");

    let o = kneser(&["export", "--format", "svg", "--coloring", "missing.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_reports_json() {
    let o = kneser(&["oracle", "--param", "alpha", "--n", "5", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["value"], 5);
    assert_eq!(r["param"], "alpha");
}

#[test]
fn seeded_invocations_are_byte_identical() {
    let runs = [
        vec!["construct", "--family", "kn2-psi-lower", "--n", "16", "--seed", "7"],
        vec!["design", "--kind", "c4-free", "--n", "10", "--seed", "3"],
        vec!["geom", "--op", "dv-coloring", "--n", "9", "--layout", "random", "--seed", "11"],
        vec!["design", "--kind", "kts", "--n", "15", "--threads", "2"],
    ];
    for args in runs {
        let a = kneser(&args);
        let b = kneser(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let one = Command::new(env!("CARGO_BIN_EXE_kneser"))
        .args(["geom", "--op", "dvnk", "--n", "8", "--k", "2"])
        .env("KNESER_THREADS", "1")
        .output()
        .unwrap();
    let many = kneser(&["geom", "--op", "dvnk", "--n", "8", "--k", "2", "--threads", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn bad_thread_env_is_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_kneser"))
        .args(["bounds", "--n-max", "4"])
        .env("KNESER_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dot_export_colors_every_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    kneser(&["construct", "--family", "kn2-achromatic", "--n", "5", "--out", path_str(&file)]);
    let o = kneser(&["export", "--format", "dot", "--coloring", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("graph"));
    assert_eq!(text.matches("color=").count(), 10);
    assert_eq!(text.matches(" -- ").count(), 15);
}

#[test]
fn geometry_ops() {
    let o = kneser(&["geom", "--op", "thrackle", "--n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["max_edges"], 7);

    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.json");
    let col = dir.path().join("dv.json");
    kneser(&["geom", "--op", "points", "--n", "9", "--layout", "random", "--seed", "2", "--out", path_str(&pts)]);
    let o = kneser(&["geom", "--op", "dv-coloring", "--points", path_str(&pts)]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    std::fs::write(&col, v["coloring"].to_string()).unwrap();
    let o = kneser(&["verify", "--graph", "dv", "--points", path_str(&pts), "--coloring", path_str(&col)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
