use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ycube"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    ok_json(&full);
    path
}

#[test]
fn gsd_of_the_flat_36_torus() {
    let dir = tempfile::tempdir().unwrap();
    let with = gen(dir.path(), "h.json", &["--p", "3", "--q", "6", "--periodic-l", "3", "--layers", "3", "--hexagon"]);
    let without = gen(dir.path(), "n.json", &["--p", "3", "--q", "6", "--periodic-l", "3", "--layers", "3"]);
    let g = ok_json(&["gsd", "--lattice", with.to_str().unwrap()]);
    assert_eq!(g["k"], 12);
    assert_eq!(g["n"], 108);
    assert_eq!(g["n"].as_u64().unwrap() - g["rank_x"].as_u64().unwrap() - g["rank_z"].as_u64().unwrap(), 12);
    assert_eq!(ok_json(&["gsd", "--lattice", without.to_str().unwrap()])["k"], 18);
    assert_eq!(ok_json(&["gsd", "--lattice", without.to_str().unwrap(), "--hexagon"])["k"], 12);
}

#[test]
fn empty_model_has_k_equal_n() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "d.json", &["--p", "5", "--q", "4", "--generations", "1", "--layers", "3"]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["terms"] = Value::Array(vec![]);
    std::fs::write(&path, v.to_string()).unwrap();
    let g = ok_json(&["gsd", "--lattice", path.to_str().unwrap()]);
    assert_eq!(g["k"], g["n"]);
    assert_eq!(g["rank_x"], 0);
}

#[test]
fn gen_is_deterministic_and_reloads_identically() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--p", "4", "--q", "6", "--generations", "1", "--layers", "3"];
    let a = std::fs::read_to_string(gen(dir.path(), "a.json", &args)).unwrap();
    let b = std::fs::read_to_string(gen(dir.path(), "b.json", &args)).unwrap();
    assert_eq!(a, b);
    let reloaded = ycube::clisvc::schema::to_string(&ycube::clisvc::schema::from_str(&a).unwrap());
    assert_eq!(a, reloaded);
}

#[test]
fn single_vertical_x_makes_four_fractons() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "d.json", &["--p", "5", "--q", "4", "--generations", "2", "--layers", "3"]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let interior = |id: &Value| v["vertices"][id.as_u64().unwrap() as usize]["interior"] == true;
    let edge = v["edges3"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["kind"] == "vertical" && interior(&e["a"][0]))
        .unwrap()["id"]
        .as_u64()
        .unwrap();
    let s = ok_json(&["syndrome", "--lattice", path.to_str().unwrap(), "--op", &format!("X@{edge}")]);
    assert_eq!(s["excited"].as_array().unwrap().len(), 4);
    assert!(s["particles"].as_array().unwrap().iter().all(|p| p["type"] == "fracton"));
}

#[test]
fn makeop_feeds_syndrome_and_mobility() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "d.json", &["--p", "5", "--q", "4", "--generations", "3", "--layers", "3"]);
    let lat = path.to_str().unwrap();
    let out = run(&["makeop", "--lattice", lat, "--kind", "stacked_geodesics", "--params", r#"{"target_face": 0}"#]);
    assert!(out.status.success());
    let op = String::from_utf8(out.stdout).unwrap();
    assert!(op.trim().split(' ').all(|t| t.starts_with("X@")));
    let s = ok_json(&["syndrome", "--lattice", lat, "--op", op.trim()]);
    assert_eq!(s["excited"].as_array().unwrap().len(), 1);

    let m = ok_json(&["mobility", "--lattice", lat, "--op", op.trim(), "--moves", "x"]);
    assert_eq!(m["in_plane_faces"], serde_json::json!([0]));
    assert_eq!(m["vertical_mobility"], false);
}

#[test]
fn logicals_come_in_k_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "t.json", &["--p", "4", "--q", "4", "--periodic-l", "3", "--layers", "3"]);
    let l = ok_json(&["logicals", "--lattice", path.to_str().unwrap()]);
    assert_eq!(l["k"], 15);
    assert_eq!(l["pairs"].as_array().unwrap().len(), 15);
}

#[test]
fn failures_exit_nonzero_with_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "d.json", &["--p", "5", "--q", "4", "--generations", "1", "--layers", "3"]);
    let lat = path.to_str().unwrap();
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["gsd", "--lattice", "/nonexistent.json"], "invalid_argument"),
        (vec!["syndrome", "--lattice", lat, "--op", "X@99999999"], "unknown_id"),
        (vec!["syndrome", "--lattice", lat, "--op", "Q@1"], "parse"),
        (vec!["makeop", "--lattice", lat, "--kind", "bogus"], "invalid_argument"),
        (vec!["makeop", "--lattice", lat, "--kind", "tree_logical", "--params", "{"], "parse"),
        (vec!["gen", "--p", "3", "--q", "4", "--generations", "1", "--layers", "3", "--out", "/tmp/x"], "spherical"),
        (vec!["gen", "--p", "5", "--q", "4", "--layers", "3", "--out", "/tmp/x"], "usage"),
        (vec!["mobility", "--lattice", lat, "--op", "X@0", "--moves", "sideways"], "usage"),
    ];
    for (args, code) in cases {
        let out = run(&args);
        assert!(!out.status.success(), "{args:?}");
        let err: Value = serde_json::from_slice(&out.stderr).unwrap_or_else(|_| panic!("{args:?}"));
        assert_eq!(err["error"]["code"], code, "{args:?}");
    }
}
