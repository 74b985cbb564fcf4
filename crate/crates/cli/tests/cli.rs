//! End-to-end runs of the binary: reports, exit codes and round trips.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_polycanon"));
    c.env_remove("POLYCANON_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("polycanon-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn family(&self, name: &str, n: &str) -> String {
        let path = self.0.join(format!("{name}-{n}.json"));
        let out = run(&["family", name, n, "-o", path.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        path.to_str().unwrap().to_string()
    }

    fn write(&self, name: &str, text: &str) -> String {
        let path = self.0.join(name);
        std::fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

#[test]
fn generators_reports() {
    let s = Scratch::new("gen");
    let unit = s.family("unit", "2");
    let out = run(&["generators", &unit]);
    assert!(out.status.success());
    let r = &json(&out)["result"];
    assert_eq!(r["invariant"], 3);
    assert_eq!(r["generators"][0]["point"], serde_json::json!([1, 1, 3]));
    assert_eq!(r["applicable_bound"], "d+1");

    let e2 = s.family("example2", "3");
    let r = json(&run(&["generators", &e2]));
    assert_eq!(r["result"]["degree_histogram"].as_object().unwrap().keys().collect::<Vec<_>>(), ["1", "2"]);

    let r = json(&run(&["generators", "--full", &s.family("reeve", "2")]));
    assert_eq!(r["result"]["action"], "full");
    assert!(r["result"]["invariant"].as_i64().unwrap() <= 2);
}

#[test]
fn malformed_input_exits_one() {
    let s = Scratch::new("bad");
    let bad = s.write("bad.json", "{\"ambient_dim\": 2}");
    assert_eq!(run(&["generators", &bad]).status.code(), Some(1));
    assert_eq!(run(&["generators", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    let frac = s.write("frac.json", r#"{"ambient_dim": 1, "inequalities": [{"normal": [2], "offset": 1}, {"normal": [-1], "offset": 0}]}"#);
    assert_eq!(run(&["generators", &frac]).status.code(), Some(1));
}

#[test]
fn rdeg_reports_and_rejects_boundary_points() {
    let s = Scratch::new("rdeg");
    let e1 = s.family("example1", "2");
    let r = json(&run(&["rdeg", &e1, "1", "1", "2"]));
    assert_eq!(r["result"]["rdeg"], 2);
    let r = json(&run(&["rdeg", &e1, "2", "2", "4"]));
    assert_eq!(r["result"]["rdeg"], 2);
    assert_eq!(r["result"]["witness"]["z"]["point"], serde_json::json!([1, 1, 2]));
    let e2 = s.family("example2", "3");
    assert_eq!(json(&run(&["rdeg", &e2, "1", "1", "5", "2"]))["result"]["rdeg"], 2);
    assert_eq!(run(&["rdeg", &e1, "1", "0", "1"]).status.code(), Some(1));
    assert_eq!(run(&["rdeg", &e1, "1", "1"]).status.code(), Some(1));
}

#[test]
fn family_output_round_trips() {
    for (name, n) in [("example1", "3"), ("example2", "2"), ("unit", "4"), ("reeve", "2")] {
        let out = run(&["family", name, n]);
        assert!(out.status.success());
        let s = Scratch::new(&format!("fam-{name}"));
        let path = s.write("f.json", std::str::from_utf8(&out.stdout).unwrap());
        let again = s.family(name, n);
        assert_eq!(std::fs::read_to_string(&path).unwrap(), std::fs::read_to_string(&again).unwrap());
    }
    let v = json(&run(&["family", "example1", "3"]));
    assert_eq!(v["vertices"], serde_json::json!([[0, 0, 0], [2, 0, 0], [0, 1, 0], [0, 0, 1]]));
    let v = json(&run(&["family", "example2", "2"]));
    assert_eq!(v["inequalities"].as_array().unwrap().len(), 5);
    assert_eq!(run(&["family", "example2", "1"]).status.code(), Some(1));
    assert_eq!(run(&["family", "reeve", "0"]).status.code(), Some(1));
}

#[test]
fn triangulate_reports() {
    let s = Scratch::new("tri");
    let e2 = s.family("example2", "2");
    let r = json(&run(&["triangulate", &e2, "--interior-respecting"]));
    assert_eq!(r["result"]["cell_count"], 7);
    assert_eq!(r["result"]["sigma_prime"].as_array().unwrap().len(), 15);
    assert_eq!(r["result"]["decomposition"]["holds"], true);
    let r = json(&run(&["triangulate", &e2]));
    assert_eq!(r["result"]["cell_count"], 7);

    let sq = s.write("sq.json", r#"{"ambient_dim": 2, "vertices": [[0,0],[1,0],[0,1],[1,1]]}"#);
    let r = json(&run(&["triangulate", &sq]));
    assert_eq!(r["result"]["cell_count"], 2);
    assert_eq!(r["result"]["triangulation"]["cells"].as_array().unwrap().len(), 2);
    assert_eq!(run(&["triangulate", &sq, "--interior-respecting"]).status.code(), Some(1));
}

#[test]
fn idp_reports() {
    let s = Scratch::new("idp");
    let e2 = s.family("example2", "3");
    assert_eq!(json(&run(&["idp", &e2, "4"]))["result"]["holds"], true);
    let reeve = s.family("reeve", "2");
    let r = json(&run(&["idp", &reeve, "3"]));
    assert_eq!(r["result"]["holds"], false);
    assert_eq!(r["result"]["counterexample"]["point"], serde_json::json!([1, 1, 1, 2]));
    assert_eq!(run(&["idp", &reeve, "1"]).status.code(), Some(1));
}

#[test]
fn verify_fixtures_and_corpus() {
    let s = Scratch::new("verify");
    let r = json(&run(&["verify", &s.family("reeve", "3")]));
    assert_eq!(r["result"]["verdicts"][0]["applicable_bound"], "d+1");
    let out = run(&["verify", &s.family("example2", "4")]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["verdicts"][0]["invariant"], 3);
    let out = run(&["verify", "--corpus", "--seed", "1", "--count", "100"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["violations"], 0);
    assert_eq!(run(&["verify"]).status.code(), Some(1));
}

#[test]
fn output_is_stable_across_runs_and_threads() {
    let s = Scratch::new("stable");
    let e2 = s.family("example2", "3");
    let a = run(&["generators", &e2]).stdout;
    let b = bin().args(["generators", &e2]).env("POLYCANON_THREADS", "3").output().unwrap().stdout;
    let c = run(&["--threads", "2", "generators", &e2]).stdout;
    assert_eq!(a, b);
    assert_eq!(a, c);
    let bad = bin().args(["generators", &e2]).env("POLYCANON_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let timed = json(&run(&["--timing", "generators", &e2]));
    assert!(timed["timing_ms"].is_u64());
}
