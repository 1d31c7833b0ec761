use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn hcyc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcyc")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = hcyc(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn hh_of_dual_numbers_table() {
    let out = hcyc(&["hh", "--preset", "dual_numbers", "-D", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("certified range [0, 3]"), "{text}");
    let betti: Vec<&str> = text.lines().find(|l| l.trim_start().starts_with("betti")).unwrap().split_whitespace().collect();
    assert_eq!(betti, ["betti", "2", "1", "1", "1"]);
}

#[test]
fn report_schema() {
    let v = json(&["hc", "--preset", "truncated_poly:3", "-D", "5"]);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["task"], "hc");
    assert_eq!(v["config"]["degree_bound"], 5);
    assert!(v["config"].get("threads").is_none());
    let r = &v["results"][0];
    assert_eq!(r["task"], "hc");
    assert_eq!(r["inputs"]["algebra"], "truncated_poly:3");
    assert_eq!(r["betti"], serde_json::json!([3, 0, 3, 0]));
    assert_eq!(r["certified_range"], serde_json::json!({"lo": 0, "hi": 3}));
    assert!(r["timings_ms"].is_null());
    assert!(r.get("verdict").is_none());
}

#[test]
fn every_betti_table_has_a_range() {
    for args in [
        vec!["hh", "--preset", "fat_point"],
        vec!["hunital", "--preset", "null:1"],
        vec!["ce", "--preset", "ground", "-r", "2"],
        vec!["lqt", "--preset", "ground", "-r", "3", "-D", "3"],
        vec!["tangent", "--preset", "ground", "--base", "dual_numbers", "-D", "3"],
    ] {
        let v = json(&args);
        for r in v["results"].as_array().unwrap() {
            if r.get("betti").is_some() {
                assert!(r["certified_range"].is_object(), "{args:?}");
            }
        }
    }
}

#[test]
fn wodzicki_verdicts() {
    let v = json(&["wodzicki", "--ext", "split_product", "-D", "5"]);
    assert_eq!(v["results"][0]["verdict"], "PASS");
    // A negative verdict is still a successful run.
    let v = json(&["wodzicki", "--ext", "upper_triangular_to_diagonal", "-D", "4"]);
    assert_eq!(v["results"][0]["verdict"], "FAIL");
    assert_eq!(v["results"][0]["failing_degree"], 0);
}

#[test]
fn other_tasks_run() {
    let v = json(&["connes", "--preset", "dual_numbers", "-D", "4"]);
    assert_eq!(v["results"][0]["verdict"], "PASS");
    let v = json(&["filtration", "--ext", "dual_to_ground", "--level", "1", "-D", "4"]);
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["verdict"] == "PASS"));
    let v = json(&["trace", "--preset", "dual_numbers", "-r", "2", "-D", "4"]);
    assert_eq!(v["results"][0]["verdict"], "PASS");
    let v = json(&["h2hc1", "--preset", "ground", "-r", "3"]);
    assert_eq!(v["results"][0]["details"]["h2_gl"], 0);
    let v = json(&["chern1", "--ext", "dual_to_ground", "--samples", "10"]);
    let tasks: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["task"].as_str().unwrap()).collect();
    assert_eq!(tasks, ["chern1", "k1_rel_probe"]);
    let v = json(&["ce", "--preset", "ground", "-r", "2", "--lie", "sl", "-D", "3"]);
    assert_eq!(v["results"][0]["betti"], serde_json::json!([1, 0, 0, 1]));
}

#[test]
fn representatives_are_emitted_on_request() {
    let v = json(&["hh", "--preset", "dual_numbers", "-D", "3", "--reps"]);
    let reps = v["results"][0]["representatives"].as_object().unwrap();
    assert_eq!(reps["0"].as_array().unwrap().len(), 2);
    assert_eq!(reps["1"].as_array().unwrap().len(), 1);
}

#[test]
fn timings_only_on_request() {
    let v = json(&["hh", "--preset", "ground", "--timings"]);
    assert!(v["results"][0]["timings_ms"].is_number());
}

#[test]
fn output_is_deterministic_across_threads() {
    let args = ["chern1", "--ext", "trunc3_to_ground", "--samples", "20", "--format", "json"];
    let one = hcyc(&[&args[..], &["--threads", "1"]].concat());
    let four = hcyc(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn algebra_files() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "algebra eps dim 2\nbasis 1 e\nmul 1 1 = 1\nmul 1 e = e\nmul e 1 = e\nunit = 1\naugmentation = 1").unwrap();
    let path = f.path().to_str().unwrap();
    let v = json(&["hh", "--file", path, "-D", "4"]);
    assert_eq!(v["results"][0]["betti"], serde_json::json!([2, 1, 1]));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "algebra x dim 2\nmul 1 1 = 1\nmul 1 9 = 1").unwrap();
    let bpath = bad.path().to_str().unwrap();
    let out = hcyc(&["hh", "--file", bpath]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains(&format!("{bpath}:3:")), "{}", stderr(&out));
}

#[test]
fn exit_codes() {
    assert_eq!(hcyc(&["hh", "--preset", "ground", "-D", "1"]).status.code(), Some(2));
    assert_eq!(hcyc(&["hh"]).status.code(), Some(2));
    assert_eq!(hcyc(&["hh", "--preset", "no_such_thing"]).status.code(), Some(2));
    assert_eq!(hcyc(&["wodzicki", "--ext", "no_such_ext"]).status.code(), Some(2));
    assert_eq!(hcyc(&["hh", "--file", "/nonexistent/algebra.txt"]).status.code(), Some(3));
    let out = hcyc(&["ce", "--preset", "ground", "-r", "3", "-D", "5", "--size-limit", "100"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("size limit"));
    assert_eq!(hcyc(&["connes", "--preset", "ground", "-D", "2"]).status.code(), Some(5));
}
