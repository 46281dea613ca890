use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn k3m20(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3m20")).args(args).env_remove("K3M20_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let o = k3m20(&all);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (v, o.status.code().unwrap())
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&schema).unwrap()
}

#[test]
fn lattice_commands() {
    let o = k3m20(&["lattice", "det", "--gram", "4,0,-2;0,4,-2;-2,-2,12"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "det: 160"));
    let (v, _) = json(&["lattice", "isometries"]);
    assert_eq!(v["order"], 16);
    let (v, _) = json(&["lattice", "short", "--norm", "8"]);
    assert_eq!(v["count"], 4);
    let (v, _) = json(&["lattice", "classify"]);
    assert_eq!(v["cases"].as_array().unwrap().len(), 3);
    let (v, _) = json(&["lattice", "complement", "--vector", "1,-1,0"]);
    assert_eq!(v["reduced_gram"], "[[8, 4], [4, 12]]");
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["report", "--bogus"][..],
        &["lattice", "det", "--gram", "1,2;3,4"],
        &["lattice", "det", "--gram", "1,2;3"],
        &["lattice", "det", "--gram", "-1,0;0,1"],
        &["lattice", "complement", "--vector", "1,0"],
        &["group", "nosuchgroup", "order"],
        &["group", "--file", "/nonexistent.toml", "order"],
        &["nikulin", "bh", "--orbit", "7"],
        &["cache", "list"],
    ] {
        assert_eq!(k3m20(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn group_commands() {
    let (v, code) = json(&["group", "mukai", "order"]);
    assert_eq!((v["order"].as_u64(), code), (Some(7680), 0));
    let o = k3m20(&["group", "mukai", "invariants", "--degree", "4"]);
    assert!(stdout(&o).contains("Σ(x^4) - 6*Σ(x^2*y^2)"), "{}", stdout(&o));
    let (v, _) = json(&["group", "bh", "projective-order"]);
    assert_eq!(v["order"], 1920);
    let (v, _) = json(&["group", "bh", "center"]);
    assert_eq!(v["order"], 2);
}

#[test]
fn group_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q8.toml");
    std::fs::write(
        &path,
        r#"
field = "Q(i)"
vars = ["a", "b"]
generators = [
    { name = "I", rows = [["i", "0"], ["0", "-i"]] },
    { name = "J", rows = [["0", "1"], ["-1", "0"]] },
]
"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (v, _) = json(&["group", "--file", p, "order"]);
    assert_eq!(v["order"], 8);
    let (v, _) = json(&["group", "--file", p, "derived-index"]);
    assert_eq!(v["index"], 4);
    let (v, _) = json(&["group", "--file", p, "spectrum"]);
    assert_eq!(v["projective_element_orders"], serde_json::json!({ "1": 1, "2": 3 }));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (v, _) = json(&["--cache-dir", d, "group", "bh", "order"]);
    assert_eq!((v["order"].as_u64(), v["cache"].as_str()), (Some(3840), Some("miss")));
    let (v, _) = json(&["--cache-dir", d, "group", "bh", "order"]);
    assert_eq!(v["cache"], "hit");
    let (v, _) = json(&["--cache-dir", d, "cache", "list"]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 1);
    let o =
        Command::new(env!("CARGO_BIN_EXE_k3m20")).args(["cache", "clear"]).env("K3M20_CACHE_DIR", d).output().unwrap();
    assert!(stdout(&o).contains("removed: 1"), "{}", stdout(&o));
}

#[test]
fn nikulin_bh() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let (v, code) = json(&["nikulin", "bh", "--dot", dot.to_str().unwrap()]);
    assert_eq!((v["orbit_size"].as_u64(), v["max_disjoint"].as_u64(), code), (Some(16), Some(16), 0));
    assert_eq!(v["witness"].as_array().unwrap().len(), 16);
    assert!(std::fs::read_to_string(dot).unwrap().contains("graph"));
    let (v, _) = json(&["nikulin", "bh", "--orbit", "96"]);
    assert_eq!((v["orbit_size"].as_u64(), v["max_disjoint"].as_u64()), (Some(96), Some(12)));
}

#[test]
fn nikulin_mukai() {
    let (v, _) = json(&["nikulin", "mukai"]);
    assert_eq!((v["orbit_size"].as_u64(), v["max_disjoint"].as_u64()), (Some(320), Some(12)));
}

#[test]
fn quick_report_validates_and_fails_only_on_known_red() {
    let (v, code) = json(&["report", "--profile", "quick"]);
    let schema = schema();
    if let Err(errors) = schema.validate(&v) {
        panic!("{:?}", errors.map(|e| e.to_string()).collect::<Vec<_>>());
    }
    assert_eq!(code, 1);
    let checks = v["checks"].as_array().unwrap();
    let failing: Vec<&str> =
        checks.iter().filter(|c| c["status"] == "fail").map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(failing, ["lattice.orbits-norm40"]);
    let skipped: Vec<&str> =
        checks.iter().filter(|c| c["status"] == "skipped").map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(skipped, ["group.separation", "group.kondo-inclusion", "nikulin.mukai.max-disjoint"]);
}

fn without_timing(mut v: Value) -> Value {
    for c in v["checks"].as_array_mut().unwrap() {
        c["elapsed_ms"] = Value::from(0);
    }
    v
}

#[test]
fn text_and_json_agree_and_runs_are_deterministic() {
    let args = ["report", "--suite", "lattice", "--suite", "cm", "--suite", "kondo"];
    let (a, _) = json(&args);
    let (b, _) = json(&args);
    assert_eq!(without_timing(a.clone()), without_timing(b));
    let text = stdout(&k3m20(&args));
    let lines: Vec<&str> = text.lines().collect();
    let checks = a["checks"].as_array().unwrap();
    assert_eq!(lines.len(), checks.len() + 1);
    for (line, c) in lines.iter().zip(checks) {
        for key in ["id", "expected", "actual"] {
            assert!(line.contains(c[key].as_str().unwrap()), "{line} lacks {key} {}", c[key]);
        }
        assert!(line.starts_with(&c["status"].as_str().unwrap().to_uppercase()[..4]), "{line}");
    }
    let s = &a["summary"];
    assert!(lines.last().unwrap().starts_with(&format!("{} checks: {} pass", s["total"], s["pass"])));
}
