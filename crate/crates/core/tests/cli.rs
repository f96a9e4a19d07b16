use std::process::Command;

use hermlat::cli::{run, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT, EXIT_OK};
use serde_json::Value;

fn hermlat(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hermlat").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("{}: {}", e, s))
}

#[test]
fn truant_examples() {
    for (args, want) in [
        (vec!["truant", "--m", "39", "--gram", "1"], "truant: 2"),
        (vec!["truant", "--m", "17", "--gram", "1;1;2", "--diag"], "truant: 14"),
        (vec!["truant", "--m", "39", "--gram", "1,0,0;0,2,w;0,cw,5"], "truant: 13"),
    ] {
        let (code, out, _) = hermlat(&args);
        assert_eq!(code, EXIT_OK);
        assert!(out.lines().any(|l| l == want), "{:?}: {}", args, out);
    }
}

#[test]
fn truant_universal_and_json() {
    let (code, out, _) = hermlat(&["truant", "--m", "3", "--gram", "1;1", "--diag", "--limit", "100"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("universal up to 100"), "{}", out);

    let (_, out, _) = hermlat(&["truant", "--m", "39", "--gram", "1;2", "--diag", "--json"]);
    let v = json(&out);
    assert_eq!(v["truant"], 5);
    assert_eq!(v["tool"], "hermlat");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["input"]["gram"], "1;2");
    assert_eq!(v["input"]["limit"], 300);
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["truant", "--m", "39", "--gram", "1,0;0,x"],
        vec!["truant", "--m", "12", "--gram", "1"],
        vec!["truant", "--m", "5", "--gram", "1,w;w,1"],
        vec!["truant", "--gram", "1"],
        vec!["tables", "nope"],
        vec!["check", "--m", "19", "--gram", "1;2", "--diag", "--mode", "magic"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = hermlat(&args);
        assert_eq!(code, EXIT_INPUT, "{:?}", args);
        assert!(!err.is_empty());
    }
}

#[test]
fn check_examples() {
    let (code, out, _) = hermlat(&["check", "--m", "19", "--gram", "1;2", "--diag", "--mode", "critical"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["certified"], true);
    assert_eq!(v["certificate"]["proves_universality"], true);
    assert_eq!(v["certificate"]["critical_set"], serde_json::json!([1, 2, 3]));

    let (code, out, _) =
        hermlat(&["check", "--m", "39", "--gram", "1,0,0;0,2,w;0,cw,5", "--mode", "empirical", "--bound", "1404"]);
    assert_eq!(code, EXIT_FAIL);
    let v = json(&out);
    assert_eq!(v["certified"], false);
    assert_eq!(v["failure"]["truant"], 13);
    assert_eq!(v["input"]["bound"], 1404);

    let (code, out, _) = hermlat(&["check", "--m", "6", "--gram", "1;1;2", "--diag", "--mode", "inherited"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert!(v["certificate"]["citation"].as_str().unwrap().contains("<1,1,2,6>_Z"), "{}", out);
}

#[test]
fn tables_binary_and_formats() {
    let (code, out, _) = hermlat(&["tables", "binary"]);
    assert_eq!(code, EXIT_OK, "{}", out);

    let (code, out, _) = hermlat(&["tables", "binary", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 12);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| !r["citation"].as_str().unwrap().is_empty()));

    let (_, out, _) = hermlat(&["tables", "binary", "--csv"]);
    assert_eq!(out.lines().next(), Some("key,expected,computed,status"));
    assert_eq!(out.lines().count(), 13);
}

#[test]
fn tables_diff_exits_1() {
    // The conditions table lists two O-isometric lattices for m = 35 separately;
    // with Hermitian deduplication that row cannot match.
    let (code, out, _) = hermlat(&["tables", "conditions", "--json"]);
    assert_eq!(code, EXIT_FAIL);
    let v = json(&out);
    let diffs: Vec<&str> =
        v["rows"].as_array().unwrap().iter().filter(|r| r["ok"] == false).map(|r| r["key"].as_str().unwrap()).collect();
    assert_eq!(diffs.len(), 1, "{:?}", diffs);
    assert!(diffs[0].contains("m=35"), "{:?}", diffs);
}

#[test]
fn escalate_examples() {
    let (code, out, _) = hermlat(&["escalate", "--m", "3", "--depth", "2", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["complete"], true);
    let certified: Vec<&str> = v["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|n| n["status"] == "universal_certified")
        .map(|n| n["gram"].as_str().unwrap())
        .collect();
    assert!(certified.contains(&"m=3 rank=2; 1,0; 0,1"), "{:?}", certified);

    let (code, out, _) = hermlat(&["escalate", "--m", "39", "--depth", "3"]);
    assert_eq!(code, EXIT_OK);
    let summary = out.lines().find(|l| l.starts_with("truants:")).unwrap();
    assert!(summary.split([' ', ',']).any(|t| t == "13"), "{}", summary);
}

#[test]
fn escalate_resource_limit_exits_3_with_partial_output() {
    let (code, out, _) = hermlat(&["escalate", "--m", "17", "--depth", "3", "--max-nodes", "5", "--json"]);
    assert_eq!(code, EXIT_LIMIT);
    let v = json(&out);
    assert_eq!(v["complete"], false);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 5);
}

#[test]
fn escalate_is_deterministic() {
    let a = hermlat(&["escalate", "--m", "11", "--depth", "2", "--json"]);
    let b = hermlat(&["escalate", "--m", "11", "--depth", "2", "--json"]);
    assert_eq!(a, b);
}

#[test]
fn resume_cache_via_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let bin = env!("CARGO_BIN_EXE_hermlat");
    let go = || {
        Command::new(bin)
            .args(["escalate", "--m", "7", "--depth", "2", "--resume", "--json"])
            .env("HERMLAT_CACHE", &path)
            .current_dir(dir.path())
            .output()
            .unwrap()
    };
    let first = go();
    assert_eq!(first.status.code(), Some(EXIT_OK));
    assert!(path.exists());
    let cached = json(&std::fs::read_to_string(&path).unwrap());
    assert!(!cached["entries"].as_object().unwrap().is_empty());
    let second = go();
    assert_eq!(second.status.code(), Some(EXIT_OK));
    let strip = |o: &[u8]| {
        let mut v = json(std::str::from_utf8(o).unwrap());
        v["input"]["cache"] = Value::Null;
        v
    };
    assert_eq!(strip(&first.stdout), strip(&second.stdout));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_hermlat");
    let ok = Command::new(bin).args(["truant", "--m", "39", "--gram", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("truant: 2"));
    let bad = Command::new(bin).args(["tables", "bogus"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
    let fail = Command::new(bin)
        .args(["check", "--m", "39", "--gram", "1,0,0;0,2,w;0,cw,5", "--mode", "empirical", "--bound", "1404"])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(EXIT_FAIL));
}
