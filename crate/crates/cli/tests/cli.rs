use std::process::{Command, Output};

use serde_json::Value;

fn gpfp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpfp"))
        .args(args)
        .env_remove("GPFP_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = gpfp(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn vertices_of_2_3_4() {
    let v = json(&["vertices", "--b", "2,3,4", "--format", "json"]);
    let verts = v["vertices"].as_array().unwrap();
    assert_eq!(verts.len(), 16);
    assert!(verts.contains(&serde_json::json!([2, 5, 9])));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["seed"], 0);
    assert!(v["claim"].as_str().is_some_and(|c| !c.is_empty()));
}

#[test]
fn hpoly_of_1_2_3() {
    let v = json(&["hpoly", "--b", "1,2,3"]);
    assert_eq!(v["h"], serde_json::json!([1, 4, 4, 1]));
    assert_eq!(v["f"], serde_json::json!([10, 15, 7, 1]));
    assert_eq!(v["routes_agree"], true);
    let v = json(&["fvector", "--b", "2,2,2"]);
    assert_eq!(v["h"], serde_json::json!([1, 7, 7, 1]));
}

#[test]
fn full_verification_exits_zero() {
    let v = json(&["verify", "--b", "1,2,3", "--level", "full"]);
    assert_eq!(v["passed"], true);
    assert!(v["certificates"].as_array().unwrap().len() >= 10);
}

#[test]
fn facets_schema() {
    let v = json(&["facets", "--b", "1,2,3"]);
    let facets = v["facets"].as_array().unwrap();
    assert_eq!(facets.len(), 7);
    assert_eq!(facets[0], serde_json::json!({"kind": "lower", "i": 1, "rhs": 1}));
    assert_eq!(
        facets[6],
        serde_json::json!({"kind": "upper", "set": [1, 2, 3], "rhs": 10})
    );
}

#[test]
fn every_subcommand_runs() {
    let cases: &[&[&str]] = &[
        &["edges", "--b", "1,2,3"],
        &["faces", "--b", "1,2,3", "--dim", "1"],
        &["type", "--b", "2,3,4"],
        &["minkowski", "--b", "2,3,4", "--check-dirs", "20", "--seed", "7"],
        &["greedy", "--b", "2,3,4", "--w", "3,1/2,-1"],
        &["diameter", "--b", "2,3,4", "--verify-bfs"],
        &["circuit-walk", "--b", "2,3,4", "--from", "2,5,9", "--to", "9,1,5"],
        &["birkhoff", "--b", "1,2", "--verify"],
    ];
    for args in cases {
        let v = json(args);
        assert_eq!(v["command"], args[0], "{args:?}");
    }
}

#[test]
fn subcommand_payloads() {
    let v = json(&["faces", "--b", "1,2,3", "--dim", "1"]);
    assert_eq!(v["count"], 15);
    let v = json(&["type", "--b", "2,3,4"]);
    assert_eq!(v["type"], "stellohedron");
    let v = json(&["greedy", "--b", "2,3,4", "--w", "3,1/2,-1"]);
    assert_eq!(v["point"], serde_json::json!([9, 5, 1]));
    assert_eq!(v["value"], "57/2");
    assert_eq!(v["polymatroid_point"], serde_json::json!([8, 4, 0]));
    assert_eq!(v["polymatroid_value"], 26);
    let v = json(&["diameter", "--b", "2,3,4", "--verify-bfs"]);
    assert_eq!(v["combinatorial"], 4);
    assert_eq!(v["bfs"], 4);
    assert_eq!(v["circuit_bound"], 3);
    let v = json(&["circuit-walk", "--b", "2,3,4", "--from", "2,5,9", "--to", "9,1,5"]);
    assert!(v["length"].as_u64().unwrap() <= 3);
    assert_eq!(v["all_steps_maximal"], true);
    let v = json(&["birkhoff", "--b", "1,2", "--verify"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["parking_functions"], 5);
}

#[test]
fn json_is_deterministic() {
    let args = ["minkowski", "--b", "1,3,3,3", "--check-dirs", "30", "--seed", "11"];
    assert_eq!(gpfp(&args).stdout, gpfp(&args).stdout);
    let other = gpfp(&["minkowski", "--b", "1,3,3,3", "--check-dirs", "30", "--seed", "12"]);
    assert_ne!(gpfp(&args).stdout, other.stdout);
}

#[test]
fn table_carries_the_same_fields() {
    let j = json(&["type", "--b", "1,2,3"]);
    let out = gpfp(&["type", "--b", "1,2,3", "--format", "table"]);
    let table = String::from_utf8(out.stdout).unwrap();
    for (key, value) in j.as_object().unwrap() {
        let line = table
            .lines()
            .find(|l| l.starts_with(&format!("{key}:")))
            .unwrap_or_else(|| panic!("{key} missing from table"));
        if let Some(n) = value.as_u64() {
            assert!(line.ends_with(&n.to_string()), "{line}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(gpfp(&["vertices", "--b", "0,1"]).status.code(), Some(2));
    assert_eq!(gpfp(&["vertices"]).status.code(), Some(2));
    assert_eq!(gpfp(&["frobnicate", "--b", "1"]).status.code(), Some(2));
    let out = gpfp(&["vertices", "--b", "3,3,3,3,3,3,3", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    let out = Command::new(env!("CARGO_BIN_EXE_gpfp"))
        .args(["vertices", "--b", "3,3,3,3,3,3,3"])
        .env("GPFP_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = gpfp(&["circuit-walk", "--b", "2,3,4", "--from", "2,2,2", "--to", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_lists_every_subcommand() {
    let out = gpfp(&["--help"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for sub in [
        "vertices", "facets", "edges", "hpoly", "fvector", "faces", "type", "minkowski",
        "greedy", "diameter", "circuit-walk", "birkhoff", "verify",
    ] {
        assert!(text.contains(sub), "{sub}");
    }
}
