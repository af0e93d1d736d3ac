use std::process::{Command, Output};

use cosmetic::check::verify_json;
use cosmetic::TwoBridgeKnot;
use serde_json::Value;

fn cosmetic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosmetic")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn surfaces_listing() {
    let o = cosmetic(&["surfaces", "S(49,19)"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("[2, -2, -4, -3]"));
    assert!(text.contains("non-orientable, distinct (genus, slope) 8"));
    assert_eq!(stdout(&cosmetic(&["surfaces", "9_27"])), text);
    assert_eq!(stdout(&cosmetic(&["surfaces", "49/19"])), text);
}

#[test]
fn surfaces_json_for_figure_eight() {
    let o = cosmetic(&["surfaces", "S(5,2)", "--json"]);
    assert!(o.status.success());
    let rows: Vec<Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.len(), 3);
    let mut slopes: Vec<&str> = rows.iter().map(|r| r["slope"].as_str().unwrap()).collect();
    slopes.sort();
    assert_eq!(slopes, vec!["-4/1", "0/1", "4/1"]);
    for r in &rows {
        for key in ["expansion", "slope", "chi", "orientable", "boundary_components", "genus"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn surfaces_tsv() {
    let o = cosmetic(&["--tsv", "surfaces", "S(3,1)"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "genus\torientable\tslope\tchi\tboundary_components\texpansion");
    assert_eq!(lines[1], "1\ttrue\t0/1\t-1\t1\t[-2, -2]");
    assert_eq!(lines[2], "1\tfalse\t6/1\t0\t1\t[3]");
}

#[test]
fn invariants_json() {
    let o = cosmetic(&["invariants", "9_27", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v,
        serde_json::json!({
            "alexander": {"-3": -1, "-2": 5, "-1": -11, "0": 15, "1": -11, "2": 5, "3": -1},
            "delta2": 0, "det": 49, "signature": 0, "tau": 0
        })
    );
}

#[test]
fn obstruct_prints_verdict_and_certificate() {
    let o = cosmetic(&["obstruct", "S(49,19)", "10/3", "-10/3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("Ni-Wu: (a) r1 = -r2 true  (b) q^2 = -1 mod p true  (c) tau = 0 true"));
    assert!(text.contains("DISTINGUISHED"));
    let cert = &text[text.find("certificate:\n").unwrap() + "certificate:\n".len()..];
    verify_json(&TwoBridgeKnot::new(49, 19).unwrap(), cert).unwrap();
}

#[test]
fn obstruct_json_is_deterministic() {
    let args = ["obstruct", "S(49,19)", "10/3", "-10/3", "--json", "--verify"];
    let a = cosmetic(&args);
    let b = cosmetic(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["verdict"], "DISTINGUISHED");
    assert_eq!(v["verified"], true);
    assert_eq!(v["boyer_lines"]["obstructs"], false);
}

#[test]
fn obstruct_inapplicable() {
    let o = cosmetic(&["obstruct", "S(49,19)", "7/2", "-7/2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("INCONCLUSIVE"));
    assert!(stdout(&o).contains("method inapplicable"));
}

#[test]
fn usage_errors() {
    let equal = cosmetic(&["obstruct", "S(49,19)", "10/3", "10/3"]);
    assert_eq!(equal.status.code(), Some(2));
    let meridian = cosmetic(&["obstruct", "S(49,19)", "1/0", "-10/3"]);
    assert_eq!(meridian.status.code(), Some(4));
    assert_eq!(cosmetic(&["surfaces", "S(4,1)"]).status.code(), Some(2));
    assert_eq!(cosmetic(&["surfaces", "nonsense"]).status.code(), Some(2));
    assert_eq!(cosmetic(&["invariants"]).status.code(), Some(2));
}

#[test]
fn scan_small() {
    let o = cosmetic(&["scan", "--max-p", "49", "--verify", "--tsv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "S(49,19)\t10/3\t-10/3\tDISTINGUISHED\tgenus_gap"));
    let json = cosmetic(&["scan", "--max-p", "21", "--json"]);
    let again = cosmetic(&["scan", "--max-p", "21", "--json"]);
    assert_eq!(json.stdout, again.stdout);
    let records: Vec<Value> = serde_json::from_slice(&json.stdout).unwrap();
    assert!(records.iter().all(|r| r["pairs"].as_array().unwrap().iter().all(|p| {
        p["niwu"]["survives"] == true && r["boyer_lines_obstructs"] == false
    })));
}
