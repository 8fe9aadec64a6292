use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twobridge")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--json", "--deterministic"]);
    let o = run(&all);
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn best_bound_of_8_5_3() {
    let r = json(&["info", "C(8,5,3)"]);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["best_bound"]["value"], 2);
    assert_eq!(r["best_bound"]["family"], "odd-middle");
    assert_eq!(r["classification"]["kind"], "Knot");
}

#[test]
fn improper_link_exits_3() {
    let o = run(&["info", "C(3,3)", "--exact"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stdout).contains("Infeasible after 0"));
}

#[test]
fn trefoil_search() {
    let r = json(&["info", "C(3)", "--exact"]);
    assert_eq!(r["exact"]["value"], 1);
    assert_eq!(r["exact"]["status"], "found");
    assert_eq!(r["exact"]["exactness"], "exact");
}

#[test]
fn arf_for_both_orientations() {
    let a = json(&["info", "C(7,5)", "--arf", "--orientation", "a"]);
    let b = json(&["info", "C(7,5)", "--arf", "--orientation", "b"]);
    let values = |r: &Value| r["arf"].as_array().unwrap().iter().map(|v| v["value"].as_u64().unwrap()).collect::<Vec<_>>();
    assert_eq!(values(&a), vec![0, 0]);
    assert_eq!(values(&b), vec![1, 1]);
}

#[test]
fn parse_error_exits_2() {
    assert_eq!(code(&run(&["info", "C(3,-1)"])), 2);
    assert_eq!(code(&run(&["info", "hello"])), 2);
    assert_eq!(code(&run(&["render", "C()"])), 2);
}

#[test]
fn search_limit_exits_4() {
    let o = run(&["info", "C(9,9,9)", "--exact", "--max-size", "1"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn deterministic_reports_are_byte_identical() {
    let args = ["info", "C(2,3,4,2,6)", "--exact", "--arf", "--json", "--deterministic"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(!String::from_utf8_lossy(&first.stdout).contains("timings_ms"));
}

#[test]
fn timings_appear_outside_deterministic_mode() {
    let o = run(&["info", "C(3)", "--json"]);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r["timings_ms"]["bounds"].is_number());
}

fn svg_of(args: &[&str]) -> String {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.svg");
    let mut all = args.to_vec();
    all.extend(["--out", path.to_str().unwrap()]);
    let o = run(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::read_to_string(&path).unwrap()
}

#[test]
fn render_highlights_the_chain() {
    let text = svg_of(&["render", "C(2,3,4,2,6)", "--highlight", "even-horizontal"]);
    let doc = roxmltree::Document::parse(&text).expect("well-formed svg");
    let regions: BTreeSet<&str> = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("highlight"))
        .filter_map(|n| n.attribute("data-region"))
        .collect();
    assert_eq!(regions, BTreeSet::from(["R3", "R7", "R11"]));
}

#[test]
fn render_counts_crossings() {
    for (word, crossings) in [("C(3)", 3), ("C(2,2)", 4)] {
        let text = svg_of(&["render", word]);
        let doc = roxmltree::Document::parse(&text).expect("well-formed svg");
        assert_eq!(doc.root_element().tag_name().name(), "svg");
        let n = doc.descendants().filter(|n| n.attribute("class") == Some("crossing")).count();
        assert_eq!(n, crossings, "{word}");
    }
}

#[test]
fn render_to_stdout_and_bad_family() {
    let o = run(&["render", "C(3)"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("<svg"));
    assert_eq!(code(&run(&["render", "C(3,2,4)", "--highlight", "even-horizontal"])), 2);
    assert_eq!(code(&run(&["render", "C(3)", "--highlight", "nonsense"])), 2);
}

#[test]
fn unwritable_output_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.svg");
    assert_eq!(code(&run(&["render", "C(3)", "--out", path.to_str().unwrap()])), 5);
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "cmn-exact", "--max-crossings", "12"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("cmn-exact: pass"));
    assert_eq!(code(&run(&["verify", "table1", "--param-max", "4"])), 0);
    assert_eq!(code(&run(&["verify", "euler", "--max-crossings", "20"])), 0);
}

#[test]
fn verify_reports_counterexamples() {
    // the C(m,p,n) closed form is wrong for some m even, p odd
    let o = run(&["verify", "arf-knots", "--max-crossings", "8"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("C(1,1,4): closed form 1, determinant 9 gives 0"));
}

#[test]
fn verify_over_budget_exits_4() {
    assert_eq!(code(&run(&["verify", "euler", "--max-crossings", "40"])), 4);
    assert_eq!(code(&run(&["verify", "nonsense"])), 2);
}
