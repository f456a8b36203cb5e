use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run_raw(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_lgw"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8"),
        out.status.code().expect("exit code"),
    )
}

fn run(args: &[&str]) -> (Value, i32) {
    let (text, code) = run_raw(args);
    let v: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad JSON ({e}): {text}"));
    assert_eq!(v["exit_status"], code);
    (v, code)
}

#[test]
fn analyze_fermat_cubic() {
    let (v, code) = run(&["analyze", &fixture("cubic.toml")]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(r["weights"]["d"], 3);
    assert_eq!(r["weights"]["delta"][0], 1);
    assert_eq!(r["aut"]["order"], "3");
    assert_eq!(r["j"][0], "1/3");
    assert_eq!(r["nondegeneracy"]["nondegenerate"], true);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 0);
    assert_eq!(v["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn analyze_loop() {
    let (v, code) = run(&["analyze", &fixture("loop.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["aut"]["order"], "3");
    let gens = v["results"]["aut"]["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 1);
    assert_eq!(gens[0], serde_json::json!(["1/3", "1/3"]));
}

#[test]
fn analyze_cross_term_warns() {
    let (v, code) = run(&["analyze", &fixture("cross_term.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["nondegeneracy"]["nondegenerate"], false);
    let w = v["warnings"].as_array().unwrap();
    assert!(w.iter().any(|s| s.as_str().unwrap().contains("nondegenerate = false")));
}

#[test]
fn analyze_override_reports_inferred_weights() {
    let (v, code) = run(&["analyze", &fixture("override.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["inferred_weights"], v["results"]["weights"]);
    assert_eq!(v["results"]["group"]["order"], "3");
}

#[test]
fn analyze_error_codes() {
    let (v, code) = run(&["analyze", &fixture("bad_syntax.toml")]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
    let (v, code) = run(&["analyze", &fixture("no_j.toml")]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "semantic");
    let (_, code) = run(&["analyze", &fixture("bad_override.toml")]);
    assert_eq!(code, 3);
    let (_, code) = run(&["analyze", &fixture("missing.toml")]);
    assert_eq!(code, 2);
}

#[test]
fn sectors_of_the_cubic() {
    let cubic = fixture("cubic.toml");
    let (v, code) = run(&["sectors", &cubic, "--genus", "0", "--marks", "3", "--narrow"]);
    assert_eq!(code, 0);
    let tuples = v["results"]["tuples"].as_array().unwrap();
    assert_eq!(tuples.len(), 3);
    assert!(tuples.iter().all(|t| t["vdim"] == 0));
    let (v, _) = run(&["sectors", &cubic, "--marks", "3"]);
    assert_eq!(v["results"]["count"], 9);
    let (v, _) = run(&["sectors", &cubic, "--marks", "1"]);
    assert_eq!(v["results"]["count"], 1);
    assert_eq!(v["results"]["tuples"][0]["sectors"][0][0], "2/3");
}

#[test]
fn sectors_cap() {
    let (v, code) = run(&["sectors", &fixture("cubic.toml"), "--marks", "12", "--cap", "1000"]);
    assert_eq!(code, 4);
    assert_eq!(v["error"]["kind"], "cap");
}

#[test]
fn free_class_examples() {
    let cubic = fixture("cubic.toml");
    let (v, code) = run(&["free-class", &cubic, "--ranks", "0", "--coranks", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["class"]["display"], "c1(G1)");
    let (v, _) = run(&["free-class", &cubic, "--ranks", "1", "--coranks", "1", "--numeric"]);
    assert_eq!(v["results"]["value"], "-2");
    let (v, _) = run(&["free-class", &cubic, "--ranks", "1", "--coranks", "0"]);
    assert_eq!(v["results"]["class"]["display"], "0");
    assert_eq!(v["results"]["class"]["terms"].as_array().unwrap().len(), 0);
    let (_, code) = run(&["free-class", &fixture("loop.toml"), "--ranks", "1", "--coranks", "1"]);
    assert_eq!(code, 3);
}

#[test]
fn free_class_accepts_comma_lists() {
    let (v, code) = run(&[
        "free-class",
        &fixture("loop.toml"),
        "--ranks",
        "0,0",
        "--coranks",
        "1,1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["class"]["display"], "c1(G1)*c1(G2)");
}

#[test]
fn graph_validate() {
    let space = fixture("cubic.toml");
    let (v, code) = run(&[
        "graph",
        "validate",
        &fixture("banana.toml"),
        "--space",
        &space,
        "--genus",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["valid"], true);
    let (v, code) = run(&["graph", "validate", &fixture("bad_banana.toml"), "--space", &space]);
    assert_eq!(code, 3);
    assert!(v["results"]["violations"][0].as_str().unwrap().contains("vertex 0"));
    let (_, code) = run(&[
        "graph",
        "validate",
        &fixture("banana.toml"),
        "--space",
        &space,
        "--genus",
        "2",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn graph_banana_automorphisms() {
    let space = fixture("cubic.toml");
    let banana = fixture("banana.toml");
    let (v, code) = run(&["graph", "aut", &banana, "--space", &space, "--all"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["automorphism_order"], 2);
    let (v, _) = run(&["graph", "aut", &banana, "--space", &space]);
    assert_eq!(v["results"]["automorphism_order"], 1);
    let (_, code) = run(&["graph", "aut", &banana, "--space", &space, "--edge", "7"]);
    assert_eq!(code, 3);
}

#[test]
fn graph_contract_all_keeps_genus() {
    let (v, code) = run(&[
        "graph",
        "contract",
        &fixture("banana.toml"),
        "--space",
        &fixture("cubic.toml"),
        "--all",
    ]);
    assert_eq!(code, 0);
    let g = &v["results"]["graph"];
    assert_eq!(g["vertices"].as_array().unwrap().len(), 1);
    assert_eq!(g["vertices"][0]["genus"], 1);
    assert_eq!(v["results"]["total_genus"], 1);
    assert_eq!(g["tails"].as_array().unwrap().len(), 2);
}

#[test]
fn graph_split_removes_edges() {
    let (v, code) = run(&[
        "graph",
        "split",
        &fixture("banana.toml"),
        "--space",
        &fixture("cubic.toml"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["graph"]["edges"].as_array().unwrap().len(), 0);
    assert_eq!(v["results"]["graph"]["tails"].as_array().unwrap().len(), 6);
}

#[test]
fn graph_forget_grading_tail() {
    let space = fixture("cubic.toml");
    let (v, code) = run(&[
        "graph",
        "forget",
        &fixture("forget.toml"),
        "--space",
        &space,
        "--tail",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["graph"]["tails"].as_array().unwrap().len(), 3);
    let (_, code) = run(&[
        "graph",
        "forget",
        &fixture("forget.toml"),
        "--space",
        &space,
        "--tail",
        "2",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn graph_decorations_outside_the_group() {
    let (v, code) = run(&[
        "graph",
        "split",
        &fixture("banana.toml"),
        "--space",
        &fixture("loop.toml"),
    ]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "semantic");
}

#[test]
fn verify_suites() {
    let (v, code) = run(&["verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["passed"], true);
    assert!(!v["warnings"].as_array().unwrap().is_empty());
    assert!(v["inputs_digest"].is_null());
    let (v, code) = run(&["verify", "--suite", "index-zero"]);
    assert_eq!(code, 0);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 2);
    let (v, code) = run(&["verify", "--suite", "segre"]);
    assert_eq!(code, 0);
    assert!(v["warnings"].as_array().unwrap().is_empty());
    let (_, code) = run_raw(&["verify", "--suite", "bogus"]);
    assert_eq!(code, 2);
}

#[test]
fn reports_are_byte_identical() {
    let cases: Vec<Vec<String>> = vec![
        vec!["analyze".into(), fixture("loop.toml")],
        vec!["sectors".into(), fixture("cubic.toml"), "--marks".into(), "4".into()],
        vec![
            "free-class".into(),
            fixture("loop.toml"),
            "--ranks".into(),
            "1,0".into(),
            "--coranks".into(),
            "1,2".into(),
        ],
        vec![
            "graph".into(),
            "contract".into(),
            fixture("banana.toml"),
            "--space".into(),
            fixture("cubic.toml"),
            "--edge".into(),
            "0".into(),
        ],
        vec!["verify".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = run_raw(&args);
        let b = run_raw(&args);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn digest_depends_on_every_input() {
    let cubic = fixture("cubic.toml");
    let (a, _) = run(&["graph", "split", &fixture("banana.toml"), "--space", &cubic]);
    let (b, _) = run(&["graph", "split", &fixture("bad_banana.toml"), "--space", &cubic]);
    assert_ne!(a["inputs_digest"], b["inputs_digest"]);
}
