use std::path::Path;
use std::process::Command;

use cosegal::chain::{ChainComplex, ChainMap};
use cosegal::commutative::SymLaxFunctor;
use cosegal::fixtures::{cylinder, symmetric_cylinder};
use cosegal::laxdiag::{laxity_pairs, LaxDiagram};
use cosegal::seqcat::ObjectSet;
use cosegal_cli::format::{self, parse_str, serialize_diagram, serialize_symmetric, to_json, Loaded};
use cosegal_cli::CliError;

fn objects() -> ObjectSet {
    ObjectSet::new(["A", "B"]).unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cosegal")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn same_diagram(a: &LaxDiagram, b: &LaxDiagram) -> bool {
    a.shapes().objects().names() == b.shapes().objects().names()
        && a.truncation() == b.truncation()
        && a.bundle().components().iter().zip(b.bundle().components()).all(|(x, y)| {
            x.values() == y.values() && x.maps() == y.maps()
        })
        && a.laxity() == b.laxity()
}

fn same_symmetric(a: &SymLaxFunctor, b: &SymLaxFunctor) -> bool {
    a.values() == b.values() && a.maps() == b.maps() && {
        let n = a.truncation();
        (1..n).all(|l| (1..=n - l).all(|r| a.laxity(l, r).unwrap() == b.laxity(l, r).unwrap()))
    }
}

#[test]
fn cylinder_round_trips() {
    let f = cylinder(&objects(), 3).unwrap();
    let text = to_json(&serialize_diagram(&f, None));
    let Loaded::Diagram { diagram, witness } = parse_str(&text).unwrap() else { panic!("expected a diagram") };
    assert!(witness.is_none());
    assert!(same_diagram(&f, &diagram));
    // serializing the parsed value reproduces the text byte for byte
    assert_eq!(to_json(&serialize_diagram(&diagram, None)), text);
}

#[test]
fn symmetric_cylinder_round_trips() {
    let c = symmetric_cylinder(3).unwrap();
    let text = to_json(&serialize_symmetric(&c));
    let Loaded::Symmetric(back) = parse_str(&text).unwrap() else { panic!("expected a symmetric section") };
    assert!(same_symmetric(&c, &back));
    assert_eq!(to_json(&serialize_symmetric(&back)), text);
}

#[test]
fn witness_round_trips() {
    let f = cylinder(&objects(), 2).unwrap();
    let w = cosegal::laxdiag::LaxMorphism::identity(&f);
    let text = to_json(&serialize_diagram(&f, Some(&w)));
    let Loaded::Diagram { witness: Some(back), .. } = parse_str(&text).unwrap() else { panic!("expected a witness") };
    assert!(back.maps().zip(w.maps()).all(|(a, b)| a == b));
}

const NOT_A_CHAIN_MAP: &str = r#"{
  "format": 1,
  "complexes": { "i": { "dims": [2, 1], "boundaries": [[["-1"], ["1"]]] } },
  "maps": { "f": { "source": "i", "target": "i", "components": [[["1", "0"], ["0", "0"]], [["1"]]] } },
  "diagram": { "objects": ["X"], "truncation": 1, "values": [{ "seq": ["X", "X"], "complex": "i" }] }
}"#;

#[test]
fn non_chain_map_names_the_degree() {
    let err = parse_str(NOT_A_CHAIN_MAP).unwrap_err();
    let CliError::Input(msg) = &err else { panic!("expected an input error, got {err:?}") };
    assert!(msg.contains("map f"), "{msg}");
    assert!(msg.contains("degree 1"), "{msg}");
}

#[test]
fn malformed_inputs_are_rejected() {
    let empty = r#"{ "format": 1, "diagram": { "objects": [], "truncation": 1, "values": [] } }"#;
    assert!(matches!(parse_str(empty), Err(CliError::Input(m)) if m.contains("empty")));
    let unknown = r#"{ "format": 1, "diagram": { "objects": ["X"], "truncation": 1,
        "values": [{ "seq": ["X", "X"], "complex": "nope" }] } }"#;
    assert!(matches!(parse_str(unknown), Err(CliError::Input(m)) if m.contains("nope")));
    let missing = r#"{ "format": 1, "diagram": { "objects": ["X"], "truncation": 1, "values": [] } }"#;
    assert!(matches!(parse_str(missing), Err(CliError::Input(m)) if m.contains("no value")));
    let version = r#"{ "format": 7 }"#;
    assert!(matches!(parse_str(version), Err(CliError::Input(_))));
    let bad_rational = NOT_A_CHAIN_MAP.replace("\"-1\"", "\"1/0\"");
    assert!(matches!(parse_str(&bad_rational), Err(CliError::Input(_))));
    let not_complex = r#"{ "format": 1,
        "complexes": { "c": { "dims": [1, 1, 1], "boundaries": [[["1"]], [["1"]]] } },
        "diagram": { "objects": ["X"], "truncation": 1, "values": [{ "seq": ["X", "X"], "complex": "c" }] } }"#;
    assert!(matches!(parse_str(not_complex), Err(CliError::Input(m)) if m.contains("complex c")));
}

#[test]
fn sparse_and_dense_matrices_agree() {
    let dense = NOT_A_CHAIN_MAP.replace(r#"[[["1", "0"], ["0", "0"]], [["1"]]]"#, r#"[[["1", "0"], ["0", "1"]], [["1"]]]"#);
    let sparse = NOT_A_CHAIN_MAP
        .replace(r#"[[["1", "0"], ["0", "0"]], [["1"]]]"#, r#"[{ "entries": [[0, 0, "1"], [1, 1, "1"]] }, [["1"]]]"#);
    assert!(parse_str(&dense).is_ok());
    assert!(parse_str(&sparse).is_ok());
}

fn broken_cylinder() -> LaxDiagram {
    let mut f = cylinder(&objects(), 3).unwrap();
    let (s, t) = laxity_pairs(f.shapes()).into_iter().next().unwrap();
    let phi = f.phi(&s, &t).unwrap().clone();
    f.replace_laxity(&s, &t, ChainMap::zero(phi.source(), phi.target()));
    f
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cyl = write(dir.path(), "cyl.json", &to_json(&serialize_diagram(&cylinder(&objects(), 3).unwrap(), None)));
    let broken = write(dir.path(), "broken.json", &to_json(&serialize_diagram(&broken_cylinder(), None)));
    let garbage = write(dir.path(), "garbage.json", "{ not json");
    let not_map = write(dir.path(), "not_map.json", NOT_A_CHAIN_MAP);

    let (code, out, _) = run(&["validate", &cyl]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&["validate", &broken]);
    assert_eq!(code, 1);
    assert!(out.contains("violation: "), "{out}");
    let (code, _, err) = run(&["strictify", &broken, "--cut", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("validation failed"), "{err}");
    assert_eq!(run(&["validate", &garbage]).0, 2);
    assert_eq!(run(&["validate", &not_map]).0, 2);
    assert_eq!(run(&["validate", "/nonexistent/file.json"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["strictify", &cyl, "--cut", "5"]).0, 2);
    assert_eq!(run(&["commutative", &cyl]).0, 2);
}

#[test]
fn strictify_cylinder_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cyl = write(dir.path(), "cyl.json", &to_json(&serialize_diagram(&cylinder(&objects(), 3).unwrap(), None)));
    let (code, out, _) = run(&["strictify", &cyl, "--cut", "1", "--mode", "proj"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.matches("σ quasi-iso").count(), 4, "{out}");
    assert!(out.contains("we_proj: yes"));
    let (code, json, _) = run(&["--json", "strictify", &cyl, "--cut", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["data"]["verdict"]["homs"].as_array().unwrap().iter().all(|h| h["sigma_quasi_iso"] == true));
}

#[test]
fn weak_strict_passes_only_in_ex_mode() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ws.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["fixture", "weak-strict", "--truncation", "3", "-o", p]).0, 0);
    assert_eq!(run(&["strictify", p, "--mode", "ex"]).0, 0);
    let (code, _, err) = run(&["strictify", p, "--mode", "proj"]);
    assert_eq!(code, 1);
    assert!(err.contains("precondition"), "{err}");
}

#[test]
fn counterexample_output() {
    let (code, out, _) = run(&["counterexample"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines.contains(&"unit betti [1, 0]"));
    assert!(lines.contains(&"interval betti [1, 0]"));
    assert!(lines.contains(&"colimit betti [1, 1]"));
    assert!(lines.contains(&"colimit NOT weakly equivalent"));
    let (_, json, _) = run(&["--json", "counterexample"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["data"]["colimit_betti"], serde_json::json!([1, 1]));
    assert_eq!(v["data"]["object_betti"], serde_json::json!([[1, 0], [1, 0]]));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cyl = write(dir.path(), "cyl.json", &to_json(&serialize_diagram(&cylinder(&objects(), 2).unwrap(), None)));
    for args in [vec!["report", cyl.as_str()], vec!["--json", "report", cyl.as_str()], vec!["gamma", cyl.as_str()]] {
        assert_eq!(run(&args), run(&args));
    }
    let a = run(&["fixture", "cylinder", "--truncation", "2"]).1;
    assert_eq!(a, run(&["fixture", "cylinder", "--truncation", "2"]).1);
}

#[test]
fn report_lists_betti_numbers_and_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws.json");
    format::write(&serialize_diagram(&cosegal::fixtures::weak_strict(&objects(), 2).unwrap(), None), &ws).unwrap();
    let (code, out, _) = run(&["report", ws.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("(A,B): betti [1]"), "{out}");
    assert!(out.contains("cosegal: no"), "{out}");
    // the failing verdict names the map that witnesses it
    assert!(out.contains("is not a quasi-isomorphism"), "{out}");
    assert!(out.contains("we_ex: yes"), "{out}");
}

#[test]
fn symmetric_commands() {
    let dir = tempfile::tempdir().unwrap();
    let q = ChainComplex::unit();
    let c = cosegal::fixtures::constant_symmetric(3, &q, &ChainMap::identity(&q)).unwrap();
    let p = write(dir.path(), "q.json", &to_json(&serialize_symmetric(&c)));
    assert_eq!(run(&["validate", &p]).0, 0);
    assert_eq!(run(&["check", &p]).0, 0);
    let (code, out, _) = run(&["commutative", &p, "--cut", "1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("commutative: yes"));
    assert_eq!(run(&["check", &p, "--wex"]).0, 2);
    assert_eq!(run(&["strictify", &p]).0, 2);
}
