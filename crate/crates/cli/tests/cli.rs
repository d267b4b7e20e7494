use std::path::Path;
use std::process::{Command, Output};

fn bpt(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bpt")).args(args).current_dir(dir).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn domino_exit_codes_follow_the_verdict() {
    let d = tempfile::tempdir().unwrap();
    let hs = bpt(d.path(), &["domino", "--blueprint", "z2.bp", "--patterns", "hardsquare.pat", "--schedule", "default", "--out", "q.cert"]);
    assert_eq!(code(&hs), 0);
    assert!(stdout(&hs).contains("verdict=nonempty"));
    assert!(std::fs::read_to_string(d.path().join("q.cert")).unwrap().contains("blueprint_digest"));
    let wang = bpt(d.path(), &["domino", "--blueprint", "z2", "--patterns", "wang_mismatch"]);
    assert_eq!(code(&wang), 1);
    assert!(stdout(&wang).contains("verdict=empty radius=1 verified=true"));
    // (x + y) mod 3, with 1 on one class, is a 3-vertex quotient
    let three = bpt(d.path(), &["domino", "--blueprint", "z2", "--patterns", "hardsquare", "--vertices", "3"]);
    assert_eq!(code(&three), 0);
    let none = bpt(d.path(), &["domino", "--blueprint", "z2", "--patterns", "wang_mismatch", "--vertices", "2"]);
    assert_eq!(code(&none), 2);
}

#[test]
fn errors_have_distinct_codes() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&bpt(d.path(), &["models"])), 64);
    assert_eq!(code(&bpt(d.path(), &["models", "--blueprint", "nowhere", "--radius", "1"])), 66);
    std::fs::write(d.path().join("bad.bp"), "states = [").unwrap();
    assert_eq!(code(&bpt(d.path(), &["models", "--blueprint", "bad.bp", "--radius", "1"])), 65);
    let cap = bpt(d.path(), &["qi-compile", "--from", "z", "--to", "z", "--patterns", "empty", "--n", "1", "--max-letters", "10"]);
    assert_eq!(code(&cap), 70);
    let out = bpt(d.path(), &["graph", "--blueprint", "z", "--radius", "1", "--out", "missing/dir/g.dot"]);
    assert_eq!(code(&out), 73);
    assert_eq!(code(&bpt(d.path(), &["graph", "--blueprint", "z", "--radius", "1", "--format", "svg"])), 64);
}

#[test]
fn graph_and_manifest() {
    let d = tempfile::tempdir().unwrap();
    let o = bpt(d.path(), &["graph", "--blueprint", "tree12.bp", "--radius", "3", "--out", "g.dot", "--manifest", "m.toml"]);
    assert_eq!(code(&o), 0);
    assert!(std::fs::read_to_string(d.path().join("g.dot")).unwrap().starts_with("digraph"));
    let m: toml::Value = toml::from_str(&std::fs::read_to_string(d.path().join("m.toml")).unwrap()).unwrap();
    assert_eq!(m["command"].as_str(), Some("graph"));
    assert_eq!(m["inputs"][0]["name"].as_str(), Some("builtin:tree12"));
    assert_eq!(m["outputs"][0]["name"].as_str(), Some("g.dot"));
}

#[test]
fn qi_compile_empty_patterns() {
    let d = tempfile::tempdir().unwrap();
    let o = bpt(d.path(), &["qi-compile", "--from", "z.bp", "--to", "z.bp", "--patterns", "empty.pat", "--n", "1", "--out", "c.pat"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("letters=50"));
    let text = std::fs::read_to_string(d.path().join("c.pat")).unwrap();
    assert!(text.contains("# C1") && text.contains("# C3") && text.contains("[[patterns]]"));
}

#[test]
fn roundtrip_and_render() {
    let d = tempfile::tempdir().unwrap();
    let rt = bpt(d.path(), &["qi-roundtrip", "--blueprint", "z", "--samples", "10"]);
    assert_eq!(code(&rt), 0);
    assert!(stdout(&rt).contains("passed=10"));
    let svg = bpt(d.path(), &["render", "--tiles", "keyed_square", "--format", "svg"]);
    assert_eq!(code(&svg), 0);
    assert!(stdout(&svg).contains("<svg"));
    let v = bpt(d.path(), &["validate", "--tiles", "ab"]);
    assert!(stdout(&v).contains("tiles=2"));
}
