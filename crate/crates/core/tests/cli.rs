use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distinguished")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(p).unwrap()).unwrap()
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--type", "F", "--rank", "4", "--summary"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("verdict: distinguished"));

    let fail = run(&["verify", "--type", "B", "--rank", "3", "--stage", "S0"]);
    assert_eq!(fail.status.code(), Some(1));

    assert_eq!(run(&["verify", "--type", "Q", "--rank", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--type", "A", "--rank", "3", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    // Sstar exists only for G2.
    assert_eq!(run(&["verify", "--type", "B", "--rank", "3", "--stage", "Sstar"]).status.code(), Some(2));
}

#[test]
fn json_reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let base = ["verify", "--type", "D", "--rank", "5", "--preset", "quasi-split", "--json"];
    let mut args: Vec<&str> = base.to_vec();
    args.push(a.to_str().unwrap());
    assert_eq!(run(&args).status.code(), Some(0));
    let mut args: Vec<&str> = vec!["--jobs", "1"];
    args.extend(base);
    args.push(b.to_str().unwrap());
    assert_eq!(run(&args).status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let v = read_json(&a);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["spanning_rank"], 45);
}

#[test]
fn spec_file_form() {
    let spec = fixture("a3_flip.json");
    let o = run(&["verify", "--type", "A", "--rank", "3", "--spec", &spec, "--summary"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // The spec flag and a preset cannot be combined.
    let o = run(&["verify", "--type", "A", "--rank", "3", "--spec", &spec, "--preset", "compact"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_counts_root_classes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.json");
    let o = run(&["classify", "--type", "B", "--rank", "3", "--preset", "painted", "--json", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("18 imaginary"), "{text}");
    assert!(text.contains("0 complex"), "{text}");
    assert!(read_json(&p).is_object());
}

#[test]
fn export_round_trips_through_json() {
    let o = run(&["export", "--type", "A", "--rank", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in ["root_system", "involution", "structure_constants", "set"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn props_runs_selected_suites() {
    let o = run(&["props", "--type", "G", "--rank", "2", "--suite", "g2-structure-constant-relation"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS g2-structure-constant-relation"));
    assert_eq!(run(&["props", "--type", "G", "--rank", "2", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn table1_without_the_largest_algebras() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.json");
    let o = run(&["table1", "--skip", "E7,E8", "--json", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let rows = read_json(&p);
    let rows = rows.as_array().expect("array of rows");
    assert_eq!(rows.len(), 15);
}
