use std::io::Write;
use std::process::{Command, Output};

fn tubelat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tubelat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn graph_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn path3_has_five_tubings() {
    let o = tubelat(&["tubings", "--graph", "path:3", "--count"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "5");
    let o = tubelat(&["--json", "tubings", "--graph", "path:3", "--count"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 5);
}

#[test]
fn cycle4_not_filled() {
    let o = tubelat(&["check", "filled", "--graph", "cycle:4"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("filled: false"), "{out}");
    assert!(out.contains("edge (1, 4) missing (2, 4)"), "{out}");
    let o = tubelat(&["--json", "check", "filled", "--graph", "cycle:4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["witness"]["edge"], serde_json::json!([1, 4]));
    assert_eq!(v["witness"]["missing"], serde_json::json!([2, 4]));
}

#[test]
fn verify_small_suite() {
    let o = tubelat(&["verify", "--suite", "all", "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn bad_inputs_exit_2() {
    for args in [
        &["tubings", "--graph", "nope:3"][..],
        &["tubings"],
        &["psi", "--graph", "path:3", "--perm", "112"],
        &["arc", "delete", "--arc", "1-2:", "--n", "3", "--vertex", "1"],
    ] {
        let o = tubelat(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    }
}

#[test]
fn dot_for_non_lattice_graph() {
    let f = graph_file("4\n1 3\n2 4\n3 4\n");
    let path = f.path().to_str().unwrap();
    let o = tubelat(&["export-dot", "--graph-file", path]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    let note = dot.lines().find(|l| l.contains("not a lattice")).expect("annotated witness");
    assert!(note.contains("have no join"));
    let bounds = note.split("minimal upper bounds: ").nth(1).unwrap();
    assert_eq!(bounds.split(", ").count(), 2);

    let o = tubelat(&["check", "lattice", "--graph-file", path]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn algebra_commands() {
    let o = tubelat(&["product", "--left", "1", "--right", "1"]);
    assert_eq!(stdout(&o).trim(), "F_12 + F_21");
    let o = tubelat(&["product", "--family", "path", "--left", "{1}", "--right", "{1}"]);
    assert_eq!(stdout(&o).trim(), "P_{1}{1,2} + P_{2}{1,2}");
    let o = tubelat(&["coproduct", "--element", "3241"]);
    assert_eq!(stdout(&o).matches('⊗').count(), 5);
    let o = tubelat(&["family", "admissible", "--family", "oddbip", "--max-n", "5"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = tubelat(&["family", "restriction-compatible", "--family", "oddbip", "--max-n", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("false"));
}

#[test]
fn arcs_and_congruences() {
    let o = tubelat(&["arc", "delete", "--arc", "2-5:-+", "--n", "5", "--vertex", "3"]);
    assert_eq!(stdout(&o).trim(), "2-4:+");
    let o = tubelat(&["arc", "subarc", "--arc", "2-3:", "--n", "4", "--of", "1-4:++"]);
    assert!(o.status.success());
    let o = tubelat(&["congruence", "generators", "--graph", "path:4"]);
    assert!(stdout(&o).contains("1-3:+ 2-4:+"));
    let o = tubelat(&["--json", "congruence", "classes", "--graph", "path:4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 14);
}
