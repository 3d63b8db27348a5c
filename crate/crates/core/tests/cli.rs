use std::process::Command;

use serde_json::Value;
use virtlink::cli;

fn run(args: &[&str], input: &str) -> (i32, String, String) {
    let mut argv = vec!["virtlink"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(argv, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let (_, out, _) = run(&a, "");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn genus_text_and_json() {
    assert_eq!(run(&["genus", "O1-O2-U1-U2-"], ""), (0, "1\n".into(), String::new()));
    let v = json(&["genus", "O1+U2+O3+U1+O2+U3+"]);
    assert_eq!(v["command"], "genus");
    assert_eq!(v["ok"], true);
    assert_eq!(v["result"]["genus"], 0);
}

#[test]
fn stdin_dash() {
    let (code, out, _) = run(&["classical", "-"], "O1-O2-U1-U2-\n");
    assert_eq!((code, out.as_str()), (0, "false\n"));
}

#[test]
fn syntax_error_has_caret() {
    let (code, out, err) = run(&["genus", "O1+U2x"], "");
    assert_eq!(code, 1);
    assert!(out.is_empty());
    let lines: Vec<&str> = err.lines().collect();
    assert!(lines[0].starts_with("error: syntax error at column 6"));
    assert_eq!(lines[1], "  O1+U2x");
    assert_eq!(lines[2], "       ^");
}

#[test]
fn domain_error_json() {
    let v = json(&["export-dt", "O1-O2-U1-U2-"]);
    assert_eq!(v["ok"], false);
    assert_eq!(v["error"]["kind"], "dt");
    let (code, _, _) = run(&["--json", "export-dt", "O1-O2-U1-U2-"], "");
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["nonsense"], "").0, 2);
    assert_eq!(run(&["genus"], "").0, 2);
    assert_eq!(run(&["one-virtual", "O1+U2+O3+U1+O2+U3+"], "").0, 2);
}

#[test]
fn generators() {
    let (c, out, _) = run(&["gen", "polygonal", "4"], "");
    assert_eq!(c, 0);
    let code: virtlink::GaussCode = out.trim().parse().unwrap();
    assert_eq!(virtlink::surface::ribbon_genus(&code), Ok(1));

    let (c, out, _) = run(&["gen", "kishino", "3"], "");
    assert_eq!(c, 0);
    let code: virtlink::GaussCode = out.trim().parse().unwrap();
    assert_eq!(code.crossing_count(), 6);

    let (c, out, _) = run(&["gen", "kishino", "2", "--choices", "a,0"], "");
    assert_eq!(c, 0, "{out}");
    assert_eq!(run(&["gen", "kishino", "2", "--choices", "x,0"], "").0, 1);
}

#[test]
fn append_and_one_virtual() {
    let (c, out, err) = run(&["append", "O1-O2-U1-U2-", "--gap", "0:2", "--reflect"], "");
    assert_eq!(c, 0, "{err}");
    let code: virtlink::GaussCode = out.trim().parse().unwrap();
    assert_eq!(virtlink::surface::ribbon_genus(&code), Ok(2));
    let (c, out, _) = run(&["one-virtual", "O1+U2+O3+U1+O2+U3+", "--id", "2"], "");
    assert_eq!((c, out.as_str()), (0, "O1+O3+U1+U3+\n"));
    assert_eq!(run(&["append", "O1-O2-U1-U2-", "--gap", "9"], "").0, 1);
}

#[test]
fn faces_and_bounds() {
    let v = json(&["faces", "O1-O2-U1-U2-"]);
    assert_eq!(v["result"]["faces"], 2);
    let v = json(&["bounds", "O1-O2-U1-U2-"]);
    assert_eq!(v["result"]["euler"]["holds"], true);
    assert_eq!(v["result"]["window"]["genus"], 1);
}

#[test]
fn export_tri_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.tri");
    let p = path.to_str().unwrap();
    let (c, out, _) = run(&["export-tri", "O1-O2-U1-U2-", "-o", p, "--name", "2.1"], "");
    assert_eq!(c, 0);
    assert!(out.contains("8 tetrahedra, 3 cusps"));
    let t = virtlink::complement::Triangulation::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(t.name, "2.1");
}

#[test]
fn export_dt() {
    assert_eq!(run(&["export-dt", "O1+U2+O3+U1+O2+U3+"], "").1, "4 6 2\n");
}

#[test]
fn deterministic_output() {
    let a = run(&["--json", "gen", "kishino", "4"], "");
    let b = run(&["--json", "gen", "kishino", "4"], "");
    assert_eq!(a, b);
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_virtlink");
    let ok = Command::new(exe).args(["genus", "O1-O2-U1-U2-"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "1\n");
    let bad = Command::new(exe).args(["genus", "O1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = Command::new(exe).arg("--nope").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
