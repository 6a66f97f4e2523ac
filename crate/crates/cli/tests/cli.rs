use std::io::Write;
use std::process::{Command, Output};

use ietlab::numfield::Preset;
use ietlab::parse::parse_number;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iet-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(contents.as_bytes()).expect("write");
    f
}

const MIXED: &str = "field sqrt2;
let a = (t - 1)/4;
r = restricted(a, 0, 1/2) * restricted(1/7, 1/2, 3/4);
s = rotation(t - 1);
";

#[test]
fn verify_bs11() {
    let o = run(&["verify", "bs11", "--field", "quartic2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("relator holds; free-up-to-6"));
}

#[test]
fn verify_rejects_rational_parameters() {
    let o = run(&["verify", "bs11", "--field", "rational"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("independence constraint violated"));
}

#[test]
fn verify_reports_failures_with_status_one() {
    let o = run(&["verify", "crystallographic"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("relators hold"));
    assert!(stdout(&o).contains("fixed point"));
}

#[test]
fn verify_takes_parameters() {
    let o = run(&["verify", "metabelian3", "--params", "alpha=(t-1)/5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("alpha = -1/5 + 1/5*t"));
    let o = run(&["verify", "metabelian3", "--params", "alpha=1/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("constraint violated"));
}

#[test]
fn parse_errors_carry_positions() {
    let f = file("field sqrt2;\nr = rotation(1/3 +);\n");
    let o = run(&["growth", "--iet", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column"), "{}", stderr(&o));
}

#[test]
fn decompose_table() {
    let f = file(MIXED);
    let o = run(&[
        "decompose",
        "--iet",
        f.path().to_str().unwrap(),
        "--map",
        "r",
        "--depth",
        "40",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("periodic  period 7    [1/2, 3/4)"));
    assert!(out.contains("periodic  period 1    [3/4, 1)"));
    assert!(out.contains("minimal   certified   [0, 1/2)"));
}

#[test]
fn json_is_exact_and_deterministic() {
    let f = file(MIXED);
    let p = f.path().to_str().unwrap();
    let args = [
        "--json", "orbit", "--iet", p, "--x", "1/3", "--length", "6", "--depth", "30",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let field = Preset::Sqrt2.field();
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 7);
    let x1 = parse_number(&field, pts[1].as_str().unwrap()).unwrap();
    assert_eq!(x1, parse_number(&field, "t - 2/3").unwrap());
    for p in pts {
        let x = parse_number(&field, p.as_str().unwrap()).unwrap();
        assert_eq!(x.to_coeff_string(), p.as_str().unwrap());
    }
}

#[test]
fn free_and_ball() {
    let f = file(MIXED);
    let p = f.path().to_str().unwrap();
    let o = run(&["--json", "ball", "--gens", p, "--depth", "2"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sizes"], serde_json::json!([5, 17]));
    let o = run(&["free", "--gens", p, "--depth", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fixed point: r fixes [3/4, 1)"));
}

#[test]
fn saf_normalize_compose() {
    let f = file(MIXED);
    let p = f.path().to_str().unwrap();
    let o = run(&["saf", "--iet", p, "--map", "r", "--against", "s"]);
    assert!(stdout(&o).contains("r and s: not conjugate"));
    let o = run(&["normalize", "--iet", p, "--map", "r"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sigma: [1, 2, 3]"));
    let swap =
        file("field sqrt2;\nw = iet { cuts: [0, 1/3, 2/3]; translations: [2/3, 0, -2/3] };\n");
    let o = run(&["normalize", "--iet", swap.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["--json", "compose", "--iet", p, "--word", "s s^-1"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["iet"]["cuts"], serde_json::json!(["[0, 0]"]));
    let o = run(&["eval", "--iet", p, "--x", "3/2"]);
    assert_eq!(o.status.code(), Some(2));
}
