use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};
use tempfile::TempDir;

fn quadpoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadpoint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_quadpoint"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn reason(o: &Output) -> String {
    let line = String::from_utf8(o.stderr.clone()).unwrap();
    let v: Value = serde_json::from_str(line.trim()).expect("stderr is one JSON line");
    v["reason"].as_str().unwrap().to_string()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(TempDir::new().unwrap())
    }

    fn put(&self, name: &str, value: &Value) -> String {
        self.raw(name, &value.to_string())
    }

    fn raw(&self, name: &str, text: &str) -> String {
        let path: PathBuf = self.0.path().join(name);
        fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }
}

fn embedding(genus: usize, a0: &[&str], a1: &[&str], orientation: &str) -> Value {
    json!({ "genus": genus, "A0": a0, "A1": a1, "orientation": orientation })
}

fn standard_form_1() -> Value {
    json!({ "dim": 2, "gram": ["01", "10"], "diag": "00" })
}

#[test]
fn identical_files_give_zero() {
    let f = Files::new();
    let e = f.put("e.json", &embedding(1, &["10"], &["01"], "+"));
    let o = quadpoint(&["q", "--left", &e, "--right", &e]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn sphere_with_flipped_orientation_gives_one() {
    let f = Files::new();
    let plus = f.put("p.json", &embedding(0, &[], &[], "+"));
    let minus = f.raw("m.json", r#"{"genus":0,"A0":[],"A1":[],"orientation":"−"}"#);
    let o = quadpoint(&["q", "--left", &plus, "--right", &minus]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
    let o = quadpoint(&["--output", "json", "q", "--left", &plus, "--right", &minus]);
    assert_eq!(serde_json::from_str::<Value>(&stdout(&o)).unwrap(), json!({ "value": 1 }));
}

#[test]
fn torus_kernel_swap_gives_one() {
    let f = Files::new();
    let e = f.put("e.json", &embedding(1, &["10"], &["01"], "+"));
    for o in ["+", "-"] {
        let s = f.put("s.json", &embedding(1, &["01"], &["10"], o));
        assert_eq!(stdout(&quadpoint(&["q", "--left", &e, "--right", &s])), "1\n");
    }
}

#[test]
fn mismatched_forms_are_a_domain_error() {
    let f = Files::new();
    let e = f.put("e.json", &embedding(1, &["10"], &["01"], "+"));
    let g = f.put("g.json", &embedding(1, &["10"], &["11"], "+"));
    let o = quadpoint(&["q", "--left", &e, "--right", &g]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(reason(&o), "not-regularly-homotopic");
    assert!(o.stdout.is_empty());
    let h = f.put("h.json", &embedding(2, &["1000", "0100"], &["0010", "0001"], "+"));
    let o = quadpoint(&["q", "--left", &e, "--right", &h]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn malformed_input_exits_two() {
    let f = Files::new();
    let e = f.put("e.json", &embedding(1, &["10"], &["01"], "+"));
    let cases = [
        f.raw("a.json", "not json"),
        f.put("b.json", &embedding(1, &["1x"], &["01"], "+")),
        f.put("c.json", &embedding(1, &["10"], &["10"], "+")),
        f.put("d.json", &embedding(1, &["10"], &["01"], "?")),
        f.put("e2.json", &embedding(1, &["100"], &["01"], "+")),
        f.put("f.json", &embedding(2, &["1000"], &["0010", "0001"], "+")),
    ];
    for bad in &cases {
        let o = quadpoint(&["q", "--left", &e, "--right", bad]);
        assert_eq!(o.status.code(), Some(2), "{bad}");
        reason(&o);
    }
    let missing = quadpoint(&["q", "--left", &e, "--right", "/nonexistent/x.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(reason(&missing), "io-error");
}

#[test]
fn psi_and_psi_hat() {
    let f = Files::new();
    let form = f.put("f.json", &standard_form_1());
    let swap = f.put("t.json", &json!(["01", "10"]));
    let id = f.put("i.json", &json!(["10", "01"]));
    assert_eq!(stdout(&quadpoint(&["psi", "--form", &form, "--map", &swap])), "1\n");
    assert_eq!(stdout(&quadpoint(&["psi", "--form", &form, "--map", &id])), "0\n");

    let bad = f.put("n.json", &json!(["11", "01"]));
    let o = quadpoint(&["psi", "--form", &form, "--map", &bad]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(reason(&o), "not-orthogonal");

    let t = f.put("t1.json", &json!({ "form": standard_form_1(), "A": ["10"], "B": ["01"] }));
    let s = f.put("t2.json", &json!({ "form": standard_form_1(), "A": ["01"], "B": ["10"] }));
    assert_eq!(stdout(&quadpoint(&["psi-hat", "--left", &t, "--right", &s])), "1\n");
    assert_eq!(
        stdout(&quadpoint(&["psi-hat", "--left", &t, "--right", &s, "--recipe"])),
        "1\nrecipe 1\n"
    );
    let o = quadpoint(&["--output", "json", "psi-hat", "--left", &t, "--right", &t, "--recipe"]);
    assert_eq!(
        serde_json::from_str::<Value>(&stdout(&o)).unwrap(),
        json!({ "value": 0, "recipe": 0 })
    );
}

#[test]
fn diffeo_value_matches_pullback() {
    let f = Files::new();
    let e = f.put("e.json", &embedding(1, &["10"], &["01"], "+"));
    for (rows, eps) in [(["01", "10"], 0), (["01", "10"], 1), (["10", "01"], 1), (["10", "01"], 0)] {
        let h = f.put("h.json", &json!({ "genus": 1, "h_star": rows, "eps_h": eps }));
        let direct = quadpoint(&["q-diffeo", "--embedding", &e, "--map", &h]);
        assert_eq!(direct.status.code(), Some(0));
        let pulled = quadpoint(&["pullback", "--embedding", &e, "--map", &h]);
        assert_eq!(pulled.status.code(), Some(0));
        let p = f.raw("p.json", &stdout(&pulled));
        let via_q = quadpoint(&["q", "--left", &e, "--right", &p]);
        assert_eq!(stdout(&direct), stdout(&via_q));
    }
    let shear = f.put("s.json", &json!({ "genus": 1, "h_star": ["11", "01"], "eps_h": 0 }));
    let o = quadpoint(&["q-diffeo", "--embedding", &e, "--map", &shear]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(reason(&o), "not-orthogonal");
}

#[test]
fn systems_sum_componentwise() {
    let f = Files::new();
    let s = f.put(
        "s.json",
        &json!({ "components": [embedding(0, &[], &[], "+"), embedding(0, &[], &[], "+")] }),
    );
    let t = f.put(
        "t.json",
        &json!({ "components": [embedding(0, &[], &[], "-"), embedding(0, &[], &[], "-")] }),
    );
    let u = f.put(
        "u.json",
        &json!({ "components": [embedding(0, &[], &[], "-"), embedding(0, &[], &[], "+")] }),
    );
    assert_eq!(stdout(&quadpoint(&["q-system", "--left", &s, "--right", &t])), "0\n");
    assert_eq!(stdout(&quadpoint(&["q-system", "--left", &s, "--right", &u])), "1\n");
    let one = f.put("o.json", &json!({ "components": [embedding(0, &[], &[], "+")] }));
    let o = quadpoint(&["q-system", "--left", &s, "--right", &one]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn complete_emits_a_tsd_that_round_trips() {
    let f = Files::new();
    let form = f.put(
        "f.json",
        &json!({ "dim": 4, "gram": ["0100", "1000", "0001", "0010"], "diag": "0000" }),
    );
    let a = f.put("a.json", &json!(["1001", "0110"]));
    let o = quadpoint(&["complete", "--form", &form, "--subspace", &a]);
    assert_eq!(o.status.code(), Some(0));
    let tsd: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let t = f.raw("t.json", &stdout(&o));
    let again = quadpoint(&["psi-hat", "--left", &t, "--right", &t, "--recipe"]);
    assert_eq!(stdout(&again), "0\nrecipe 0\n");
    assert_eq!(tsd["A"], json!(["1001", "0110"]));

    let singular = f.put("s.json", &json!(["1100", "0110"]));
    let o = quadpoint(&["complete", "--form", &form, "--subspace", &singular]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(reason(&o), "not-totally-singular");
}

#[test]
fn standard_and_check_round_trip() {
    let o = quadpoint(&["standard", "--genus", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let checked = with_stdin(&["check", "--embedding", "-"], &text);
    assert_eq!(stdout(&checked), "ok\n");
    let checked = with_stdin(&["--output", "json", "check", "--embedding", "-"], &text);
    assert_eq!(
        serde_json::from_str::<Value>(&stdout(&checked)).unwrap(),
        json!({ "valid": true, "genus": 3 })
    );
    let f = Files::new();
    let e = f.raw("e.json", &text);
    let pulled = quadpoint(&[
        "pullback",
        "--embedding",
        &e,
        "--map",
        &f.put(
            "h.json",
            &json!({ "genus": 3, "h_star": ["100000", "010000", "001000", "000100", "000010", "000001"], "eps_h": 0 }),
        ),
    ]);
    assert_eq!(stdout(&pulled), text);
    assert_eq!(quadpoint(&["standard", "--genus", "100000"]).status.code(), Some(2));
}

#[test]
fn oracle_reports() {
    let o = quadpoint(&["oracle", "--dim", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["gl_order"], 20160);
    assert_eq!(report["group_order"], 72);
    assert_eq!(report["class_count"], 2);
    assert_eq!(report["violations"], json!([]));
    assert_eq!(quadpoint(&["oracle", "--dim", "6"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| quadpoint(&["oracle", "--dim", "2"]).stdout)
        .collect();
    assert_eq!(runs[0], runs[1]);
    let f = Files::new();
    let form = f.put("f.json", &standard_form_1());
    let a = f.put("a.json", &json!(["10"]));
    let first = quadpoint(&["complete", "--form", &form, "--subspace", &a]).stdout;
    let second = quadpoint(&["complete", "--form", &form, "--subspace", &a]).stdout;
    assert_eq!(first, second);
}
