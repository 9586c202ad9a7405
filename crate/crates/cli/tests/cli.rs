use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn nilmult(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilmult"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn make(dir: &TempDir, file: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(file);
    let mut full = vec!["make"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = nilmult(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn multiplier_of_h1_lists_five_hall_words() {
    let dir = TempDir::new().unwrap();
    let h1 = make(&dir, "h1.json", &["heisenberg", "1"]);
    let o = nilmult(&["multiplier", p(&h1), "--c", "2", "--basis"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("dim M^(2)(H(1)) = 5\n"), "{out}");
    let words: Vec<&str> = out.lines().skip(1).map(str::trim).collect();
    assert_eq!(
        words,
        ["[y,x,x]", "[y,x,y]", "[y,x,x,x]", "[y,x,x,y]", "[y,x,y,y]"]
    );
}

#[test]
fn witt_count() {
    let o = nilmult(&["witt", "--generators", "2", "--length", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");
    let o = nilmult(&["witt", "--generators", "3", "--length", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], "18");
}

#[test]
fn h2_is_not_two_capable() {
    let dir = TempDir::new().unwrap();
    let h2 = make(&dir, "h2.json", &["heisenberg", "2"]);
    let o = nilmult(&["capable", p(&h2), "--c", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("not 2-capable; Z*_2 has dimension 1"), "{out}");
    let o = nilmult(&["capable", p(&h2), "--c", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["capable"], false);
    assert_eq!(v["z_star_dim"], 1);
}

#[test]
fn h1_is_capable() {
    let dir = TempDir::new().unwrap();
    let h1 = make(&dir, "h1.json", &["heisenberg", "1"]);
    for c in ["1", "2"] {
        let o = nilmult(&["capable", p(&h1), "--c", c, "--json"]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["capable"], true);
    }
}

#[test]
fn malformed_input_exits_2_and_names_the_field() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"name":"x","dim":2,"basis":["a","b"],"brackets":[{"i":0,"j":1,"value":[[1,"one"]]}]}"#,
    )
    .unwrap();
    let o = nilmult(&["multiplier", p(&bad), "--c", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("brackets[0].value[0]"),
        "{}",
        stderr(&o)
    );

    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(nilmult(&["info", p(&bad)]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(nilmult(&["info", p(&missing)]).status.code(), Some(2));
}

#[test]
fn jacobi_failure_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"name":"x","dim":3,"basis":["a","b","c"],"brackets":[
            {"i":0,"j":1,"value":[[1,"1"]]},
            {"i":1,"j":2,"value":[[0,"1"]]}]}"#,
    )
    .unwrap();
    let o = nilmult(&["info", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Jacobi"), "{}", stderr(&o));
}

#[test]
fn higher_weight_needs_opt_in() {
    let dir = TempDir::new().unwrap();
    let a2 = make(&dir, "a2.json", &["abelian", "2"]);
    let o = nilmult(&["multiplier", p(&a2), "--c", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = nilmult(&["multiplier", p(&a2), "--c", "3", "--opt-in-c3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "dim M^(3)(A(2)) = 3");
}

#[test]
fn report_json_has_the_documented_fields() {
    let dir = TempDir::new().unwrap();
    let s = make(&dir, "s.json", &["expr", "H(1)+A(1)"]);
    let o = nilmult(&["multiplier", p(&s), "--c", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["algebra"], "H(1)+A(1)");
    assert_eq!(v["c"], 2);
    assert_eq!(v["dim_multiplier"], 11);
    assert_eq!(v["basis_words"].as_array().unwrap().len(), 11);
    assert_eq!(v["bounds"]["eq1"], 20);
    assert_eq!(v["bounds"]["value"], 11);
    assert!(v["capable"].is_boolean());
    assert!(v["two_capable"].is_boolean());
}

#[test]
fn info_and_make_round_trip() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "f.json", &["free", "2", "3"]);
    let o = nilmult(&["info", p(&f), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 5);
    assert_eq!(v["nilpotency_class"], 3);
    assert_eq!(v["lower_central_dims"], serde_json::json!([5, 3, 2]));

    let o = nilmult(&["make", "expr", "H(2)+A(1)"]);
    let text = stdout(&o);
    let back = nilmult::LieAlgebra::from_json(&text).unwrap();
    assert_eq!(back, nilmult::named("H(2)+A(1)").unwrap());

    assert_eq!(nilmult(&["make", "cube", "3"]).status.code(), Some(2));
    assert_eq!(nilmult(&["make", "free", "2"]).status.code(), Some(2));
}

#[test]
fn hall_listing() {
    let o = nilmult(&["hall", "--generators", "2", "--class", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let words: Vec<&str> = v["words"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["word"].as_str().unwrap())
        .collect();
    assert_eq!(
        words,
        [
            "x",
            "y",
            "[y,x]",
            "[y,x,x]",
            "[y,x,y]",
            "[y,x,x,x]",
            "[y,x,x,y]",
            "[y,x,y,y]"
        ]
    );
}

#[test]
fn verify_paper_is_deterministic() {
    let args = [
        "verify-paper",
        "--max-heisenberg",
        "2",
        "--max-abelian",
        "3",
        "--random-lifts",
        "2",
        "--json",
    ];
    let a = nilmult(&args);
    let b = nilmult(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    for case in v["cases"].as_array().unwrap() {
        assert!(case["provenance"].is_string());
    }
}

#[test]
fn output_flag_writes_a_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("w.txt");
    let o = nilmult(&["witt", "--generators", "2", "--length", "4", "-o", p(&out)]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap().trim(), "3");
}
