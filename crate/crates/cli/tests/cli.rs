use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minor-sums")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn eval(op: &str, text: &str) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "in.json", text);
    bin(&["eval", "--op", op, "--file", &file])
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("report is JSON")
}

const Z: &str = r#"{"kind":"int"}"#;

fn matrix(rows: &[&[i64]]) -> String {
    let entries: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
    format!(
        r#"{{"ring":{Z},"rows":{},"cols":{},"entries":{}}}"#,
        rows.len(),
        rows[0].len(),
        serde_json::to_string(&entries).unwrap()
    )
}

#[test]
fn sweep_counts_and_exit_status() {
    let o = bin(&["verify-lemma1", "--n-max", "3", "--ring", "int"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    // sum over n <= 3 and k of C(n, k)^4
    assert_eq!(r["instances"], 2 + 18 + 164);
    assert_eq!(r["failed"], 0);
    let suite = &r["suites"][0];
    assert_eq!(suite["passed"].as_u64().unwrap() + suite["failed"].as_u64().unwrap(), suite["instances"].as_u64().unwrap());

    let o = bin(&["verify-lemma1", "--n-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o)["suites"].as_array().unwrap().len(), 3);
}

#[test]
fn sweep_limit_is_a_usage_error() {
    let o = bin(&["verify-lemma1", "--n-max", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds"));
    let o = bin(&["verify-lemma1", "--n-max", "5", "--cap-perms", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_ring_list_is_a_usage_error() {
    assert_eq!(bin(&["verify-kernels", "--ring", ""]).status.code(), Some(2));
    assert_eq!(bin(&["verify-kernels", "--ring", "int,"]).status.code(), Some(2));
    assert_eq!(bin(&["verify-kernels", "--ring", "mod:0"]).status.code(), Some(2));
    assert_eq!(bin(&["verify-lemma1"]).status.code(), Some(2));
}

#[test]
fn kernels_default_run() {
    let o = bin(&["verify-kernels", "--ring", "int,mod:2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["suites"].as_array().unwrap().len(), 8);
    assert_eq!(r["failed"], 0);
}

#[test]
fn cycle_suites_and_shape_errors() {
    let o = bin(&["verify-lemma3", "--d", "2", "--dims", "2,2", "--trials", "20", "--ring", "int", "--ring", "mod:2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o)["instances"], 40);

    let o = bin(&["verify-lemma3", "--d", "1", "--dims", "1", "--trials", "5"]);
    assert_eq!(o.status.code(), Some(0));

    let o = bin(&["verify-corollary", "--d", "2", "--dims", "2,2", "--ring", "int"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["instances"], 10);
    let detail = &r["suites"][0]["details"][0];
    assert_eq!(detail["matches"], serde_json::json!([true, true, true]));
    // 2^4 (2!)^2 tuples, each with a monic charpoly
    assert_eq!(detail["r_brute"][0], "64");

    assert_eq!(bin(&["verify-lemma3", "--d", "2", "--dims", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["verify-corollary", "--d", "1", "--dims", "3", "--cap-signs", "2"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_and_timings_optional() {
    let args = ["verify-lemma3", "--d", "2", "--dims", "1,3", "--seed", "9"];
    assert_eq!(bin(&args).stdout, bin(&args).stdout);
    assert!(!stdout(&bin(&args)).contains("wall_time_ms"));
    let mut timed = args.to_vec();
    timed.push("--timings");
    assert!(stdout(&bin(&timed)).contains("wall_time_ms"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = bin(&["verify-lemma1", "--n-max", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r["command"], "verify-lemma1");
}

#[test]
fn eval_minor_of_identity() {
    let text = format!(r#"{{"matrix":{},"rows":[1,2],"cols":[1,2]}}"#, matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    let o = eval("minor", &text);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn eval_pair_sums() {
    let text = format!(r#"{{"ring":{Z},"n":3,"S":[1,2],"T":[1,2],"U":[2,3],"V":[1,3]}}"#);
    assert_eq!(stdout(&eval("perm_pair_sum_closed", &text)), "-1\n");
    assert_eq!(stdout(&eval("perm_pair_sum_brute", &text)), "-1\n");
    let text = format!(r#"{{"ring":{Z},"n":2,"S":[1,2],"T":[1,2],"U":[1,2],"V":[1,2]}}"#);
    assert_eq!(stdout(&eval("perm_pair_sum_closed", &text)), "2\n");
}

#[test]
fn eval_matrix_ops() {
    let m = matrix(&[&[2, 1], &[1, 3]]);
    assert_eq!(stdout(&eval("determinant", &format!(r#"{{"matrix":{m}}}"#))), "5\n");
    let charpoly: Value = serde_json::from_str(&stdout(&eval("charpoly", &format!(r#"{{"matrix":{m}}}"#)))).unwrap();
    assert_eq!(charpoly, serde_json::json!(["1", "5", "5"]));
    assert_eq!(stdout(&eval("principal_minor_sum", &format!(r#"{{"matrix":{m},"k":1}}"#))), "5\n");
    let c: Value = serde_json::from_str(&stdout(&eval("compound", &format!(r#"{{"matrix":{m},"k":2}}"#)))).unwrap();
    assert_eq!(c["entries"], serde_json::json!([["5"]]));
    let pair = format!(r#"{{"a":{m},"b":{m},"rows":[1],"cols":[2]}}"#);
    assert_eq!(stdout(&eval("minor_of_product", &pair)), "5\n");
    let pair = format!(r#"{{"a":{m},"d":{m},"rows":[1,2],"cols":[1,2]}}"#);
    assert_eq!(stdout(&eval("minor_of_sum_expansion", &pair)), "20\n");
}

#[test]
fn eval_cycle_ops() {
    let cfg = |a: i64, b: i64| {
        format!(r#"{{"ring":{Z},"d":1,"dims":[1],"matrices":{{"A":[{}],"D":[{}]}}}}"#, matrix(&[&[a]]), matrix(&[&[b]]))
    };
    for op in ["charpoly_sum_closed", "charpoly_sum_brute"] {
        let r: Value = serde_json::from_str(&stdout(&eval(op, &cfg(3, 4)))).unwrap();
        assert_eq!(r, serde_json::json!(["2", "14"]), "{op}");
    }
    let zero = matrix(&[&[0, 0], &[0, 0]]);
    let text = format!(r#"{{"ring":{Z},"d":1,"dims":[2],"matrices":{{"A":[{zero}],"D":[{zero}]}}}}"#);
    let r: Value = serde_json::from_str(&stdout(&eval("charpoly_sum_brute", &text))).unwrap();
    assert_eq!(r, serde_json::json!(["8", "0", "0"]));

    let a = matrix(&[&[5]]);
    let tuple = format!(
        r#"{{"ring":{Z},"d":1,"dims":[1],"matrices":{{"A":[{a}],"B":[{a}],"C":[{a}]}},"index_sets":{{"X":[[]],"Y":[[]]}}}}"#
    );
    assert_eq!(stdout(&eval("tuple_product_sum_brute", &tuple)), "2\n");
    assert_eq!(stdout(&eval("tuple_product_sum_closed", &tuple)), "2\n");

    let m = format!(r#"{{"config":{},"perms":[[1]],"signs":[[-1]]}}"#, cfg(3, 4));
    let r: Value = serde_json::from_str(&stdout(&eval("build_M", &m))).unwrap();
    assert_eq!(r["entries"], serde_json::json!([["7"]]));
}

#[test]
fn eval_stats() {
    assert_eq!(stdout(&eval("r_stat", r#"{"t":3,"n":5,"X":[1,3,5]}"#)), "1\n");
    assert_eq!(stdout(&eval("s_stat", r#"{"n":3,"X":[1,2],"Y":[1,3]}"#)), "0\n");
}

#[test]
fn eval_rejects_malformed_input() {
    let grid = format!(r#"{{"matrix":{{"ring":{Z},"rows":2,"cols":2,"entries":[["1","2"],["3"]]}}}}"#);
    let o = eval("determinant", &grid);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("matrix.entries[1]"));

    let o = eval("determinant", "{\n  \"matrix\": {\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    let bad_entry = format!(r#"{{"matrix":{{"ring":{Z},"rows":1,"cols":1,"entries":[["x"]]}}}}"#);
    assert_eq!(eval("determinant", &bad_entry).status.code(), Some(2));
    assert_eq!(eval("no_such_op", "{}").status.code(), Some(2));
    assert_eq!(bin(&["eval", "--op", "minor", "--file", "/nonexistent/input.json"]).status.code(), Some(2));
}
