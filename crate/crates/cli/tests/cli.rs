use std::process::{Command, Output};

use serde_json::Value;

fn tqo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tqo"))
        .args(args)
        .env_remove("TQO_BUDGET_MS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = tqo(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}) from {args:?}: {}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (out.status.code().unwrap(), v)
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn gen_edge_lists() {
    let out = tqo(&["gen", "complete", "6"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "6 15");
    assert_eq!(lines.len(), 16);
    let toric = String::from_utf8(tqo(&["gen", "toric", "5"]).stdout).unwrap();
    assert!(toric.starts_with("50 "));
    let t3 = String::from_utf8(tqo(&["gen", "toric3d", "3"]).stdout).unwrap();
    assert!(t3.starts_with("27 "));
}

#[test]
fn gen_to_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let p = path.to_str().unwrap();
    let (code, v) = json(&["gen", "mstar", "3", "3", "--out", p]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["n"], 9);
    let (code, v) = json(&["cset", p, "-d", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["c_set"]["members"], serde_json::json!(["100100100"]));
}

#[test]
fn cset_examples() {
    let (code, v) = json(&["cset", "star", "6", "-d", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["empty"], true);
    assert_eq!(v["schema_version"], 1);
    let (_, v) = json(&["cset", "mstar", "3", "3", "-d", "3"]);
    assert_eq!(v["result"]["n_members"], 1);
    let (_, v) = json(&["cset", "toric", "5", "-d", "5"]);
    assert_eq!(v["result"]["n_members"], 3);
    assert_eq!(v["result"]["c_set"]["exhaustive"], true);
}

#[test]
fn dmax_examples() {
    let (code, v) = json(&["dmax", "complete", "8", "--strategy", "bisection"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["value"], 2);
    let (_, v) = json(&["dmax", "mstar", "4", "4"]);
    assert_eq!(v["result"]["value"], 4);
    let (_, v) = json(&["dmax", "lattice", "2", "3"]);
    assert!(v["result"]["upper"].as_u64().unwrap() <= 5);
}

#[test]
fn budget_exit_code() {
    let (code, v) = json(&["dmax", "lattice", "2", "4", "--max-candidates", "100"]);
    assert_eq!(code, 3);
    assert_eq!(v["budget_exhausted"], true);
    assert!(v["result"]["value"].is_null());
    let (code, _) = json(&["cset", "toric", "5", "-d", "5", "--max-weight", "2"]);
    assert_eq!(code, 3);
}

#[test]
fn verify_rook_and_ldpc() {
    let (code, _) = json(&["verify", "rook", "4", "-d", "4", "--svec", "0"]);
    assert_eq!(code, 0);
    let (code, v) = json(&["verify", "rook", "4", "-d", "4", "--svec", "0,4"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["verdict"]["failure"]["reason"], "in_w");

    let dir = tempfile::tempdir().unwrap();
    let gen = dir.path().join("code.txt");
    std::fs::write(&gen, "1100\n0011\n").unwrap();
    let (code, v) = json(&["verify", "--ldpc", gen.to_str().unwrap(), "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"]["n_codewords"], 4);

    let words = dir.path().join("words.txt");
    std::fs::write(&words, "# one hub\n100000000\n").unwrap();
    let (code, _) = json(&["verify", "mstar", "3", "3", "-d", "3", "--codewords", words.to_str().unwrap()]);
    assert_eq!(code, 1);
}

#[test]
fn oracle_modes() {
    let (code, v) = json(&["oracle", "mstar", "2", "2", "--h", "1010", "-d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["agrees_with_c_set"], true);
    let (code, v) = json(&["oracle", "star", "4", "--h", "1000", "-d", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["in_c"], false);
    let (code, v) = json(&["oracle", "complete", "5", "--matrix-elements", "--samples", "50", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["agreements"], 50);
}

#[test]
fn code3d_reports_structure() {
    let (code, v) = json(&["code3d", "-L", "2", "--distance-scan"]);
    let r = &v["result"]["report"];
    assert_eq!(r["derivation_chain_ok"], true);
    assert_eq!(r["constraints_hold"], true);
    assert_eq!(r["distance"], 2);
    assert_eq!(code, if v["pass"] == true { 0 } else { 1 });
}

#[test]
fn scan_fits_exponent() {
    let (code, v) = json(&["scan", "mstar", "--sizes", "2,3,4"]);
    assert_eq!(code, 0);
    let e = v["result"]["fit"]["exponent"].as_f64().unwrap();
    assert!((e - 0.5).abs() < 0.1);
}

#[test]
fn reports_are_deterministic() {
    let args = ["dmax", "toric", "3", "--threads", "1"];
    let (_, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(without_timing(a), without_timing(b));
    let (_, mut c) = json(&["dmax", "toric", "3", "--threads", "2"]);
    let (_, mut d) = json(&["dmax", "toric", "3", "--threads", "1"]);
    c["config"]["threads"] = Value::Null;
    d["config"]["threads"] = Value::Null;
    assert_eq!(without_timing(c), without_timing(d));
}

#[test]
fn table_format_and_errors() {
    let out = tqo(&["--format", "table", "cset", "star", "5", "-d", "3"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("result.empty"));
    assert_eq!(tqo(&["cset", "nosuchfamily", "3", "-d", "2"]).status.code(), Some(4));
    let help = String::from_utf8(tqo(&["--help"]).stdout).unwrap();
    assert!(help.contains("TQO_BUDGET_MS"));
    assert!(help.contains("C(n,w)"));
}

#[test]
fn env_budget_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_tqo"))
        .args(["dmax", "lattice", "3", "3"])
        .env("TQO_BUDGET_MS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
