use std::path::PathBuf;
use std::process::{Command, Output};

fn data(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "hermcm", "data", rel].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermcm")).args(args).output().expect("spawn hermcm")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn field_summary() {
    let out = run(&["field", "--d", "7"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["k"]["h"], 1);
    assert_eq!(v["k"]["w"], 2);
}

#[test]
fn lfun_value_at_zero() {
    let f = data("fields/d7_sqrt5.json");
    let out = run(&["lfun", "--field-json", &f, "--deriv"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!((v["value"].as_f64().unwrap() - 2.0).abs() < 1e-8);
    assert!(v["derivative"].is_number());
}

#[test]
fn theta_csv() {
    let l = data("lattices/d7_rank2.json");
    let out = run(&["theta", "--lattice", &l, "--prec", "2"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("m_numerator,m_denominator,coset_index,count"));
    assert_eq!(lines.next(), Some("0,1,0,1"));
}

#[test]
fn convolve_and_eisenstein() {
    let l = data("lattices/d7_rank2.json");
    let out = run(&["convolve", "--lattice", &l, "--check", "coset"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["passed"], true);

    let f = data("fields/d7_sqrt5.json");
    let out = run(&["eisenstein", "--field-json", &f, "--trace", "0"]);
    assert!(out.status.success());
    let a0 = json(&out)["value"].as_f64().unwrap();
    assert!(a0 > 2.7 && a0 < 2.75);
}

#[test]
fn degrees_exact() {
    let f = data("fields/d7_sqrt5.json");
    let out = run(&["degrees", "--field-json", &f]);
    assert!(out.status.success());
    assert_eq!(json(&out)["deg_big_exact"], "1/2");
}

#[test]
fn faltings_to_file() {
    let dir = std::env::temp_dir().join(format!("hermcm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("table.csv");
    let out = run(&["--out", target.to_str().unwrap(), "--format", "csv", "faltings", "--table"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let s = std::fs::read_to_string(&target).unwrap();
    assert!(s.starts_with("D,F,h_falt_k"));
    assert_eq!(s.lines().count(), 5);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", "lfun", "heights"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);

    // the trivial-coset comparison fails on the bundled newform
    let out = run(&["verify", "weilrep"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("induction_trivial_coset"));
}

#[test]
fn config_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("hermcm-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"bogus": 1}"#).unwrap();
    let out = run(&["--config", bad.to_str().unwrap(), "verify"]);
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.join("missing.json");
    let out = run(&["--config", missing.to_str().unwrap(), "verify"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn corrupt_newform_names_row() {
    let dir = std::env::temp_dir().join(format!("hermcm-nf-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("nf.csv");
    std::fs::write(&csv, "m,re,im\n1,1.0,0\n2,oops,0\n").unwrap();
    let l = data("lattices/d7_rank2.json");
    let out = run(&["induce", "--lattice", &l, "--lambda", "--newform", csv.to_str().unwrap(), "--prec", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 3"));
    std::fs::remove_dir_all(&dir).ok();
}
