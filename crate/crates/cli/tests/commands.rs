use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dblgpd"))
        .args(args)
        .env_remove("DBLGPD_MAX_BOXES")
        .output()
        .expect("spawn dblgpd")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn gen_s3(dir: &Path) -> String {
    let path = dir.join("s3.json");
    let path_s = path.to_str().unwrap().to_owned();
    let out = run(&[
        "gen", "exact", "--group", "S3", "--a", "0,2", "--b", "0,3,4", "--name", "s3", "--output",
        &path_s,
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    path_s
}

#[test]
fn generated_factorization_passes_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = gen_s3(dir.path());

    let out = run(&["--input", &s3, "validate"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let out = run(&["--input", &s3, "factor-check", "--name", "s3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("factorization true"));

    let out = run(&["--input", &s3, "roundtrip", "--name", "s3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("bijective true"));
}

#[test]
fn boxdbl_output_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = gen_s3(dir.path());
    let boxed = dir.path().join("boxed.json");
    let boxed_s = boxed.to_str().unwrap();

    let out = run(&[
        "--input", &s3, "--output", boxed_s, "boxdbl", "--name", "s3",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(&["--input", boxed_s, "core", "--name", "s3.box"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(&["--input", boxed_s, "roundtrip", "--name", "s3.box"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn json_report_is_parseable() {
    let s3 = fixture("s3.json");
    let out = run(&[
        "--json",
        "--input",
        s3.to_str().unwrap(),
        "factor-check",
        "--name",
        "s3",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], serde_json::Value::Bool(true));
}

#[test]
fn non_factorization_exits_one() {
    let neg = fixture("s3_negative.json");
    let out = run(&[
        "--input",
        neg.to_str().unwrap(),
        "factor-check",
        "--name",
        "s3_negative",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("factorization false"));
}

#[test]
fn forged_file_exits_two() {
    let forged = fixture("forged/truncated.json");
    let out = run(&["--input", forged.to_str().unwrap(), "validate"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("schema violation"));
}

#[test]
fn unknown_name_exits_two() {
    let s3 = fixture("s3.json");
    let out = run(&["--input", s3.to_str().unwrap(), "core", "--name", "nope"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn export_dot_of_pair_groupoid() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p3.json");
    let p_s = p.to_str().unwrap();
    let out = run(&["gen", "pair", "--n", "3", "--name", "P", "--output", p_s]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(&["--input", p_s, "export-dot", "--name", "P"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph \"P\""));
    assert_eq!(dot.matches(" -> ").count(), 9);
}

#[test]
fn empty_corpus_passes() {
    let out = run(&["corpus", "--generator", "empty"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["instances"], 0);
    assert_eq!(report["spec"]["generator"], "empty");
}

#[test]
fn small_corpus_passes() {
    let out = run(&["--max-order", "6", "corpus", "--generator", "exact"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn box_cap_is_reported_as_error() {
    let s3 = fixture("s3.json");
    let out = run(&[
        "--max-boxes",
        "2",
        "--input",
        s3.to_str().unwrap(),
        "boxdbl",
        "--name",
        "s3",
    ]);
    assert_eq!(code(&out), 2);
}
