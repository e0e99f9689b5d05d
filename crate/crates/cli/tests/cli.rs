//! End-to-end tests of the `foglift` binary: output bytes, formats, and the
//! 0/1/2/3 exit-status contract.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
}

fn foglift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foglift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn extract_matches_committed_snapshot() {
    let path = fixture("ischemia_glutamate.txt");
    let snapshot = fs::read_to_string(fixture("ischemia_glutamate.report.json")).unwrap();
    let output = foglift(&["extract", path.to_str().unwrap(), "--pair", "ischemia,glutamate"]);
    assert!(output.status.success());
    assert_eq!(stdout(&output), snapshot);
}

#[test]
fn extract_is_byte_identical_across_runs() {
    let path = fixture("ischemia_glutamate.txt");
    let args = ["extract", path.to_str().unwrap(), "--pair", "ischemia,glutamate"];
    let first = foglift(&args);
    let second = foglift(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn extract_tsv_renders_both_tables() {
    let path = fixture("ischemia_glutamate.txt");
    let output = foglift(&[
        "extract",
        path.to_str().unwrap(),
        "--pair",
        "ischemia,glutamate",
        "--format",
        "tsv",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("# top pairs by frequency"));
    assert!(text.contains("# representative pairs by harmonic mean"));
    assert!(text.contains("1\tglutamate-ischemia\t3\n"));
    assert!(text.contains("1\tglutamate-ischemia\t75.0000\n"));
}

#[test]
fn extract_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let path = fixture("ischemia_glutamate.txt");
    let output = foglift(&[
        "extract",
        path.to_str().unwrap(),
        "--pair",
        "ischemia,glutamate",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let snapshot = fs::read_to_string(fixture("ischemia_glutamate.report.json")).unwrap();
    assert_eq!(fs::read_to_string(&out).unwrap(), snapshot);
}

#[test]
fn extract_gold_flag_adds_column() {
    let path = fixture("ischemia_glutamate.txt");
    let gold = fixture("gold_relations.tsv");
    let output = foglift(&[
        "extract",
        path.to_str().unwrap(),
        "--pair",
        "ischemia,glutamate",
        "--gold",
        gold.to_str().unwrap(),
        "--format",
        "tsv",
    ]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("glutamate-ischemia\t3\tyes"));
}

#[test]
fn empty_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.txt");
    fs::write(&path, "").unwrap();
    let output = foglift(&["extract", path.to_str().unwrap(), "--pair", "ischemia,glutamate"]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("error"));
    assert!(stderr.contains("empty.txt"), "error names the file: {stderr}");
}

#[test]
fn degenerate_pair_exits_2() {
    let path = fixture("ischemia_glutamate.txt");
    let output = foglift(&["extract", path.to_str().unwrap(), "--pair", "same,same"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn bad_chunk_fraction_exits_2() {
    let path = fixture("ischemia_glutamate.txt");
    let output = foglift(&[
        "extract",
        path.to_str().unwrap(),
        "--pair",
        "ischemia,glutamate",
        "--chunk",
        "1.5",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn missing_tagger_exits_3() {
    let path = fixture("ischemia_glutamate.txt");
    let output = foglift(&[
        "extract",
        path.to_str().unwrap(),
        "--pair",
        "ischemia,glutamate",
        "--tagger-cmd",
        "/no/such/tagger",
    ]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn partial_corpus_failure_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(fixture("ischemia_glutamate.txt")).unwrap();
    fs::write(dir.path().join("good.txt"), &text).unwrap();
    fs::write(dir.path().join("bad.txt"), "").unwrap();
    let output = foglift(&[
        "extract",
        dir.path().to_str().unwrap(),
        "--pair",
        "ischemia,glutamate",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let report = stdout(&output);
    assert!(report.contains("\"failures\""));
    assert!(report.contains("bad.txt"));
}

#[test]
fn corpus_mode_emits_summary() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(fixture("ischemia_glutamate.txt")).unwrap();
    fs::write(dir.path().join("one.txt"), &text).unwrap();
    fs::write(dir.path().join("two.txt"), &text).unwrap();
    let output = foglift(&[
        "extract",
        dir.path().to_str().unwrap(),
        "--pair",
        "ischemia,glutamate",
    ]);
    assert!(output.status.success());
    let report = stdout(&output);
    assert!(report.contains("\"documents_processed\": 2"));
    assert!(report.contains("\"pair_frequency_union\""));
}

#[test]
fn evolve_emits_csv() {
    let path = fixture("ischemia_glutamate.txt");
    let output = foglift(&["evolve", path.to_str().unwrap()]);
    assert!(output.status.success());
    let csv = stdout(&output);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(
        lines[0],
        "from_fraction,to_fraction,n_new,n_dropped,new_pairs,dropped_pairs"
    );
}

#[test]
fn evolve_rejects_ascending_fractions() {
    let path = fixture("ischemia_glutamate.txt");
    let output = foglift(&["evolve", path.to_str().unwrap(), "--fractions", "0.1,0.5"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn score_dumps_tsv_and_json() {
    let path = fixture("ischemia_glutamate.txt");
    let tsv = foglift(&["score", path.to_str().unwrap()]);
    assert!(tsv.status.success());
    let text = stdout(&tsv);
    assert_eq!(text.lines().count(), 13);
    assert!(text.starts_with("position\twords\tcomplex_words\tfi\tfi_norm\n"));

    let json = foglift(&["score", path.to_str().unwrap(), "--format", "json"]);
    assert!(json.status.success());
    assert!(stdout(&json).contains("\"fi_norm\""));
}

#[test]
fn missing_pair_flag_is_a_usage_error() {
    let path = fixture("ischemia_glutamate.txt");
    let output = foglift(&["extract", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
}
