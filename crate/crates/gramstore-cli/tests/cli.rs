//! End-to-end checks of the `gramstore` binary: subcommand behaviour, file
//! formats, and the exit-code contract (0 ok, 1 usage, 2 data, 3 internal).

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn gramstore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gramstore"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn assert_code(output: &Output, expected: i32) {
    assert_eq!(
        output.status.code(),
        Some(expected),
        "stdout: {}\nstderr: {}",
        stdout(output),
        stderr(output)
    );
}

#[test]
fn extract_slides_a_window() {
    let output = gramstore(&["extract", "--n", "3", "This is a nice weather we have today!"]);
    assert_code(&output, 0);
    let grams: Vec<String> = stdout(&output).lines().map(String::from).collect();
    assert_eq!(&grams[..3], &["Thi", "his", "is "]);
    assert_eq!(grams.len(), 35);
}

#[test]
fn extract_normalized_and_segmented() {
    let output = gramstore(&["extract", "--n", "3", "--normalize", "so nice!"]);
    assert_code(&output, 0);
    assert_eq!(stdout(&output), "son\noni\nnic\nice\n");

    let output = gramstore(&["extract", "--n", "3", "--segmented", "so nice!"]);
    assert_code(&output, 0);
    assert_eq!(stdout(&output), "nic\nice\n");

    let output = gramstore(&["extract", "--bag", "go go stop"]);
    assert_code(&output, 0);
    assert_eq!(stdout(&output), "go\t2\nstop\t1\n");
}

#[test]
fn estimate_size_both_models() {
    let output = gramstore(&["estimate-size", "--model", "dimensional", "--n", "5"]);
    assert_code(&output, 0);
    let text = stdout(&output);
    assert!(text.contains("bytes=53228564"), "{text}");
    assert!(text.contains("megabytes=50.762714"), "{text}");

    let output = gramstore(&[
        "estimate-size",
        "--model",
        "hash-list",
        "--n",
        "5",
        "--unique",
        "11881376",
        "--buckets",
        "23762752",
        "--empty",
        "11914220",
    ]);
    assert_code(&output, 0);
    assert!(stdout(&output).contains("bytes=1164112108"));

    // buckets defaults to 26^n, reproducing the published average case
    let output = gramstore(&[
        "estimate-size",
        "--model",
        "hash-list",
        "--n",
        "5",
        "--unique",
        "7510766",
        "--empty",
        "2679046",
    ]);
    assert_code(&output, 0);
    assert!(stdout(&output).contains("bytes=737026968"));
}

#[test]
fn gen_corpus_writes_both_formats(){
    let dir = tempfile::tempdir().unwrap();
    for name in ["corpus.jsonl", "corpus.csv"] {
        let path = dir.path().join(name);
        let output = gramstore(&[
            "gen-corpus",
            "--size",
            "30",
            "--separability",
            "1.0",
            "--seed",
            "5",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_code(&output, 0);
        let content = fs::read_to_string(&path).unwrap();
        let expected_lines = if name.ends_with(".csv") { 31 } else { 30 };
        assert_eq!(content.lines().count(), expected_lines, "{name}");
    }
}

fn write_corpus(path: &Path, documents: usize) {
    let mut content = String::new();
    for i in 0..documents {
        let (text, label) = if i % 2 == 0 {
            ("aaabbbcccddd", "positive")
        } else {
            ("xxxyyyzzzwww", "negative")
        };
        content.push_str(&format!("{{\"text\":\"{text}{i}\",\"label\":\"{label}\"}}\n"));
    }
    fs::write(path, content).unwrap();
}

#[test]
fn crossval_reports_the_three_kpis() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.jsonl");
    write_corpus(&corpus, 40);
    let output = gramstore(&[
        "crossval",
        "--corpus",
        corpus.to_str().unwrap(),
        "--n",
        "3",
        "--folds",
        "4",
        "--algorithm",
        "naive_bayes",
    ]);
    assert_code(&output, 0);
    let text = stdout(&output);
    assert!(text.contains("accuracy=1.000000"), "{text}");
    assert!(text.contains("kappa=1.000000"), "{text}");
    assert!(text.contains("train_seconds="), "{text}");
}

#[test]
fn bench_report_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.jsonl");
    write_corpus(&corpus, 40);
    let report = dir.path().join("report.csv");
    let output = gramstore(&[
        "bench",
        "--corpus",
        corpus.to_str().unwrap(),
        "--n",
        "3",
        "--folds",
        "4",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_code(&output, 0);
    let content = fs::read_to_string(&report).unwrap();
    assert_eq!(content.lines().count(), 7);
    assert!(content.starts_with("backend,algorithm,n,"));

    let output = gramstore(&["report", report.to_str().unwrap()]);
    assert_code(&output, 0);
    let text = stdout(&output);
    assert!(text.contains("total_seconds"));
    assert!(text.contains("dimensional"));
}

#[test]
fn bench_to_stdout_and_synthetic() {
    let output = gramstore(&[
        "bench",
        "--synthetic-size",
        "30",
        "--n",
        "2",
        "--folds",
        "3",
        "--backends",
        "dimensional",
        "--algorithms",
        "threshold",
    ]);
    assert_code(&output, 0);
    let text = stdout(&output);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("dimensional,threshold,2,"));
}

#[test]
fn usage_errors_exit_one() {
    // unknown flag
    let output = gramstore(&["bench", "--no-such-flag"]);
    assert_code(&output, 1);
    // neither corpus source
    let output = gramstore(&["bench"]);
    assert_code(&output, 1);
    // zero gram length reaches the library validation
    let output = gramstore(&["extract", "--n", "0", "abc"]);
    assert_code(&output, 1);
    // bad generator parameters
    let output = gramstore(&[
        "gen-corpus", "--size", "1", "--out", "/tmp/never-written.jsonl",
    ]);
    assert_code(&output, 1);
    // missing estimator parameters
    let output = gramstore(&["estimate-size", "--model", "hash-list"]);
    assert_code(&output, 1);
    // help is not a failure
    let output = gramstore(&["--help"]);
    assert_code(&output, 0);
}

#[test]
fn data_errors_exit_two() {
    // missing corpus file
    let output = gramstore(&["crossval", "--corpus", "/nonexistent/c.jsonl"]);
    assert_code(&output, 2);
    // majority-malformed corpus
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("bad.jsonl");
    fs::write(&corpus, "garbage\nmore garbage\n{\"text\":\"a\",\"label\":\"positive\"}\n").unwrap();
    let output = gramstore(&["crossval", "--corpus", corpus.to_str().unwrap()]);
    assert_code(&output, 2);
    // unknown extension without --format
    let unknown = dir.path().join("c.data");
    fs::write(&unknown, "").unwrap();
    let output = gramstore(&["crossval", "--corpus", unknown.to_str().unwrap()]);
    assert_code(&output, 2);
    // corpus smaller than the fold count
    let tiny = dir.path().join("tiny.jsonl");
    write_corpus(&tiny, 4);
    let output = gramstore(&["crossval", "--corpus", tiny.to_str().unwrap(), "--folds", "10"]);
    assert_code(&output, 2);
    // malformed report file
    let report = dir.path().join("r.csv");
    fs::write(&report, "not,a,report\n").unwrap();
    let output = gramstore(&["report", report.to_str().unwrap()]);
    assert_code(&output, 2);
}

#[test]
fn ingest_warns_about_rejected_lines() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.jsonl");
    let mut content = String::new();
    for i in 0..10 {
        let label = if i % 2 == 0 { "positive" } else { "negative" };
        content.push_str(&format!("{{\"text\":\"document {i} aaa\",\"label\":\"{label}\"}}\n"));
    }
    content.push_str("one malformed line\n");
    fs::write(&corpus, content).unwrap();
    let output = gramstore(&[
        "crossval",
        "--corpus",
        corpus.to_str().unwrap(),
        "--n",
        "2",
        "--folds",
        "5",
    ]);
    assert_code(&output, 0);
    assert!(stderr(&output).contains("10 documents accepted, 1 rejected"));
}
