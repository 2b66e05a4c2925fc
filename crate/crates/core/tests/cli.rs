//! Runs the compiled binary against small corpora.

mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use opinion_mining::corpus_io::{save_posts, Format, PostRecord};
use serde_json::Value;

const DEMO_POSTS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/demo_posts.jsonl");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opinion-mining"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn error_record(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(1), "{args:?} should fail");
    let stderr = String::from_utf8(out.stderr).unwrap();
    let record: Value = serde_json::from_str(stderr.trim()).expect("stderr is one JSON record");
    assert_eq!(record["status"], "error");
    assert!(record["message"].as_str().is_some_and(|m| !m.is_empty()));
    record
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn out_dir(dir: &tempfile::TempDir) -> String {
    dir.path().join("out").display().to_string()
}

#[test]
fn score_writes_scores_and_distribution() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_dir(&dir);
    run_ok(&["score", "--posts", DEMO_POSTS, "--out", &out]);
    let csv = std::fs::read_to_string(dir.path().join("out/scores/scores.csv")).unwrap();
    assert_eq!(
        csv.lines().next(),
        Some("doc_id,polarity,subjectivity,label,scored_word_count")
    );
    assert_eq!(csv.lines().count(), 21);
    // The single (-1, 1) word post.
    assert!(csv.lines().any(|l| l == "demo-09,-1,1,negative,1"));

    let dist = read_json(&dir.path().join("out/scores/distribution.json"));
    let rows = dist.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3]["dataset_tag"], "Total");
    assert_eq!(rows[3]["total"], 20);
    let manifest = read_json(&dir.path().join("out/run_manifest.json"));
    assert_eq!(manifest["command"], "score");
    assert_eq!(manifest["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn seven_tags_give_seven_rows_and_a_total() {
    let records: Vec<PostRecord> = common::planted_posts(5).into_iter().map(|(r, _)| r).collect();
    let dir = tempfile::tempdir().unwrap();
    let posts = dir.path().join("posts.csv");
    save_posts(&posts, &records, Format::Csv).unwrap();
    run_ok(&["score", "--posts", posts.to_str().unwrap(), "--out", &out_dir(&dir)]);
    let dist = read_json(&dir.path().join("out/scores/distribution.json"));
    let rows = dist.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    let tags: Vec<&str> = rows.iter().map(|r| r["dataset_tag"].as_str().unwrap()).collect();
    let expected: Vec<&str> = common::BUCKETS.iter().map(|b| b.0).chain(["Total"]).collect();
    assert_eq!(tags, expected);
    let sum: u64 = rows[..7].iter().map(|r| r["total"].as_u64().unwrap()).sum();
    assert_eq!(sum, 2968);
    assert_eq!(rows[7]["total"], 2968);
}

#[test]
fn topics_rank_the_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["topics", "--posts", DEMO_POSTS, "--top-k", "2", "--out", &out_dir(&dir)]);
    let top = read_json(&dir.path().join("out/topics/2020-03-18.json"));
    assert_eq!(
        top,
        serde_json::json!([{"word": "colombia", "count": 3}, {"word": "italy", "count": 2}])
    );
    assert_eq!(std::fs::read_dir(dir.path().join("out/topics")).unwrap().count(), 3);
}

#[test]
fn preprocess_and_vectorize_dump_intermediates() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_dir(&dir);
    run_ok(&["preprocess", "--posts", DEMO_POSTS, "--out", &out]);
    let tokens = std::fs::read_to_string(dir.path().join("out/tokens/tokens.jsonl")).unwrap();
    let first: Value = serde_json::from_str(tokens.lines().next().unwrap()).unwrap();
    assert_eq!(
        first["tokens"],
        serde_json::json!(["authorities", "wait", "declare", "mandatory", "quarantine", "colombia"])
    );

    run_ok(&["vectorize", "--posts", DEMO_POSTS, "--out", &out]);
    let csv = std::fs::read_to_string(dir.path().join("out/tdm/2020-03-18.csv")).unwrap();
    let header = csv.lines().next().unwrap();
    assert!(header.starts_with("word,demo-01,demo-02,"));
    assert!(csv.lines().any(|l| l.starts_with("colombia,1,2,")));
    let sparse = read_json(&dir.path().join("out/tdm/2020-03-18.json"));
    assert!(sparse
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["count"].as_u64().unwrap() > 0));
}

#[test]
fn evaluate_writes_models_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let stdout = run_ok(&["evaluate", "--posts", DEMO_POSTS, "--k", "1", "--out", &out_dir(&dir)]);
    assert!(stdout.contains("Classifier  Accuracy  Precision micro  Precision macro"));
    for file in ["naive_bayes.json", "knn.json", "linear_svm.json", "vocabulary.txt"] {
        assert!(dir.path().join("out/models").join(file).is_file(), "{file}");
    }
    let report = read_json(&dir.path().join("out/reports/evaluation.json"));
    assert!(report.to_string().contains("Linear SVM"));
    let knn = read_json(&dir.path().join("out/models/knn.json"));
    assert_eq!(knn["model"]["k"], 1);
}

#[test]
fn config_file_values_yield_to_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config: PathBuf = dir.path().join("run.toml");
    std::fs::write(&config, format!("posts = {DEMO_POSTS:?}\ntop_k = 1\nseed = 9\n")).unwrap();
    let out = out_dir(&dir);
    run_ok(&[
        "topics",
        "--config",
        config.to_str().unwrap(),
        "--top-k",
        "3",
        "--out",
        &out,
    ]);
    let top = read_json(&dir.path().join("out/topics/2020-03-18.json"));
    assert_eq!(top.as_array().unwrap().len(), 3);
    let manifest = read_json(&dir.path().join("out/run_manifest.json"));
    assert_eq!(manifest["config"]["seed"], 9);
}

#[test]
fn empty_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let posts = dir.path().join("empty.jsonl");
    std::fs::write(&posts, "").unwrap();
    let posts = posts.to_str().unwrap();
    let out = out_dir(&dir);
    run_ok(&["score", "--posts", posts, "--out", &out]);
    let dist = read_json(&dir.path().join("out/scores/distribution.json"));
    assert_eq!(dist.as_array().unwrap().len(), 1);
    assert_eq!(dist[0]["total"], 0);
    let record = error_record(&["evaluate", "--posts", posts, "--out", &out]);
    assert_eq!(record["kind"], "corpus");
}

#[test]
fn failures_emit_one_error_record() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_dir(&dir);
    let missing = dir.path().join("missing.jsonl");
    assert_eq!(
        error_record(&["score", "--posts", missing.to_str().unwrap(), "--out", &out])["kind"],
        "corpus"
    );
    assert_eq!(
        error_record(&["score", "--posts", DEMO_POSTS, "--split-ratio", "1.5", "--out", &out])["kind"],
        "config"
    );
    assert_eq!(
        error_record(&[
            "evaluate",
            "--posts",
            DEMO_POSTS,
            "--label-source",
            "gold",
            "--out",
            &out
        ])["kind"],
        "config"
    );

    let bad = dir.path().join("bad.jsonl");
    std::fs::write(
        &bad,
        "{\"id\":\"a\",\"timestamp\":\"2020-03-18\",\"dataset_tag\":\"x\",\"text\":\"t\",\"label\":\"angry\"}\n",
    )
    .unwrap();
    let record = error_record(&["score", "--posts", bad.to_str().unwrap(), "--out", &out]);
    assert_eq!(record["kind"], "corpus");
    assert!(record["message"].as_str().unwrap().contains("angry"));
}

#[test]
fn lexicon_source_prefers_gold_labels_where_present() {
    let dir = tempfile::tempdir().unwrap();
    let posts = dir.path().join("posts.jsonl");
    // No post contains a lexicon word, so lexicon labels alone are all neutral.
    let mut lines = String::new();
    for i in 0..20 {
        let label = if i % 2 == 0 { r#","label":"positive""# } else { "" };
        lines.push_str(&format!(
            "{{\"id\":\"p{i}\",\"timestamp\":\"2020-03-18\",\"dataset_tag\":\"d\",\"text\":\"zebra{}\"{label}}}\n",
            "q".repeat(i % 2 + 1)
        ));
    }
    std::fs::write(&posts, lines).unwrap();
    let posts = posts.to_str().unwrap();
    let out = out_dir(&dir);

    run_ok(&["evaluate", "--posts", posts, "--out", &out]);
    let report = read_json(&dir.path().join("out/reports/evaluation.json"));
    let classes = &report[0]["report"]["confusion"]["classes"];
    assert_eq!(classes, &serde_json::json!(["positive", "neutral"]));

    // Gold-only training sees a single class.
    assert_eq!(
        error_record(&["evaluate", "--posts", posts, "--label-source", "gold", "--out", &out])["kind"],
        "config"
    );
}
