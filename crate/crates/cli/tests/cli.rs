use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn demo_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/demo")
        .canonicalize()
        .unwrap()
}

fn demo_config() -> PathBuf {
    demo_dir().join("config.toml")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_feature-tags"))
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

const PATH_KEYS: [&str; 11] = [
    "corpus",
    "features",
    "evaluations",
    "adverbs",
    "negations",
    "references",
    "synonyms",
    "similarity",
    "relation_map",
    "gold",
    "tags",
];

/// The demo config with absolute paths and `extra` lines appended, written
/// into a fresh directory.
fn config_with(extra: &str) -> (TempDir, PathBuf) {
    let dir = TempDir::new().unwrap();
    let demo = demo_dir();
    let mut text = String::new();
    for line in fs::read_to_string(demo_config()).unwrap().lines() {
        let replaced = extra
            .lines()
            .filter_map(|l| l.split_once('=').map(|(k, _)| k.trim()))
            .any(|k| line.split_once('=').is_some_and(|(lk, _)| lk.trim() == k));
        if replaced || line.starts_with('#') {
            continue;
        }
        match line.split_once(" = \"") {
            Some((key, value)) if value.ends_with('"') && PATH_KEYS.contains(&key.trim()) => {
                let file = demo.join(value.trim_end_matches('"'));
                writeln!(text, "{key} = {:?}", file.display().to_string()).unwrap();
            }
            _ => writeln!(text, "{line}").unwrap(),
        }
    }
    text.push_str(extra);
    let path = dir.path().join("config.toml");
    fs::write(&path, text).unwrap();
    (dir, path)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn extract_demo_matches_expected_tags() {
    let out = run(&["--config", p(&demo_config()), "extract"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let expected = fs::read_to_string(demo_dir().join("expected_tags.jsonl")).unwrap();
    assert_eq!(stdout(&out), expected);
    let err = stderr(&out);
    assert!(err.contains("phone\t7"), "{err}");
    assert!(err.lines().last().unwrap().contains("21 tags"), "{err}");
}

#[test]
fn extract_writes_output_file_and_is_thread_count_independent() {
    let dir = TempDir::new().unwrap();
    let one = dir.path().join("one.jsonl");
    let four = dir.path().join("four.jsonl");
    for (jobs, file) in [("1", &one), ("4", &four)] {
        let out = run(&[
            "--config",
            p(&demo_config()),
            "--jobs",
            jobs,
            "--output",
            p(file),
            "extract",
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(fs::read(&one).unwrap(), fs::read(&four).unwrap());
}

#[test]
fn negation_can_be_disabled() {
    let (_dir, config) = config_with("negation = false\n");
    let out = run(&["--config", p(&config), "extract"]);
    assert!(out.status.success());
    let line = stdout(&out)
        .lines()
        .find(|l| l.contains("\"review_id\":\"3001\",\"sentence_id\":\"1\""))
        .unwrap()
        .to_string();
    assert!(
        line.contains("\"negation\":null") && line.contains("\"polarity\":0.85"),
        "{line}"
    );
    let flag = run(&["--config", p(&demo_config()), "--no-negation", "extract"]);
    assert_eq!(stdout(&flag), stdout(&out));
}

#[test]
fn missing_template_file_names_path() {
    let (_dir, config) = config_with("templates = \"/no/such/templates.txt\"\n");
    let out = run(&["--config", p(&config), "extract"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("/no/such/templates.txt"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn malformed_corpus_is_data_error() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("bad.conllu");
    fs::write(&corpus, "1\tprice\tprice\tNOUN\t_\t_\tx\troot\t_\t_\n").unwrap();
    let (_cdir, config) = config_with(&format!("corpus = {:?}\n", p(&corpus)));
    let out = run(&["--config", p(&config), "extract"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(
        err.contains("bad.conllu") && err.contains("line 1"),
        "{err}"
    );
}

#[test]
fn empty_corpus_extracts_zero_tags() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("empty.conllu");
    fs::write(&corpus, "").unwrap();
    let (_cdir, config) = config_with(&format!("corpus = {:?}\n", p(&corpus)));
    let out = run(&["--config", p(&config), "extract"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(stderr(&out).contains("0 tags"));

    let stats = run(&["--config", p(&config), "stats"]);
    assert_eq!(stats.status.code(), Some(2));
    assert!(stderr(&stats).contains("no counting units"));
}

#[test]
fn polarity_verdicts_in_argument_order() {
    let out = run(&[
        "--config",
        p(&demo_config()),
        "polarity",
        "great",
        "qwertyuiop",
        "high",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let verdicts: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(verdicts.len(), 3);
    assert_eq!(verdicts[0]["word"], "great");
    assert_eq!(verdicts[0]["label"], "commendatory");
    assert_eq!(verdicts[0]["so_hownet"], 0.9);
    assert_eq!(verdicts[1]["label"], "filtered");
    assert_eq!(verdicts[1]["so_hownet"], serde_json::Value::Null);
    assert_eq!(verdicts[2]["label"], "derogatory");
    for v in &verdicts {
        assert!(v["hownet_score"].is_number() && v["pmi_score"].is_number());
    }
}

#[test]
fn polarity_needs_words() {
    assert_eq!(
        run(&["--config", p(&demo_config()), "polarity"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn eval_of_gold_against_itself_is_perfect() {
    let dir = TempDir::new().unwrap();
    let expected = fs::read_to_string(demo_dir().join("expected_tags.jsonl")).unwrap();
    let mut gold = String::from("review_id\tsentence_id\tfeature\tnegation\tadverb\tevaluation\n");
    for line in expected.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let slot = |k: &str| v[k].as_str().unwrap_or("-").to_string();
        writeln!(
            gold,
            "{}\t{}\t{}\t{}\t{}\t{}",
            slot("review_id"),
            slot("sentence_id"),
            slot("feature"),
            slot("negation"),
            slot("adverb"),
            slot("evaluation")
        )
        .unwrap();
    }
    let gold_path = dir.path().join("gold.tsv");
    fs::write(&gold_path, gold).unwrap();
    let (_cdir, config) = config_with(&format!("gold = {:?}\n", p(&gold_path)));
    let out = run(&["--config", p(&config), "--strictness", "full", "eval"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    for line in text
        .lines()
        .filter(|l| !l.starts_with("Category") && !l.starts_with('-'))
    {
        assert!(line.ends_with("1.00    1.00     1.00"), "{line}");
    }
}

#[test]
fn eval_demo_gold_full_strictness() {
    let out = run(&[
        "--config",
        p(&demo_config()),
        "--strictness",
        "full",
        "eval",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let total = text.lines().last().unwrap();
    assert!(
        total.starts_with("Total") && total.ends_with("0.90    0.86     0.88"),
        "{total}"
    );
}

/// Tags and gold files producing the given counts in one category.
fn synthetic(dir: &Path, rows: &[(&str, u64, u64, u64)]) -> (PathBuf, PathBuf, PathBuf) {
    let mut corpus = String::new();
    let mut tags = String::new();
    let mut gold = String::from("review_id\tsentence_id\tfeature\tnegation\tadverb\tevaluation\n");
    for (category, extracted, correct, missed) in rows {
        writeln!(
            corpus,
            "# review_id = {category}\n# category = {category}\n1\tx\tx\tX\t_\t_\t0\troot\t_\t_\n"
        )
        .unwrap();
        for i in 0..*extracted {
            let feature = if i < *correct {
                format!("f{i}")
            } else {
                format!("wrong{i}")
            };
            writeln!(
                tags,
                "{{\"review_id\":\"{category}\",\"sentence_id\":\"1\",\"feature\":\"{feature}\",\"negation\":null,\"adverb\":null,\"evaluation\":\"e\",\"template_id\":\"t\",\"polarity\":null}}"
            )
            .unwrap();
        }
        for i in 0..correct + missed {
            writeln!(gold, "{category}\t1\tf{i}\t-\t-\te").unwrap();
        }
    }
    let paths = (
        dir.join("corpus.conllu"),
        dir.join("tags.jsonl"),
        dir.join("gold.tsv"),
    );
    fs::write(&paths.0, corpus).unwrap();
    fs::write(&paths.1, tags).unwrap();
    fs::write(&paths.2, gold).unwrap();
    paths
}

#[test]
fn eval_renders_category_rows_from_counts() {
    let dir = TempDir::new().unwrap();
    let rows = [
        ("phone", 4322, 3124, 342, "0.72    0.90     0.80"),
        ("computer", 5217, 4023, 122, "0.77    0.97     0.86"),
        ("beauty", 1244, 792, 462, "0.64    0.63     0.63"),
        ("food", 7001, 6321, 649, "0.90    0.91     0.90"),
    ];
    let counts: Vec<_> = rows.iter().map(|r| (r.0, r.1, r.2, r.3)).collect();
    let (corpus, tags, gold) = synthetic(dir.path(), &counts);
    let config = dir.path().join("config.toml");
    fs::write(
        &config,
        format!(
            "corpus = {:?}\ntags = {:?}\ngold = {:?}\n",
            p(&corpus),
            p(&tags),
            p(&gold)
        ),
    )
    .unwrap();
    let out = run(&["--config", p(&config), "eval"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    for (category, extracted, correct, missed, metrics) in rows {
        let line = text.lines().find(|l| l.starts_with(category)).unwrap();
        let fields: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(
            fields[1..4],
            [
                extracted.to_string(),
                correct.to_string(),
                missed.to_string()
            ]
        );
        assert!(line.ends_with(metrics), "{line}");
    }
}

#[test]
fn empty_gold_is_undefined() {
    let dir = TempDir::new().unwrap();
    let gold = dir.path().join("gold.tsv");
    fs::write(
        &gold,
        "review_id\tsentence_id\tfeature\tnegation\tadverb\tevaluation\n",
    )
    .unwrap();
    let (_cdir, config) = config_with(&format!("gold = {:?}\n", p(&gold)));
    let out = run(&["--config", p(&config), "eval"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("undefined"), "{}", stderr(&out));
}

#[test]
fn eval_warns_about_orphan_reviews() {
    let dir = TempDir::new().unwrap();
    let gold = dir.path().join("gold.tsv");
    fs::write(
        &gold,
        "2132\t1\tprice\t-\t-\taffordable\n9999\t1\tprice\t-\t-\tlow\n",
    )
    .unwrap();
    let (_cdir, config) = config_with(&format!("gold = {:?}\n", p(&gold)));
    let out = run(&["--config", p(&config), "eval"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let err = stderr(&out);
    assert!(
        err.starts_with("warning:") && err.contains("9999") && err.contains("3001"),
        "{err}"
    );
    let total = stdout(&out).lines().last().unwrap().to_string();
    // only review 2132 is scored: three tags, one gold entry
    assert!(
        total.contains("Total") && total.ends_with("0.33    1.00     0.50"),
        "{total}"
    );
}

#[test]
fn stats_counts_units_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("four.conllu");
    let sentence = |words: &[&str]| {
        let mut s = String::new();
        for (i, w) in words.iter().enumerate() {
            let head = if i == 0 { 0 } else { 1 };
            let rel = if i == 0 { "root" } else { "dep" };
            writeln!(s, "{}\t{w}\t{w}\tX\t_\t_\t{head}\t{rel}\t_\t_", i + 1).unwrap();
        }
        s + "\n"
    };
    let text = [
        sentence(&["good", "fast", "good"]),
        sentence(&["fast", "good"]),
        sentence(&["bad", "packaging"]),
        sentence(&["slow"]),
    ]
    .concat();
    fs::write(&corpus, text).unwrap();
    let config = dir.path().join("config.toml");
    fs::write(&config, "corpus = \"four.conllu\"\ntop_k = 2\n").unwrap();
    let first = run(&["--config", p(&config), "stats"]);
    assert!(first.status.success(), "{}", stderr(&first));
    assert_eq!(
        stdout(&first),
        "total_units\t4\nvocabulary_size\t5\npair\tfast\tgood\t2\npair\tbad\tpackaging\t1\n"
    );
    let second = run(&["--config", p(&config), "stats"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn usage_errors_exit_one() {
    let config = demo_config();
    for args in [
        vec!["--config", p(&config), "--bogus", "stats"],
        vec!["--config", p(&config), "--strictness", "loose", "eval"],
        vec!["--config", p(&config), "--pmi-variant", "ln", "stats"],
        vec!["--config", p(&config), "--theta-hownet", "1.5", "extract"],
        vec!["--config", p(&config), "--max-window", "0", "extract"],
        vec!["--config", "/no/such/config.toml", "stats"],
        vec!["stats"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn flags_override_config() {
    let strict = run(&[
        "--config",
        p(&demo_config()),
        "--theta-hownet",
        "0.86",
        "extract",
    ]);
    assert!(strict.status.success());
    let n = stdout(&strict).lines().count();
    // 0.85 and 0.8 similarity evaluations drop out, references and 0.9 matches stay
    assert!(n < 21 && n > 0, "{n}");
    assert!(!stdout(&strict).contains("\"crispy\""));
}
