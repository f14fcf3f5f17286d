use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lexnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexnet"))
        .args(args)
        .output()
        .expect("run lexnet")
}

fn data(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(rel)
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

#[test]
fn preprocess_writes_stream_and_prints_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let text = write(tmp.path(), "doc.txt", "The cats sat on the mat in 1964.");
    let stop = write(tmp.path(), "stop.txt", "the\non\nin\n");
    let lemmas = write(tmp.path(), "lemmas.tsv", "cats\tcat\nsat\tsit\n");
    let out = tmp.path().join("out");
    let o = lexnet(&[
        "preprocess",
        text.to_str().unwrap(),
        "--language",
        "en",
        "--stopwords",
        stop.to_str().unwrap(),
        "--lemmas",
        lemmas.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let counts: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(counts["with_stopwords"], 7);
    assert_eq!(counts["without_stopwords"], 3);
    let lemmas = fs::read_to_string(out.join("doc.lemmas.txt")).unwrap();
    assert_eq!(lemmas.lines().collect::<Vec<_>>(), ["cat", "sit", "mat"]);
}

#[test]
fn build_then_metrics_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let stream = write(tmp.path(), "s.lemmas.txt", "a\nb\nc\na\n");
    let o = lexnet(&["build", stream.to_str().unwrap(), "--out", tmp.path().to_str().unwrap()]);
    assert!(o.status.success());
    let edges = fs::read_to_string(tmp.path().join("edges.csv")).unwrap();
    assert_eq!(edges, "source,target\n\"a\",\"b\"\n\"b\",\"c\"\n\"c\",\"a\"\n");

    let o = lexnet(&["metrics", "--edges", tmp.path().join("edges.csv").to_str().unwrap()]);
    assert!(o.status.success());
    let m: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(m["n"], 3);
    assert_eq!(m["k"], 3);
    assert_eq!(m["c"], 0.5);
    assert_eq!(m["l"], 1.5);
    assert_eq!(m["d"], 2);

    let o = lexnet(&[
        "metrics",
        "--undirected",
        "--format",
        "csv",
        "--stream",
        stream.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "N,K,k_avg,C,L,D\n3,3,2.00000,1.00000,1.00000,1\n");
}

#[test]
fn er_is_seeded() {
    let run = |seed: &str| stdout(&lexnet(&["er", "--nodes", "300", "--links", "1500", "--seed", seed]));
    assert_eq!(run("3"), run("3"));
    assert_ne!(run("3"), run("4"));
    let m: serde_json::Value = serde_json::from_str(&run("3")).unwrap();
    assert_eq!(m["k"], 1500);
}

#[test]
fn analyze_and_export_agree() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    let o = lexnet(&[
        "analyze",
        &data("corpus/manifest.tsv"),
        "--format",
        "csv",
        "--out",
        a.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in [
        "report.json",
        "directed.csv",
        "undirected.csv",
        "word_counts.csv",
        "series.csv",
        "language_means.csv",
    ] {
        assert!(a.join(f).is_file(), "missing {f}");
    }

    let b = tmp.path().join("b");
    let o = lexnet(&[
        "export",
        a.join("report.json").to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    for f in ["directed.csv", "undirected.csv", "word_counts.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn bad_input_exits_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let missing = tmp.path().join("nope.txt");
    let o = lexnet(&["preprocess", missing.to_str().unwrap(), "--language", "en"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("lexnet: "));

    let o = lexnet(&["er", "--nodes", "3", "--links", "7"]);
    assert_eq!(o.status.code(), Some(2));

    let o = lexnet(&["er", "--undirected", "--nodes", "3", "--links", "4"]);
    assert_eq!(o.status.code(), Some(2));

    let manifest = write(tmp.path(), "m.tsv", "B1\ten\tmissing.txt\ts.txt\n");
    let o = lexnet(&["analyze", manifest.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let stop = write(tmp.path(), "s.txt", "the\n");
    let text = write(tmp.path(), "t.txt", "the");
    let o = lexnet(&[
        "preprocess",
        text.to_str().unwrap(),
        "--language",
        "en",
        "--stopwords",
        stop.to_str().unwrap(),
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "an empty lemma stream is legal for preprocess"
    );
}
