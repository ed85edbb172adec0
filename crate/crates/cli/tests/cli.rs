use std::fs;
use std::process::{Command, Output};

fn lct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lct")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn inspect_k4() {
    let o = lct(&["inspect", "C~"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("treewidth 3"));
    assert!(text.contains("longest 4\n"));
    assert!(text.contains("longest-cycles 3\n"));
    assert!(text.contains("lct 1 "));
}

#[test]
fn inspect_petersen() {
    let o = lct(&["inspect", "IheA@GUAo"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("longest 9\n"));
    assert!(text.contains("longest-cycles 20\n"));
    assert!(text.contains("lct 2 "));
}

#[test]
fn inspect_crossing_example_fixture() {
    let o = lct(&["inspect", "--fixture", "crossing-example", "--families"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("P1 v1av5: 1-intersects S at {a}, crosses S"));
    assert!(text.contains("C2 v3v4cabv3: 3-intersects S at {a,b,c}, fenced by S"));
    assert!(text.contains("lct 1 "));
    assert!(text.contains("crossing2"));
}

#[test]
fn configuration_errors_exit_with_two() {
    assert_eq!(lct(&["inspect", "zz"]).status.code(), Some(2));
    assert_eq!(lct(&["inspect", "--fixture", "unknown"]).status.code(), Some(2));
    assert_eq!(lct(&["verify"]).status.code(), Some(2));
    assert_eq!(lct(&["verify", "--generate", "walk:k=3,n=4"]).status.code(), Some(2));
    assert_eq!(lct(&["verify", "--corpus", "/nonexistent/corpus.g6"]).status.code(), Some(2));
    assert_eq!(lct(&["directed-forest", "IheA@GUAo"]).status.code(), Some(2));
    assert_eq!(lct(&["directed-forest", "Dhc"]).status.code(), Some(2));
}

#[test]
fn empty_corpus_is_ok() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("empty.g6");
    fs::write(&corpus, "# nothing here\n\n").unwrap();
    for cmd in ["verify", "conjecture"] {
        let out = dir.path().join(format!("{cmd}.jsonl"));
        let o = lct(&[cmd, "--corpus", corpus.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let report = fs::read_to_string(&out).unwrap();
        assert_eq!(report.lines().count(), 1, "header only");
        assert!(report.contains("\"graphs\":0"));
    }
}

#[test]
fn strict_mode_marks_petersen_out_of_scope() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("mixed.g6");
    fs::write(&corpus, "C~\nIheA@GUAo\n").unwrap();
    let out = dir.path().join("r.jsonl");
    let o = lct(&[
        "verify",
        "--strict-preconditions",
        "--corpus",
        corpus.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = fs::read_to_string(&out).unwrap().lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].contains("\"scope\":\"checked\""));
    assert!(lines[2].contains("\"scope\":\"out-of-scope\""));
    assert!(lines[2].contains("treewidth 4 exceeds 3"));
}

#[test]
fn reports_repeat_modulo_timings() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, workers: &str| {
        let out = dir.path().join(name);
        let o = lct(&[
            "verify",
            "--generate",
            "random:k=3,n=7-10,count=12,p=0.4",
            "--seed",
            "5",
            "--workers",
            workers,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        fs::read_to_string(out).unwrap().lines().map(lct_core::harness::strip_timings).collect::<Vec<_>>()
    };
    assert_eq!(run("a.jsonl", "1"), run("b.jsonl", "3"));
}

#[test]
fn conjecture_campaign_and_generate() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("k4trees.g6");
    let o = lct(&["generate", "random:k=4,n=6-9,count=8,p=0.3", "--seed", "7", "--out", corpus.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&corpus).unwrap().lines().filter(|l| !l.starts_with('#')).count(), 8);
    let out = dir.path().join("findings.jsonl");
    let o = lct(&["conjecture", "--corpus", corpus.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report = fs::read_to_string(&out).unwrap();
    assert_eq!(report.lines().filter(|l| l.contains("\"kind\":\"consistent\"")).count(), 8);
}

#[test]
fn directed_forest_on_crossing_example() {
    let o = lct(&["directed-forest", "--fixture", "crossing-example"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"contradiction\": false"));
}

#[test]
fn persisted_failure_file_reinspects() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("graph-000000.txt");
    fs::write(&file, "lct-failure 1\ngraph6 C~\nsource test\nfail lct-one lct=2\n").unwrap();
    let o = lct(&["inspect", "--bundle", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lct 1 "));
}
