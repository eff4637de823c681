use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures");

fn glyphgeom(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glyphgeom"))
        .args(args)
        .current_dir(cwd)
        .env_remove("GLYPHGEOM_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}")
}

#[test]
fn extract_csv_matches_golden_vector() {
    let dir = tempfile::tempdir().unwrap();
    let out = glyphgeom(
        &["extract", &fixture("x5.pbm"), "--format", "csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap().split(',').count(), 112);
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 112);
    assert_eq!(row[0], "");
    let golden: Vec<f64> = fs::read_to_string(fixture("x5_features.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .flat_map(|l| {
            l.split_whitespace()
                .map(|v| v.parse::<f64>().unwrap())
                .collect::<Vec<_>>()
        })
        .collect();
    for (got, want) in row[1..].iter().zip(&golden) {
        assert!((got.parse::<f64>().unwrap() - want).abs() < 1e-12);
    }
    assert!(lines.next().is_none());
}

#[test]
fn extract_writes_labeled_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let out = glyphgeom(
        &[
            "extract",
            &fixture("x5.txt"),
            "--label",
            "X",
            "--out",
            "x.jsonl",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("x.jsonl")).unwrap();
    assert!(text.starts_with(r#"{"label":"X","source":"#));
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn segments_prints_dump() {
    let dir = tempfile::tempdir().unwrap();
    let out = glyphgeom(&["segments", &fixture("x5.txt")], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        fs::read_to_string(fixture("x5_segments.txt")).unwrap()
    );
}

#[test]
fn empty_image_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("empty.pbm"), "P1\n3 2\n0 0 0\n0 0 0\n").unwrap();
    let out = glyphgeom(&["extract", "empty.pbm"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(
        err.contains("empty.pbm") && err.contains("empty skeleton"),
        "{err}"
    );
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn malformed_input_and_usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("short.pbm"), "P1\n3 3\n0 1\n").unwrap();
    let out = glyphgeom(&["extract", "short.pbm"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("short.pbm"));

    let out = glyphgeom(&["extract", "missing.pbm"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("missing.pbm"));

    assert_eq!(
        glyphgeom(&["extract", "--nope", "x"], dir.path())
            .status
            .code(),
        Some(2)
    );
    assert_eq!(glyphgeom(&[], dir.path()).status.code(), Some(2));
    assert_eq!(
        glyphgeom(&["frobnicate"], dir.path()).status.code(),
        Some(2)
    );
}

#[test]
fn skeletonize_thins_graymaps() {
    let dir = tempfile::tempdir().unwrap();
    let mut pgm = String::from("P2\n5 5\n255\n");
    for r in 0..5 {
        let row: Vec<&str> = (0..5)
            .map(|c| {
                if (1..4).contains(&c) && r > 0 {
                    "0"
                } else {
                    "255"
                }
            })
            .collect();
        pgm.push_str(&row.join(" "));
        pgm.push('\n');
    }
    fs::write(dir.path().join("bar.pgm"), pgm).unwrap();
    let out = glyphgeom(&["skeletonize", "bar.pgm", "--out", "bar.pbm"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let pbm = fs::read_to_string(dir.path().join("bar.pbm")).unwrap();
    assert!(pbm.starts_with("P1\n5 5\n"));
    let ones = pbm
        .lines()
        .skip(2)
        .flat_map(|l| l.split_whitespace())
        .filter(|&v| v == "1")
        .count();
    assert!((1..12).contains(&ones), "{pbm}");

    // Threshold 0 makes everything background.
    let out = glyphgeom(
        &[
            "skeletonize",
            "bar.pgm",
            "--out",
            "none.pbm",
            "--threshold",
            "0",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let none = fs::read_to_string(dir.path().join("none.pbm")).unwrap();
    assert!(!none.lines().skip(2).any(|l| l.contains('1')));
}

#[test]
fn batch_order_and_labels() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().join("imgs");
    let x5 = fs::read(fixture("x5.pbm")).unwrap();
    for rel in ["b/2.pbm", "a/10.pbm", "a/9.txt", "b/1.pbm"] {
        let p = root.join(rel);
        fs::create_dir_all(p.parent().unwrap()).unwrap();
        fs::write(&p, &x5).unwrap();
    }
    fs::write(root.join("a/notes.md"), "ignored").unwrap();
    let out = glyphgeom(
        &[
            "batch",
            "imgs",
            "--out",
            "out.jsonl",
            "--labels-from",
            "dirname",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("out.jsonl")).unwrap();
    let heads: Vec<&str> = text
        .lines()
        .map(|l| &l[..l.find(",\"features\"").unwrap()])
        .collect();
    assert_eq!(
        heads,
        [
            r#"{"label":"a","source":"a/10.pbm""#,
            r#"{"label":"a","source":"a/9.txt""#,
            r#"{"label":"b","source":"b/1.pbm""#,
            r#"{"label":"b","source":"b/2.pbm""#,
        ]
    );

    let out = glyphgeom(&["batch", "imgs", "--out", "out.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("out.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.lines().skip(1).all(|l| l.starts_with(",1.0,")));
}

#[test]
fn self_evaluation_is_perfect_with_k1() {
    let dir = tempfile::tempdir().unwrap();
    let out = glyphgeom(
        &[
            "gen-corpus",
            "--train",
            "2",
            "--test",
            "1",
            "--seed",
            "3",
            "--out",
            "c",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    for f in [
        "c/train.jsonl",
        "c/test.jsonl",
        "c/corpus/A/0.pbm",
        "c/corpus/Z/2.pbm",
    ] {
        assert!(dir.path().join(f).is_file(), "{f}");
    }
    let out = glyphgeom(
        &[
            "eval",
            "--train",
            "c/test.jsonl",
            "--test",
            "c/test.jsonl",
            "--k",
            "1",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = stdout(&out);
    assert_eq!(report.lines().next(), Some("accuracy=1.0 errors=0/26"));
    assert_eq!(report.lines().count(), 28);
}

#[test]
fn eval_rejects_oversized_k() {
    let dir = tempfile::tempdir().unwrap();
    glyphgeom(
        &[
            "gen-corpus",
            "--train",
            "1",
            "--test",
            "1",
            "--seed",
            "3",
            "--out",
            "c",
        ],
        dir.path(),
    );
    let out = glyphgeom(
        &[
            "eval",
            "--train",
            "c/train.jsonl",
            "--test",
            "c/test.jsonl",
            "--k",
            "27",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("train.jsonl"));
}

#[test]
fn thread_cap_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_glyphgeom"))
            .args(["segments", &fixture("x5.txt")])
            .current_dir(dir.path())
            .env("GLYPHGEOM_THREADS", threads)
            .output()
            .unwrap()
    };
    assert_eq!(run("1").status.code(), Some(0));
    let bad = run("zero");
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("GLYPHGEOM_THREADS"));
}
