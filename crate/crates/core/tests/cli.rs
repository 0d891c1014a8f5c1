//! The command-line binary, run as a subprocess.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use verso::semantics::{compare_models, Model};
use verso::suite::{self, Group};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn verso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verso")).args(args).output().unwrap()
}

fn verso_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_verso"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn sentence(id: &str) -> String {
    suite::bundled().into_iter().find(|s| s.id == id).unwrap().text
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["--help"], 0),
        (&["parse", "il sognatore educa lei"], 0),
        (&["parse", ""], 1),
        (&["frobnicate"], 1),
        (&["stats", "/nonexistent/file"], 1),
        (&["parse", "il sognatore educa qwertyuiop"], 3),
        (&["parse", "il il il"], 2),
    ];
    for (args, code) in cases {
        let o = verso(args);
        assert_eq!(
            o.status.code(),
            Some(*code),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn malformed_inputs_are_format_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "(S (NP il sognatore)\n").unwrap();
    assert_eq!(verso(&["stats", bad.to_str().unwrap()]).status.code(), Some(4));
    std::fs::write(&bad, "v1\tonly two\n").unwrap();
    let fx = data("fixtures_txp.txt");
    assert_eq!(
        verso(&["grade", bad.to_str().unwrap(), fx.to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn fstructures_match_goldens() {
    for s in suite::bundled().into_iter().filter(|s| s.group != Group::Control) {
        let o = verso(&["fstruct", &s.text]);
        assert_eq!(o.status.code(), Some(0), "{}", s.id);
        let want = std::fs::read_to_string(data(&format!("golden/{}.fstruct", s.id))).unwrap();
        assert_eq!(stdout(&o), want, "{}", s.id);
    }
}

#[test]
fn models_match_goldens_by_content() {
    for s in suite::bundled().into_iter().filter(|s| s.group != Group::Control) {
        let o = verso(&["model", &s.text]);
        assert_eq!(o.status.code(), Some(0), "{}", s.id);
        let got = Model::parse(&stdout(&o)).unwrap();
        let want = Model::parse(&std::fs::read_to_string(data(&format!("golden/{}.model", s.id))).unwrap()).unwrap();
        let diff = compare_models(&want, &got);
        assert!(diff.is_empty(), "{}: {diff:?}", s.id);
    }
}

#[test]
fn grade_written_table() {
    let fx: Vec<String> = ["txp", "vsl", "tnt", "tln"]
        .iter()
        .map(|p| data(&format!("fixtures_{p}.txt")).to_string_lossy().into_owned())
        .collect();
    let gold = data("gold_written.txt").to_string_lossy().into_owned();
    let mut args = vec!["grade", gold.as_str()];
    args.extend(fx.iter().map(String::as_str));
    let o = verso(&args);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out.lines().skip(2).map(|l| l.split('\t').collect()).collect();
    let got: Vec<(&str, &str, &str)> = rows.iter().map(|r| (r[0], r[1], r[2])).collect();
    assert_eq!(
        got,
        vec![
            ("TXP", "18", "37.93"),
            ("VSL", "14", "51.72"),
            ("TNT", "14", "51.72"),
            ("TLN", "14", "51.72")
        ]
    );
    assert!(rows[0].len() == 5 && rows[0][4].starts_with("DISCREPANT"));
    assert!(rows[1..].iter().all(|r| r.len() == 4));
}

#[test]
fn stats_of_mini_corpus() {
    let o = verso(&["stats", data("mini_corpus.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let counts = out.lines().nth(1).unwrap();
    let cells: Vec<&str> = counts.split_whitespace().collect();
    let (ncs, constituents, simple) = (17.0_f64, 129.0_f64, 24.0_f64);
    assert_eq!(cells[1..7], ["5", "3", "3", "1", "5", "17"]);
    assert_eq!(cells[7], format!("{:.1}%", 100.0 * ncs / constituents));
    assert_eq!(cells[8], format!("{:.2}%", 100.0 * ncs / simple));
}

#[test]
fn batch_from_stdin() {
    let input = "a\til sognatore educa lei\nlei sola forse il freddo sognatore educerebbe al tenero prodigio\n";
    let o = verso_stdin(&["--format", "report", "batch", "-"], input);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("=== a\til sognatore educa lei\n"));
    assert!(out.contains("config="));
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("sentences=2 completed=2 defects=0 elapsed="), "{last}");
}

#[test]
fn bundled_batch_has_no_defects() {
    let o = verso(&["batch"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.lines()
            .last()
            .unwrap()
            .starts_with("sentences=29 completed=29 defects=0"),
        "{out}"
    );
}

#[test]
fn verbose_parse_traces_reanalysis() {
    let o = verso(&["-v", "parse", &sentence("xii")]);
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    let out = stdout(&o);
    let trace = format!("{out}{err}");
    assert!(trace.contains("tier=noncanonical rank=3"), "{trace}");
    assert!(trace.contains("strategies=focus_spec_cp"));
    assert!(trace.contains("binding: focus sn1 -> ogg"), "{trace}");
}
