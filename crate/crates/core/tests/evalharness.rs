//! Grading the bundled parser-output fixtures against the gold analyses.

use verso::evalharness::{grade_suite, parse_gold, summarize, ParserOutputFixture, Summary};

const VERSE: &str = include_str!("../data/gold_verse.txt");
const WRITTEN: &str = include_str!("../data/gold_written.txt");

fn fixture(p: &str) -> ParserOutputFixture {
    let text = std::fs::read_to_string(format!("{}/data/fixtures_{p}.txt", env!("CARGO_MANIFEST_DIR"))).unwrap();
    ParserOutputFixture::parse(&p.to_uppercase(), &text).unwrap()
}

fn summary(gold: &str, p: &str) -> Summary {
    summarize(&grade_suite(&parse_gold(gold).unwrap(), &fixture(p)).unwrap())
}

#[test]
fn gold_constituent_counts() {
    let n = |t| {
        parse_gold(t)
            .unwrap()
            .iter()
            .map(|g| g.constituents.len())
            .sum::<usize>()
    };
    assert_eq!((n(VERSE), n(WRITTEN)), (31, 29));
}

#[test]
fn written_errors_per_parser() {
    let got: Vec<u64> = ["txp", "vsl", "tnt", "tln"]
        .iter()
        .map(|p| summary(WRITTEN, p).errors)
        .collect();
    assert_eq!(got, [18, 14, 14, 14]);
}

#[test]
fn verse_errors_per_parser() {
    let got: Vec<u64> = ["txp", "vsl", "tnt", "tln"]
        .iter()
        .map(|p| summary(VERSE, p).errors)
        .collect();
    assert_eq!(got, [11, 14, 22, 15]);
}

#[test]
fn percentages_follow_from_error_counts() {
    for (gold, p) in [(VERSE, "tnt"), (WRITTEN, "vsl")] {
        let s = summary(gold, p);
        let pct = 100.0 * (s.constituents - s.errors) as f64 / s.constituents as f64;
        assert_eq!(s.pct_correct().format(2), format!("{pct:.2}%"));
    }
}
