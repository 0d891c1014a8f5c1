#![no_main]

use libfuzzer_sys::fuzz_target;
use verso::evalharness::{grade_suite, parse_gold, summarize, ParserOutputFixture};

// Gold analyses and parser output, separated by a `===` line.
fuzz_target!(|text: &str| {
    let (gold, output) = text.split_once("\n===\n").unwrap_or((text, ""));
    if let (Ok(g), Ok(f)) = (parse_gold(gold), ParserOutputFixture::parse("P", output)) {
        if let Ok(v) = grade_suite(&g, &f) {
            let s = summarize(&v);
            assert!(s.errors <= 2 * s.constituents);
        }
    }
});
