#![no_main]

use libfuzzer_sys::fuzz_target;
use verso::metrics::{corpus_stats, CorpusStats};

fuzz_target!(|text: &str| {
    let _ = corpus_stats(text);
    let _ = CorpusStats::from_counts(text);
});
