#![no_main]

use libfuzzer_sys::fuzz_target;
use verso::grammar::Grammar;

fuzz_target!(|text: &str| {
    let _ = Grammar::parse(text);
});
