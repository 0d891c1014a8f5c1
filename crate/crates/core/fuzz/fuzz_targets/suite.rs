#![no_main]

use libfuzzer_sys::fuzz_target;
use verso::suite::parse_suite;

fuzz_target!(|text: &str| {
    let _ = parse_suite(text);
});
