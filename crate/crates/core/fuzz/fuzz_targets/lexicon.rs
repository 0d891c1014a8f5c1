#![no_main]

use libfuzzer_sys::fuzz_target;
use verso::lexicon::{Lexicon, Morph, SemanticForm};

fuzz_target!(|text: &str| {
    if let Ok(lex) = Lexicon::parse(text) {
        let _ = lex.tag(&lex.tokenize(text));
    }
    for line in text.lines() {
        let _ = Morph::parse(line);
        let _ = SemanticForm::parse("p", line);
    }
});
