#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use verso::grammar::Grammar;
use verso::lexicon::Lexicon;
use verso::parser::Parser;
use verso::semantics::build_model;

static LEXICON: OnceLock<Lexicon> = OnceLock::new();
static GRAMMAR: OnceLock<Grammar> = OnceLock::new();

fuzz_target!(|text: &str| {
    let lex = LEXICON.get_or_init(Lexicon::bundled);
    let parser = Parser::new(GRAMMAR.get_or_init(Grammar::bundled), lex);
    if let Ok(a) = verso::pipeline::analyse(&parser, lex, text) {
        if let Ok(m) = build_model(&a.interpretation.fstructure) {
            assert!(m.check_indices().is_ok(), "{m}");
        }
    }
});
