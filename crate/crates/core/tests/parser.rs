//! Ranked reanalysis over the bundled sentences.

use verso::grammar::{Grammar, Tier};
use verso::lexicon::Lexicon;
use verso::parser::{Parse, Parser, Strategy};
use verso::suite::{self, Group};

fn parses() -> Vec<(String, Group, Parse)> {
    let lex = Lexicon::bundled();
    let g = Grammar::bundled();
    let p = Parser::new(&g, &lex);
    suite::bundled()
        .into_iter()
        .map(|s| {
            let a = verso::pipeline::analyse(&p, &lex, &s.text).unwrap_or_else(|e| panic!("{}: {e}", s.id));
            (s.id, s.group, a.parse)
        })
        .collect()
}

#[test]
fn controls_never_leave_the_canonical_tiers() {
    let all = parses();
    let controls: Vec<_> = all.iter().filter(|(_, g, _)| *g == Group::Control).collect();
    assert_eq!(controls.len(), 10);
    for (id, _, p) in controls {
        assert_eq!(p.rank, 0, "{id}");
        assert!(p.strategies.is_empty(), "{id}");
        assert!(!p.tiers.contains(&Tier::Noncanonical), "{id}");
    }
}

#[test]
fn verse_always_needs_reanalysis() {
    for (id, g, p) in parses() {
        if g == Group::Verse {
            assert!(p.rank > 0, "{id}");
            assert!(p.tiers.contains(&Tier::Noncanonical), "{id}");
        }
    }
}

#[test]
fn rank_is_that_of_the_latest_strategy_used() {
    let lex = Lexicon::bundled();
    let g = Grammar::bundled();
    let parser = Parser::new(&g, &lex);
    let rank_of = |s: Strategy| parser.ranks().iter().find(|(_, x)| *x == s).unwrap().0;
    for (id, _, p) in parses() {
        let ranks: Vec<u32> = p.strategies.iter().map(|s| rank_of(*s)).collect();
        assert!(ranks.windows(2).all(|w| w[0] <= w[1]), "{id}: {:?}", p.strategies);
        assert_eq!(ranks.last().copied().unwrap_or(0), p.rank, "{id}");
    }
}

#[test]
fn expected_strategies() {
    use Strategy::*;
    let want: &[(&str, &[Strategy])] = &[
        ("xii", &[FocusSpecCp]),
        ("x", &[DfIp]),
        ("xi", &[DfIp, ScrambledGenitive]),
        ("iv", &[DfVp, VerbComplex]),
        ("iii", &[SubjExtraposed, DfIp, VerbComplex]),
        ("2a", &[SubjExtraposed]),
        ("4a", &[TopicSpecCp]),
        ("7a", &[Parenthetical]),
    ];
    let all = parses();
    for (id, strategies) in want {
        let (_, _, p) = all.iter().find(|(i, _, _)| i == id).unwrap();
        assert_eq!(&p.strategies, strategies, "{id}");
    }
}

#[test]
fn canonical_tier_alone_rejects_fronted_object() {
    let lex = Lexicon::bundled();
    let g = Grammar::bundled();
    let p = Parser::new(&g, &lex);
    let toks = lex
        .tag(&lex.tokenize("lei sola forse il freddo sognatore educerebbe al tenero prodigio"))
        .unwrap();
    assert!(p.parse_canonical(&toks).is_err());
    let toks = lex
        .tag(&lex.tokenize("il freddo sognatore educerebbe lei sola forse al tenero prodigio"))
        .unwrap();
    assert!(p.parse_canonical(&toks).is_ok());
}
