//! Situation-semantics models built from the bundled sentences.

use std::collections::BTreeSet;

use verso::fstruct::FStructure;
use verso::grammar::Grammar;
use verso::lexicon::Lexicon;
use verso::metrics::{referential_cost, RefCost};
use verso::parser::Parser;
use verso::semantics::{build_model, compare_models, Model};
use verso::suite;

fn fstructures() -> Vec<(String, FStructure)> {
    let lex = Lexicon::bundled();
    let g = Grammar::bundled();
    let p = Parser::new(&g, &lex);
    suite::bundled()
        .into_iter()
        .map(|s| {
            let a = verso::pipeline::analyse(&p, &lex, &s.text).unwrap_or_else(|e| panic!("{}: {e}", s.id));
            (s.id, a.interpretation.fstructure)
        })
        .collect()
}

fn fstructure(id: &str) -> FStructure {
    fstructures().into_iter().find(|(i, _)| i == id).unwrap().1
}

/// Every `idN` token after a colon inside an argument list.
fn arg_ids(line: &str) -> Vec<u32> {
    let Some(open) = line.find('[') else { return Vec::new() };
    let close = line[open..].find(']').unwrap() + open;
    line[open + 1..close]
        .split(',')
        .filter_map(|a| a.split_once(':'))
        .filter_map(|(_, v)| v.strip_prefix("id")?.parse().ok())
        .collect()
}

/// Text-level index discipline: `ind` ids increase, and every argument
/// id is introduced by an `ind`, an event fact or a time location.
fn index_discipline(text: &str) -> Result<(), String> {
    let mut known = BTreeSet::new();
    let mut last = 0;
    for l in text.lines() {
        if let Some(rest) = l.strip_prefix("ind(") {
            let id: u32 = rest.split(",id").nth(1).unwrap().trim_end_matches(')').parse().unwrap();
            if id <= last {
                return Err(format!("{l}: not increasing"));
            }
            last = id;
            known.insert(id);
        } else if let Some(rest) = l.strip_prefix("fact(id") {
            known.insert(rest.split(',').next().unwrap().parse::<u32>().unwrap());
        } else if l.contains(",isa,[arg:id") && l.contains("arg:tloc]") {
            known.extend(arg_ids(l).into_iter().take(1));
        }
    }
    for l in text.lines() {
        for k in arg_ids(l) {
            if !known.contains(&k) {
                return Err(format!("{l}: id{k} not introduced"));
            }
        }
    }
    Ok(())
}

#[test]
fn fronted_object_model_matches_golden_content() {
    let want = Model::parse(include_str!("../data/golden/xii.model")).unwrap();
    let got = build_model(&fstructure("xii")).unwrap();
    let diff = compare_models(&want, &got);
    assert!(diff.is_empty(), "{diff:?}");
    assert_eq!(got.infons.len(), 20);
}

#[test]
fn comparison_detects_a_changed_role() {
    let text = include_str!("../data/golden/xii.model").replace("causer_emot:id2", "causer_emot:id3");
    let want = Model::parse(&text).unwrap();
    let got = build_model(&fstructure("xii")).unwrap();
    let diff = compare_models(&want, &got);
    assert_eq!((diff.missing.len(), diff.extra.len()), (1, 1));
}

#[test]
fn models_round_trip_through_text() {
    for (id, f) in fstructures() {
        let m = build_model(&f).unwrap_or_else(|e| panic!("{id}: {e}"));
        let text = m.to_string();
        assert_eq!(Model::parse(&text).unwrap().to_string(), text, "{id}");
    }
}

#[test]
fn index_discipline_holds_for_every_sentence() {
    for (id, f) in fstructures() {
        let m = build_model(&f).unwrap();
        let text = m.to_string();
        assert_eq!(index_discipline(&text), Ok(()), "{id}\n{text}");
        assert_eq!(m.check_indices(), Ok(()), "{id}");
    }
}

#[test]
fn index_oracle_rejects_dangling_arguments() {
    assert!(index_discipline("ind(infon1,id1)\nfact(infon2,x,[ind:id2],1,univ,univ)").is_err());
    assert!(index_discipline("ind(infon1,id2)\nind(infon2,id1)").is_err());
}

#[test]
fn referential_cost_order() {
    let mut found = Vec::new();
    for (_, f) in fstructures() {
        f.walk(&mut |_, x| {
            if x.has("pred") && x.has("tab_ref") && x.has("pers") {
                found.push((x.lemma().unwrap().to_string(), referential_cost(x)));
            }
        });
    }
    let cost = |lemma: &str| {
        found
            .iter()
            .find(|(l, _)| l == lemma)
            .unwrap_or_else(|| panic!("{lemma}"))
            .1
    };
    assert_eq!(cost("te"), RefCost::Deictic);
    assert_eq!(cost("maria"), RefCost::ProperNoun);
    assert_eq!(cost("sognatore"), RefCost::Definite);
    assert_eq!(cost("lei"), RefCost::Definite);
    assert!(RefCost::Deictic < RefCost::ProperNoun && RefCost::ProperNoun < RefCost::Definite);
}
