//! Discourse binding over every bundled sentence.

mod common;

use verso::discourse::{insert_little_pro, pronoun_links, resolve_control};
use verso::pipeline::Interpretation;

fn interpretations() -> Vec<(String, Interpretation)> {
    common::analyse_suite()
        .into_iter()
        .map(|(s, a)| (s.id, a.interpretation))
        .collect()
}

#[test]
fn every_focus_and_topic_is_bound() {
    for (id, i) in interpretations() {
        assert_eq!(common::unbound_fillers(&i), Vec::<String>::new(), "{id}");
    }
}

#[test]
fn little_pro_and_control_are_idempotent() {
    for (id, i) in interpretations() {
        let f = &i.fstructure;
        assert_eq!(&insert_little_pro(f), f, "{id}");
        assert_eq!(&resolve_control(f).unwrap(), f, "{id}");
    }
}

#[test]
fn every_pronoun_has_an_antecedent() {
    for (id, i) in interpretations() {
        for (ix, ante) in pronoun_links(&i.fstructure) {
            assert!(!ante.is_empty(), "{id}: {ix}");
        }
    }
}

#[test]
fn conversare_is_controlled_by_the_young_soul() {
    let (_, i) = interpretations().into_iter().find(|(id, _)| id == "iii").unwrap();
    let rel = i
        .fstructure
        .at("obl.ogg")
        .unwrap()
        .set_items("mods")
        .iter()
        .find(|m| m.has("vcomp"))
        .unwrap();
    let subject = rel.fs("sogg").unwrap();
    assert_eq!(subject.lemma(), Some("anima"));
    let vcomp = rel.fs("vcomp").unwrap();
    assert_eq!(vcomp.lemma(), Some("conversare"));
    let pro = vcomp.fs("sogg").unwrap();
    assert_eq!(pro.atom("controllore"), subject.index.as_deref());
    assert_eq!(pro.atom("antecedente"), subject.index.as_deref());
}
