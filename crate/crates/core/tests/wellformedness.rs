//! Seeded violations of Uniqueness, Coherence and Completeness, each
//! reported at its exact path.

mod common;

use common::{detected, fstructure, mutations};
use verso::fstruct::check_wellformedness;

#[test]
fn unmutated_sentences_are_well_formed() {
    for id in ["xii", "x", "iii"] {
        assert_eq!(check_wellformedness(&fstructure(id)).violations, vec![], "{id}");
    }
}

#[test]
fn each_mutation_is_reported_at_its_path() {
    let ms = mutations();
    assert_eq!(ms.len(), 10);
    for m in &ms {
        assert_eq!(detected(m), m.expected, "{}", m.name);
    }
}

#[test]
fn all_three_principles_are_exercised() {
    let ms = mutations();
    for kind in ["uniqueness@", "coherence@", "completeness@"] {
        assert!(
            ms.iter().filter(|m| m.expected[0].starts_with(kind)).count() >= 2,
            "{kind}"
        );
    }
}
