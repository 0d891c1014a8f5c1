//! Unification laws by exhaustive enumeration over small AVMs, checked
//! against a brute-force oracle on flattened path/value facts.

mod common;

use common::{check_associativity, check_commutativity_against_oracle, check_idempotence, universe};
use verso::fstruct::{unify, FStructure};

#[test]
fn universe_sizes() {
    assert_eq!(universe(&["a"]).len(), 4 * 4 * 8);
    assert_eq!(universe(&["a", "b"]).len(), 4 * 4 * 20);
}

#[test]
fn idempotence_exhaustive() {
    check_idempotence(&universe(&["a", "b"]));
}

#[test]
fn commutativity_and_oracle_exhaustive() {
    check_commutativity_against_oracle(&universe(&["a", "b"]));
}

#[test]
fn associativity_exhaustive() {
    check_associativity(&universe(&["a"]));
}

#[test]
fn empty_structure_is_identity() {
    let e = FStructure::new();
    for x in universe(&["a", "b"]) {
        assert_eq!(unify(&e, &x).unwrap(), x);
        assert_eq!(unify(&x, &e).unwrap(), x);
    }
}
