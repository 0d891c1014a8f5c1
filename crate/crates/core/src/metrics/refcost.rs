//! Processing cost of referring expressions.

use crate::fstruct::FStructure;

/// Ordered from cheapest to heaviest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RefCost {
    /// First and second person pronouns.
    Deictic,
    ProperNoun,
    /// Full nominals and third person pronouns.
    Definite,
}

/// Rank of a nominal f-structure on the referring-expression hierarchy.
pub fn referential_cost(x: &FStructure) -> RefCost {
    let pronominal = x.atom("tab_ref").is_some_and(|t| t.contains("+pro"));
    if pronominal {
        return match x.atom("pers") {
            Some("1" | "2") => RefCost::Deictic,
            _ => RefCost::Definite,
        };
    }
    if x.has("_propn") {
        RefCost::ProperNoun
    } else {
        RefCost::Definite
    }
}
