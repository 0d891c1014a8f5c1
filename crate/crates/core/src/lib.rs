pub mod cli;
pub mod cstruct;
pub mod discourse;
pub mod evalharness;
pub mod focus;
pub mod fstruct;
pub mod grammar;
pub mod lexicon;
pub mod metrics;
pub mod parser;
pub mod pipeline;
pub mod semantics;
pub mod suite;
