//! Timing, configurations, referential cost, treebank statistics and
//! projectivity.

mod config;
mod corpus;
mod projectivity;
mod refcost;
mod timing;

pub use config::{basic_configuration, ConfigString, Sym};
pub use corpus::{
    corpus_stats, treebank_comparison, treebank_report, ComparisonRow, CorpusStats, FormatError, NcsLabel, Ratio,
};
pub use projectivity::{dependencies, projectivity_check, Arc, Projectivity};
pub use refcost::{referential_cost, RefCost};
pub use timing::{time_pipeline, time_repeated, TimingError, TimingReport, STM_LIMIT};
