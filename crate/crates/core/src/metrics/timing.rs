//! Per-stage computing time of the pipeline.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use super::{basic_configuration, ConfigString};
use crate::discourse::pronoun_links;
use crate::grammar::Tier;
use crate::lexicon::Lexicon;
use crate::parser::Parser;
use crate::pipeline::{analyse, AnalysisError};
use crate::semantics::{ModelBuilder, SemanticsError};

/// Default number of pending constituents above which a sentence is flagged.
pub const STM_LIMIT: usize = 7;

#[derive(Debug, Clone, PartialEq)]
pub struct TimingReport {
    /// Tagging, parsing and f-structure mapping, in seconds.
    pub cic1: f64,
    /// Quantifier raising and pronominal binding.
    pub cic2: f64,
    /// Discourse model construction.
    pub cic3: f64,
    pub total: f64,
    pub tokens: usize,
    pub config: ConfigString,
    pub tiers_fired: BTreeSet<Tier>,
    pub rank: u32,
    pub stm_peak: usize,
}

impl TimingReport {
    pub fn exceeds_stm(&self, limit: Option<usize>) -> bool {
        limit.is_some_and(|l| self.stm_peak > l)
    }
}

impl fmt::Display for TimingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Elapsed time CIC1: {:.5}", self.cic1)?;
        writeln!(f, "Elapsed time CIC2: {:.5}", self.cic2)?;
        writeln!(f, "Elapsed time CIC3: {:.5}", self.cic3)?;
        writeln!(f, "Total: {:.5}", self.total)?;
        let tiers: Vec<&str> = self.tiers_fired.iter().map(|t| t.as_str()).collect();
        writeln!(
            f,
            "Tokens: {}  Config: {}{}  Tiers: {}",
            self.tokens,
            self.config,
            if self.config.fragment { " (fragment)" } else { "" },
            tiers.join(",")
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum TimingError {
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error("model index check failed: {0}")]
    Model(String),
}

/// Runs the whole pipeline once, timing its three segments.
pub fn time_pipeline(parser: &Parser, lexicon: &Lexicon, sentence: &str) -> Result<TimingReport, TimingError> {
    let t0 = Instant::now();
    let a = analyse(parser, lexicon, sentence)?;
    let t1 = Instant::now();
    let links = pronoun_links(&a.interpretation.fstructure);
    std::hint::black_box(&links);
    let t2 = Instant::now();
    let model = ModelBuilder::new().build(&a.interpretation.fstructure)?;
    model.check_indices().map_err(TimingError::Model)?;
    let t3 = Instant::now();
    let cic1 = (t1 - t0).as_secs_f64();
    let cic2 = (t2 - t1).as_secs_f64();
    let cic3 = (t3 - t2).as_secs_f64();
    Ok(TimingReport {
        cic1,
        cic2,
        cic3,
        total: cic1 + cic2 + cic3,
        tokens: a.tokens.len(),
        config: basic_configuration(&a.parse.tree),
        tiers_fired: a.parse.tiers.clone(),
        rank: a.parse.rank,
        stm_peak: a.parse.stm_peak,
    })
}

/// Mean of `reps` runs; the configuration and tiers come from the first.
pub fn time_repeated(
    parser: &Parser,
    lexicon: &Lexicon,
    sentence: &str,
    reps: usize,
) -> Result<TimingReport, TimingError> {
    let mut first = time_pipeline(parser, lexicon, sentence)?;
    let n = reps.max(1);
    let (mut c1, mut c2, mut c3) = (first.cic1, first.cic2, first.cic3);
    for _ in 1..n {
        let r = time_pipeline(parser, lexicon, sentence)?;
        c1 += r.cic1;
        c2 += r.cic2;
        c3 += r.cic3;
    }
    let k = n as f64;
    first.cic1 = c1 / k;
    first.cic2 = c2 / k;
    first.cic3 = c3 / k;
    first.total = first.cic1 + first.cic2 + first.cic3;
    Ok(first)
}
