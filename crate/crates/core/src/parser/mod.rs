//! Deterministic c-structure parser with ranked, failure-driven reanalysis.
//!
//! The canonical tier is tried first. When it faults, or when the caller's
//! acceptance check rejects every canonical tree, strategies are enabled one
//! rank at a time (cumulatively) and only trees that use the newly enabled
//! strategy are offered again.

mod chunk;
mod clause;
mod complex;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cstruct::CNode;
use crate::grammar::{Grammar, Rule, Tier};
use crate::lexicon::{LexicalEntry, Lexicon};

pub use complex::reconstruct_verb_complex;

/// Maximum number of tokens the parser may inspect ahead of the cursor.
pub const LOOKAHEAD: usize = 3;

/// Reanalysis strategies, keyed by rule id in the grammar file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    SubjVpInternal,
    SubjExtraposed,
    FocusSpecCp,
    TopicSpecCp,
    DfIp,
    DfVp,
    ScrambledGenitive,
    VerbComplex,
    Fragment,
    Parenthetical,
}

impl Strategy {
    pub const ALL: [Strategy; 10] = [
        Strategy::SubjVpInternal,
        Strategy::SubjExtraposed,
        Strategy::FocusSpecCp,
        Strategy::TopicSpecCp,
        Strategy::DfIp,
        Strategy::DfVp,
        Strategy::ScrambledGenitive,
        Strategy::VerbComplex,
        Strategy::Fragment,
        Strategy::Parenthetical,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Strategy::SubjVpInternal => "subj_vp_internal",
            Strategy::SubjExtraposed => "subj_extraposed",
            Strategy::FocusSpecCp => "focus_spec_cp",
            Strategy::TopicSpecCp => "topic_spec_cp",
            Strategy::DfIp => "df_ip",
            Strategy::DfVp => "df_vp",
            Strategy::ScrambledGenitive => "scrambled_genitive",
            Strategy::VerbComplex => "verb_complex",
            Strategy::Fragment => "fragment",
            Strategy::Parenthetical => "parenthetical",
        }
    }

    pub fn from_id(id: &str) -> Option<Strategy> {
        Strategy::ALL.iter().copied().find(|s| s.id() == id)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// First point where a parse attempt could not continue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fault {
    pub position: usize,
    pub expected: String,
}

impl Fault {
    pub fn new(position: usize, expected: impl Into<String>) -> Fault {
        Fault {
            position,
            expected: expected.into(),
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at token {}: expected {}", self.position, self.expected)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("no parse (canonical fault {fault}{})", .rejected.as_ref().map(|r| format!("; last rejection: {r}")).unwrap_or_default())]
    NoParse { fault: Fault, rejected: Option<String> },
    #[error("no auxiliary or modal host for the verb form at token {position}")]
    NoHost { position: usize },
}

/// An accepted analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct Parse {
    pub tree: CNode,
    /// Strategies the accepted tree uses, in rank order.
    pub strategies: Vec<Strategy>,
    pub tiers: BTreeSet<Tier>,
    /// Rank at which the tree was accepted; 0 for canonical.
    pub rank: u32,
    /// Candidate trees offered to the acceptance check.
    pub attempts: usize,
    /// Peak number of constituents held before their clause's verb.
    pub stm_peak: usize,
}

impl Parse {
    pub fn is_canonical(&self) -> bool {
        self.rank == 0
    }
}

/// A tree together with the strategies used to build it.
#[derive(Debug, Clone)]
pub(crate) struct Cand {
    pub tree: CNode,
    pub used: BTreeSet<Strategy>,
}

fn share(toks: &[LexicalEntry]) -> Vec<Arc<LexicalEntry>> {
    toks.iter().cloned().map(Arc::new).collect()
}

pub struct Parser<'a> {
    grammar: &'a Grammar,
    lexicon: &'a Lexicon,
    ranks: Vec<(u32, Strategy)>,
}

impl<'a> Parser<'a> {
    pub fn new(grammar: &'a Grammar, lexicon: &'a Lexicon) -> Parser<'a> {
        let ranks = grammar
            .strategies()
            .into_iter()
            .filter_map(|(r, id)| Strategy::from_id(&id).map(|s| (r, s)))
            .collect();
        Parser {
            grammar,
            lexicon,
            ranks,
        }
    }

    /// Strategies in the order they are enabled.
    pub fn ranks(&self) -> &[(u32, Strategy)] {
        &self.ranks
    }

    fn rank_of(&self, s: Strategy) -> u32 {
        self.ranks
            .iter()
            .find(|(_, x)| *x == s)
            .map(|(r, _)| *r)
            .unwrap_or(u32::MAX)
    }

    /// Canonical-tier parse with no acceptance check.
    pub fn parse_canonical(&self, toks: &[LexicalEntry]) -> Result<CNode, Fault> {
        let en = BTreeSet::new();
        let cands = self.candidates(&share(toks), &en)?;
        cands
            .into_iter()
            .find(|c| self.licensed(&c.tree, &en, toks.len()))
            .map(|c| c.tree)
            .ok_or_else(|| Fault::new(toks.len(), "licensed tree"))
    }

    /// Parses with every strategy available and no acceptance check.
    pub fn parse(&self, toks: &[LexicalEntry]) -> Result<Parse, ParseError> {
        self.parse_with(toks, &mut |_| Ok(()))
    }

    /// Parses, offering each licensed candidate to `accept`; a rejection
    /// moves on to the next candidate and eventually to the next rank.
    pub fn parse_with(
        &self,
        toks: &[LexicalEntry],
        accept: &mut dyn FnMut(&CNode) -> Result<(), String>,
    ) -> Result<Parse, ParseError> {
        if toks.is_empty() {
            return Err(ParseError::Empty);
        }
        let mut stages: Vec<(u32, BTreeSet<Strategy>)> = vec![(0, BTreeSet::new())];
        let mut en = BTreeSet::new();
        for &(r, s) in &self.ranks {
            en.insert(s);
            stages.push((r, en.clone()));
        }
        let shared = share(toks);
        let mut first_fault = None;
        let mut rejected = None;
        let mut attempts = 0;
        let mut stm_peak = 0;
        for (rank, en) in &stages {
            let cands = match self.candidates_stm(&shared, en, &mut stm_peak) {
                Ok(c) => c,
                Err(f) => {
                    first_fault.get_or_insert(f);
                    continue;
                }
            };
            for c in cands {
                let top = c.used.iter().map(|s| self.rank_of(*s)).max().unwrap_or(0);
                if top != *rank {
                    continue;
                }
                if !self.licensed(&c.tree, en, toks.len()) {
                    continue;
                }
                attempts += 1;
                match accept(&c.tree) {
                    Ok(()) => {
                        let lic = self
                            .grammar
                            .validate(&c.tree, &|r| self.rule_enabled(r, en))
                            .expect("licensed above");
                        let mut strategies: Vec<Strategy> = c.used.iter().copied().collect();
                        strategies.sort_by_key(|s| self.rank_of(*s));
                        return Ok(Parse {
                            tree: c.tree,
                            strategies,
                            tiers: lic.tiers,
                            rank: *rank,
                            attempts,
                            stm_peak,
                        });
                    }
                    Err(why) => rejected = Some(why),
                }
            }
            if *rank == 0 && first_fault.is_none() {
                first_fault = Some(Fault::new(toks.len(), "acceptable canonical analysis"));
            }
        }
        Err(ParseError::NoParse {
            fault: first_fault.unwrap_or_else(|| Fault::new(0, "analysis")),
            rejected,
        })
    }

    fn rule_enabled(&self, r: &Rule, en: &BTreeSet<Strategy>) -> bool {
        r.tier != Tier::Noncanonical
            || r.id
                .as_deref()
                .and_then(Strategy::from_id)
                .is_some_and(|s| en.contains(&s))
    }

    fn licensed(&self, tree: &CNode, en: &BTreeSet<Strategy>, n: usize) -> bool {
        tree.check_partition(n).is_ok() && self.grammar.validate(tree, &|r| self.rule_enabled(r, en)).is_ok()
    }

    pub(crate) fn candidates(&self, toks: &[Arc<LexicalEntry>], en: &BTreeSet<Strategy>) -> Result<Vec<Cand>, Fault> {
        let mut stm = 0;
        self.candidates_stm(toks, en, &mut stm)
    }

    fn candidates_stm(
        &self,
        toks: &[Arc<LexicalEntry>],
        en: &BTreeSet<Strategy>,
        stm: &mut usize,
    ) -> Result<Vec<Cand>, Fault> {
        let ctx = chunk::Ctx {
            toks,
            en,
            lexicon: self.lexicon,
            grammar: self.grammar,
            enabled: &|r| self.rule_enabled(r, en),
            stm: std::cell::Cell::new(0),
        };
        let (units, fault) = ctx.units(0, toks.len());
        if let Some(f) = fault {
            return Err(f);
        }
        let out = ctx.clause(&units, toks.len());
        *stm = (*stm).max(ctx.stm.get());
        out
    }
}
