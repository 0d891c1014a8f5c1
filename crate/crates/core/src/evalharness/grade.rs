use std::fmt;

use thiserror::Error;

use super::{Claim, GoldAnalysis, GoldConstituent, ParserOutputFixture};
use crate::metrics::Ratio;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("sentence {sentence}: no output region for gold constituent {span:?}")]
pub struct AlignmentError {
    pub sentence: String,
    pub span: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Correct,
    WrongLabel { found: String },
    WrongHead { found: String },
    Both { found_label: String, found_head: String },
}

impl Status {
    fn weight(&self) -> u8 {
        match self {
            Status::Correct => 0,
            Status::WrongLabel { .. } | Status::WrongHead { .. } => 1,
            Status::Both { .. } => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Correct => f.write_str("correct"),
            Status::WrongLabel { found } => write!(f, "wrong_label({found})"),
            Status::WrongHead { found } => write!(f, "wrong_head({found})"),
            Status::Both {
                found_label,
                found_head,
            } => write!(f, "both({found_label}, {found_head})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub sentence: String,
    pub span: String,
    pub status: Status,
    /// The sentence output lacks a subject and this constituent carries the error.
    pub missing_subject: bool,
}

impl Verdict {
    pub fn error_weight(&self) -> u8 {
        (self.status.weight() + u8::from(self.missing_subject)).min(2)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.sentence, self.span, self.status)?;
        if self.missing_subject {
            f.write_str(" +no-subject")?;
        }
        write!(f, "\t{}", self.error_weight())
    }
}

fn lower_without_marks(cell: &str) -> String {
    cell.to_lowercase().replace("subj-no", "").replace("nosubj", "")
}

fn marks_missing_subject(cell: &str) -> bool {
    let l = cell.to_lowercase();
    l.contains("subj-no") || l.contains("nosubj")
}

/// Whether a cell names a relation label, as opposed to only a head.
fn names_label(cell: &str) -> bool {
    lower_without_marks(cell).split('*').any(|seg| {
        seg.split('/')
            .next()
            .is_some_and(|l| l.chars().any(char::is_alphabetic))
    })
}

fn claims_subject(claim: &Claim, gold: &GoldConstituent) -> bool {
    if claim.cell.is_empty() {
        return match &claim.label {
            Some(l) => l.to_lowercase().contains("subj"),
            None => gold.is_subject(),
        };
    }
    lower_without_marks(&claim.cell).contains("subj") || (!names_label(&claim.cell) && gold.is_subject())
}

fn status(claim: &Claim) -> Status {
    match (&claim.label, &claim.head) {
        (None, None) => Status::Correct,
        (Some(l), None) => Status::WrongLabel { found: l.clone() },
        (None, Some(h)) => Status::WrongHead { found: h.clone() },
        (Some(l), Some(h)) => Status::Both {
            found_label: l.clone(),
            found_head: h.clone(),
        },
    }
}

/// One verdict per gold constituent of the sentence.
pub fn grade(gold: &GoldAnalysis, output: &ParserOutputFixture) -> Result<Vec<Verdict>, AlignmentError> {
    let sid = &gold.sentence_id;
    let claims = output.sentences.get(sid).map(Vec::as_slice).unwrap_or_default();
    let mut pairs = Vec::new();
    for c in gold.constituents.iter().filter(|c| !c.is_unexpressed()) {
        let claim = claims.iter().find(|k| k.span == c.span).ok_or_else(|| AlignmentError {
            sentence: sid.clone(),
            span: c.span.clone(),
        })?;
        pairs.push((c, claim));
    }
    let has_subject = pairs.iter().any(|(g, k)| claims_subject(k, g));
    Ok(gold
        .constituents
        .iter()
        .map(|c| {
            let (status, missing_subject) = match pairs.iter().find(|(g, _)| std::ptr::eq(*g, c)) {
                None => (Status::Correct, !has_subject),
                Some((_, k)) => (
                    status(k),
                    marks_missing_subject(&k.cell) || (c.is_subject() && !has_subject && k.label.is_none()),
                ),
            };
            Verdict {
                sentence: sid.clone(),
                span: c.span.clone(),
                status,
                missing_subject,
            }
        })
        .collect())
}

pub fn grade_suite(gold: &[GoldAnalysis], output: &ParserOutputFixture) -> Result<Vec<Verdict>, AlignmentError> {
    let mut out = Vec::new();
    for g in gold {
        out.extend(grade(g, output)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub constituents: u64,
    pub errors: u64,
}

impl Summary {
    /// Share of the constituents not offset by errors, floored at zero.
    pub fn pct_correct(&self) -> Ratio {
        Ratio {
            num: self.constituents.saturating_sub(self.errors),
            den: self.constituents,
        }
    }
}

pub fn summarize(verdicts: &[Verdict]) -> Summary {
    Summary {
        constituents: verdicts.len() as u64,
        errors: verdicts.iter().map(|v| u64::from(v.error_weight())).sum(),
    }
}
