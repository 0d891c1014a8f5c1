//! Grading of external parser outputs against gold constituent analyses.

mod grade;
mod report;

use std::collections::BTreeMap;

use thiserror::Error;

pub use grade::{grade, grade_suite, summarize, AlignmentError, Status, Summary, Verdict};
pub use report::{performance_table, PublishedCell, TableRow, VERSE_REFERENCE, WRITTEN_REFERENCE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct FixtureFormatError {
    pub line: usize,
    pub msg: String,
}

/// Span prefix of an unexpressed subject in a gold analysis.
pub const PRO_PREFIX: &str = "pro:";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldConstituent {
    pub span: String,
    pub label: String,
    pub head: String,
}

impl GoldConstituent {
    pub fn is_unexpressed(&self) -> bool {
        self.span.starts_with(PRO_PREFIX)
    }

    pub fn is_subject(&self) -> bool {
        self.label.split(':').any(|p| p.eq_ignore_ascii_case("subj"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldAnalysis {
    pub sentence_id: String,
    pub constituents: Vec<GoldConstituent>,
}

/// One parser claim about a constituent; `None` agrees with the gold value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub span: String,
    pub label: Option<String>,
    pub head: Option<String>,
    /// Table cell as printed.
    pub cell: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParserOutputFixture {
    pub parser: String,
    pub sentences: BTreeMap<String, Vec<Claim>>,
}

/// Non-comment lines split on tabs, with their 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i + 1, l.split('\t').collect()))
}

fn field(v: &str, line: usize, name: &str) -> Result<String, FixtureFormatError> {
    let v = v.trim();
    if v.is_empty() {
        return Err(FixtureFormatError {
            line,
            msg: format!("empty {name}"),
        });
    }
    Ok(v.to_string())
}

/// Reads `sent_id TAB span TAB label TAB head` lines, grouped by sentence
/// in order of first appearance.
pub fn parse_gold(text: &str) -> Result<Vec<GoldAnalysis>, FixtureFormatError> {
    let mut out: Vec<GoldAnalysis> = Vec::new();
    for (line, cols) in records(text) {
        let [sid, span, label, head] = cols[..] else {
            return Err(FixtureFormatError {
                line,
                msg: format!("expected 4 tab-separated fields, found {}", cols.len()),
            });
        };
        let sid = field(sid, line, "sentence id")?;
        let c = GoldConstituent {
            span: field(span, line, "span")?,
            label: field(label, line, "label")?,
            head: field(head, line, "head")?,
        };
        match out.last_mut() {
            Some(g) if g.sentence_id == sid => {
                if g.constituents.iter().any(|k| k.span == c.span) {
                    return Err(FixtureFormatError {
                        line,
                        msg: format!("duplicate span {:?}", c.span),
                    });
                }
                g.constituents.push(c)
            }
            _ => {
                if out.iter().any(|g| g.sentence_id == sid) {
                    return Err(FixtureFormatError {
                        line,
                        msg: format!("sentence {sid} is not contiguous"),
                    });
                }
                out.push(GoldAnalysis {
                    sentence_id: sid,
                    constituents: vec![c],
                })
            }
        }
    }
    Ok(out)
}

impl ParserOutputFixture {
    /// Reads `sent_id TAB span TAB label TAB head [TAB cell]` lines, where
    /// `=` in the label or head column agrees with the gold analysis.
    pub fn parse(parser: &str, text: &str) -> Result<ParserOutputFixture, FixtureFormatError> {
        let mut sentences: BTreeMap<String, Vec<Claim>> = BTreeMap::new();
        for (line, cols) in records(text) {
            if !(4..=5).contains(&cols.len()) {
                return Err(FixtureFormatError {
                    line,
                    msg: format!("expected 4 or 5 tab-separated fields, found {}", cols.len()),
                });
            }
            let opt = |v: String| (v != "=").then_some(v);
            let claim = Claim {
                span: field(cols[1], line, "span")?,
                label: opt(field(cols[2], line, "label")?),
                head: opt(field(cols[3], line, "head")?),
                cell: cols.get(4).map_or("", |c| c.trim()).to_string(),
            };
            let list = sentences.entry(field(cols[0], line, "sentence id")?).or_default();
            if list.iter().any(|c| c.span == claim.span) {
                return Err(FixtureFormatError {
                    line,
                    msg: format!("duplicate span {:?}", claim.span),
                });
            }
            list.push(claim);
        }
        Ok(ParserOutputFixture {
            parser: parser.to_string(),
            sentences,
        })
    }
}
