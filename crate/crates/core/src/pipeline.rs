//! Tagging, parsing and interpretation of one sentence.

use thiserror::Error;

use crate::cstruct::CNode;
use crate::discourse::{bind_discourse_functions, insert_little_pro, resolve_control, Binding, DiscourseError};
use crate::fstruct::{build_fstructure, check_wellformedness, BuildError, FStructure, WellformednessReport};
use crate::lexicon::{LexicalEntry, Lexicon, LexiconError};
use crate::parser::{Parse, ParseError, Parser};

#[derive(Debug, Clone, PartialEq)]
pub struct Interpretation {
    pub fstructure: FStructure,
    pub bindings: Vec<Binding>,
    pub report: WellformednessReport,
}

#[derive(Debug, Error)]
pub enum InterpretError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Discourse(#[from] DiscourseError),
    #[error("ill-formed: {0}")]
    IllFormed(WellformednessReport),
}

/// Builds the f-structure of a tree, binds its discourse functions, adds
/// null subjects and checks well-formedness.
pub fn interpret(tree: &CNode) -> Result<Interpretation, InterpretError> {
    let f = build_fstructure(tree)?;
    let (f, bindings) = bind_discourse_functions(&f)?;
    let f = insert_little_pro(&f);
    let f = resolve_control(&f)?;
    let report = check_wellformedness(&f);
    if !report.is_ok() {
        return Err(InterpretError::IllFormed(report));
    }
    Ok(Interpretation {
        fstructure: f,
        bindings,
        report,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub tokens: Vec<LexicalEntry>,
    pub parse: Parse,
    pub interpretation: Interpretation,
}

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Tags and parses `text`, accepting the first tree that interprets.
pub fn analyse(parser: &Parser, lexicon: &Lexicon, text: &str) -> Result<Analysis, AnalysisError> {
    let tokens = lexicon.tag(&lexicon.tokenize(text))?;
    analyse_tokens(parser, tokens)
}

pub fn analyse_tokens(parser: &Parser, tokens: Vec<LexicalEntry>) -> Result<Analysis, AnalysisError> {
    let mut last = None;
    let parse = parser.parse_with(&tokens, &mut |t| match interpret(t) {
        Ok(i) => {
            last = Some(i);
            Ok(())
        }
        Err(e) => Err(e.to_string()),
    })?;
    let interpretation = match last {
        Some(i) => i,
        None => interpret(&parse.tree).map_err(|e| ParseError::NoParse {
            fault: crate::parser::Fault::new(0, "interpretable tree"),
            rejected: Some(e.to_string()),
        })?,
    };
    Ok(Analysis {
        tokens,
        parse,
        interpretation,
    })
}
