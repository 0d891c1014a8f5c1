//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 no parse, 3 unknown
//! token, 4 malformed input file, 5 interpretation or model failure.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser as ClapParser, Subcommand, ValueEnum};

use crate::evalharness::{
    grade_suite, parse_gold, performance_table, summarize, ParserOutputFixture, TableRow, VERSE_REFERENCE,
    WRITTEN_REFERENCE,
};
use crate::fstruct::serialize;
use crate::grammar::{Grammar, GrammarError, Tier};
use crate::lexicon::{Lexicon, LexiconError};
use crate::metrics::{
    basic_configuration, corpus_stats, time_repeated, treebank_report, CorpusStats, TimingError, STM_LIMIT,
};
use crate::parser::{ParseError, Parser};
use crate::pipeline::{analyse, Analysis, AnalysisError};
use crate::semantics::{Model, ModelBuilder};
use crate::suite;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_PARSE: i32 = 2;
pub const EXIT_UNKNOWN_TOKEN: i32 = 3;
pub const EXIT_FORMAT: i32 = 4;
pub const EXIT_INTERPRET: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tree,
    Fstruct,
    Model,
    Timing,
    Report,
}

#[derive(Debug, ClapParser)]
#[command(name = "verso", version, about = "LFG analysis of non-canonical Italian sentences")]
pub struct Cli {
    /// Lexicon file replacing the bundled one.
    #[arg(long, global = true)]
    pub lexicon: Option<PathBuf>,
    /// Grammar file replacing the bundled one.
    #[arg(long, global = true)]
    pub grammar: Option<PathBuf>,
    /// Record body for batch mode.
    #[arg(long, global = true, value_enum, default_value_t = Format::Report)]
    pub format: Format,
    /// Timing repetitions averaged per sentence.
    #[arg(long, global = true, default_value_t = 1)]
    pub reps: usize,
    /// Print tiers, strategies and the binding trace.
    #[arg(long, short, global = true)]
    pub verbose: bool,
    /// Pending-constituent limit reported against, or "off".
    #[arg(long = "limit-stm", global = true, default_value = "7", value_parser = parse_limit)]
    pub limit_stm: StmLimit,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StmLimit(pub Option<usize>);

fn parse_limit(s: &str) -> Result<StmLimit, String> {
    if s.eq_ignore_ascii_case("off") {
        return Ok(StmLimit(None));
    }
    s.parse()
        .map(|n| StmLimit(Some(n)))
        .map_err(|_| format!("expected a number or \"off\", got {s:?}"))
}

impl Default for StmLimit {
    fn default() -> Self {
        StmLimit(Some(STM_LIMIT))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the c-structure tree.
    Parse { sentence: String },
    /// Print the f-structure.
    Fstruct { sentence: String },
    /// Print the discourse model.
    Model { sentence: String },
    /// Print per-stage computing time.
    Time { sentence: String },
    /// Noncanonical-structure statistics of a count file or bracketed corpus.
    Stats { path: PathBuf },
    /// Grade parser output fixtures against a gold analysis.
    Grade {
        gold: PathBuf,
        #[arg(required = true)]
        fixtures: Vec<PathBuf>,
    },
    /// Analyse one sentence per line ("id TAB text" and suite lines also
    /// accepted); without a path, the bundled suite.
    Batch {
        path: Option<PathBuf>,
        /// Only bundled-suite sentences of this group.
        #[arg(long)]
        group: Option<String>,
    },
}

/// An error together with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

fn fail(code: i32, msg: impl ToString) -> Failure {
    Failure {
        code,
        msg: msg.to_string(),
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Failure {
        let code = match &e {
            AnalysisError::Lexicon(LexiconError::UnknownToken { .. }) => EXIT_UNKNOWN_TOKEN,
            AnalysisError::Lexicon(LexiconError::Format { .. }) => EXIT_FORMAT,
            AnalysisError::Parse(ParseError::Empty) => EXIT_USAGE,
            AnalysisError::Parse(_) => EXIT_NO_PARSE,
        };
        fail(code, e)
    }
}

impl From<TimingError> for Failure {
    fn from(e: TimingError) -> Failure {
        match e {
            TimingError::Analysis(a) => a.into(),
            other => fail(EXIT_INTERPRET, other),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load(cli: &Cli) -> Result<(Lexicon, Grammar), Failure> {
    let lex = match &cli.lexicon {
        None => Lexicon::bundled(),
        Some(p) => Lexicon::parse(&read(p)?).map_err(|e| fail(EXIT_FORMAT, format!("{}: {e}", p.display())))?,
    };
    let g = match &cli.grammar {
        None => Grammar::bundled(),
        Some(p) => Grammar::parse(&read(p)?).map_err(|e| {
            let code = if matches!(e, GrammarError::Format { .. }) {
                EXIT_FORMAT
            } else {
                EXIT_USAGE
            };
            fail(code, format!("{}: {e}", p.display()))
        })?,
    };
    Ok((lex, g))
}

fn sentence_arg(s: &str) -> Result<&str, Failure> {
    let s = s.trim();
    if s.is_empty() {
        return Err(fail(EXIT_USAGE, "empty sentence"));
    }
    Ok(s)
}

/// `tier=` is canonical unless a noncanonical rule or strategy fired.
fn trace(cli: &Cli, a: &Analysis) -> String {
    let mut s = String::new();
    let tier = if a.parse.rank > 0 || a.parse.tiers.contains(&Tier::Noncanonical) {
        Tier::Noncanonical
    } else {
        Tier::Canonical
    };
    let fired: Vec<&str> = a.parse.tiers.iter().map(|t| t.as_str()).collect();
    let strategies: Vec<String> = a.parse.strategies.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(
        s,
        "tier={tier} rank={} tiers_fired={} strategies={}",
        a.parse.rank,
        fired.join(","),
        if strategies.is_empty() {
            "-".into()
        } else {
            strategies.join(",")
        }
    );
    let _ = writeln!(s, "{}", stm_line(cli, a.parse.stm_peak));
    for b in &a.interpretation.bindings {
        let _ = writeln!(s, "binding: {b}");
    }
    s
}

fn stm_line(cli: &Cli, peak: usize) -> String {
    match cli.limit_stm.0 {
        None => format!("stm_peak={peak} limit=off"),
        Some(l) if peak > l => format!("stm_peak={peak} limit={l} exceeded"),
        Some(l) => format!("stm_peak={peak} limit={l}"),
    }
}

fn model_of(a: &Analysis) -> Result<Model, Failure> {
    let m = ModelBuilder::new()
        .build(&a.interpretation.fstructure)
        .map_err(|e| fail(EXIT_INTERPRET, e))?;
    m.check_indices().map_err(|e| fail(EXIT_INTERPRET, e))?;
    Ok(m)
}

fn render(cli: &Cli, parser: &Parser, lex: &Lexicon, text: &str, format: Format) -> Result<String, Failure> {
    if format == Format::Timing {
        let r = time_repeated(parser, lex, text, cli.reps)?;
        let mut s = r.to_string();
        s.push_str(&stm_line(cli, r.stm_peak));
        s.push('\n');
        return Ok(s);
    }
    let a = analyse(parser, lex, text)?;
    let mut s = match format {
        Format::Tree => format!("{}\n", a.parse.tree),
        Format::Fstruct => serialize(&a.interpretation.fstructure),
        Format::Model => model_of(&a)?.to_string(),
        Format::Report => {
            let m = model_of(&a)?;
            format!(
                "tokens={} rank={} config={}{} infons={}\n",
                a.tokens.len(),
                a.parse.rank,
                basic_configuration(&a.parse.tree),
                if basic_configuration(&a.parse.tree).fragment {
                    " (fragment)"
                } else {
                    ""
                },
                m.infons.len()
            )
        }
        Format::Timing => unreachable!(),
    };
    if cli.verbose {
        s.push_str(&trace(cli, &a));
    }
    Ok(s)
}

fn stats(path: &Path) -> Result<String, Failure> {
    let text = read(path)?;
    let bracketed = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with('('));
    let s = if bracketed {
        corpus_stats(&text)
    } else {
        CorpusStats::from_counts(&text)
    }
    .map_err(|e| fail(EXIT_FORMAT, format!("{}: {e}", path.display())))?;
    Ok(format!("{s}\n{}", treebank_report()))
}

fn parser_name(path: &Path) -> String {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("parser");
    stem.strip_prefix("fixtures_").unwrap_or(stem).to_uppercase()
}

fn grade_cmd(cli: &Cli, gold: &Path, fixtures: &[PathBuf]) -> Result<String, Failure> {
    let fmt_err = |p: &Path, e: &dyn std::fmt::Display| fail(EXIT_FORMAT, format!("{}: {e}", p.display()));
    let g = parse_gold(&read(gold)?).map_err(|e| fmt_err(gold, &e))?;
    let stem = gold.file_stem().and_then(|s| s.to_str()).unwrap_or("");
    let (title, table): (&str, &[_]) = if stem.contains("verse") {
        ("Performance on noncanonical verse", &VERSE_REFERENCE)
    } else if stem.contains("written") {
        ("Performance on noncanonical written text", &WRITTEN_REFERENCE)
    } else {
        ("Performance", &[])
    };
    let mut out = String::new();
    let mut rows = Vec::new();
    for f in fixtures {
        let name = parser_name(f);
        let fx = ParserOutputFixture::parse(&name, &read(f)?).map_err(|e| fmt_err(f, &e))?;
        let v = grade_suite(&g, &fx).map_err(|e| fail(EXIT_FORMAT, format!("{}: {e}", f.display())))?;
        if cli.verbose {
            for x in &v {
                let _ = writeln!(out, "{name}\t{x}");
            }
        }
        rows.push(TableRow::new(&name, summarize(&v), table));
    }
    out.push_str(&performance_table(title, &rows));
    Ok(out)
}

struct Item {
    id: String,
    text: String,
}

fn batch_items(path: Option<&Path>, group: Option<&str>) -> Result<Vec<Item>, Failure> {
    let Some(p) = path else {
        let g = group.map(str::to_lowercase);
        return Ok(suite::bundled()
            .into_iter()
            .filter(|s| g.as_deref().is_none_or(|g| s.group.as_str() == g))
            .map(|s| Item { id: s.id, text: s.text })
            .collect());
    };
    let text = if p.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| fail(EXIT_USAGE, e))?;
        s
    } else {
        read(p)?
    };
    Ok(text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            let cols: Vec<&str> = l.split('\t').collect();
            let (id, text) = match cols[..] {
                [id, _, text] | [id, text] => (id.to_string(), text),
                _ => ((i + 1).to_string(), l),
            };
            Item {
                id,
                text: text.trim().to_string(),
            }
        })
        .collect())
}

fn batch(cli: &Cli, parser: &Parser, lex: &Lexicon, items: &[Item]) -> String {
    let start = Instant::now();
    let mut out = String::new();
    let mut defects = 0;
    for it in items {
        let _ = writeln!(out, "=== {}\t{}", it.id, it.text);
        match render(cli, parser, lex, &it.text, cli.format) {
            Ok(s) => out.push_str(&s),
            Err(f) => {
                defects += 1;
                let _ = writeln!(out, "defect (exit {}): {}", f.code, f.msg);
            }
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "sentences={} completed={} defects={} elapsed={:.3}s",
        items.len(),
        items.len() - defects,
        defects,
        start.elapsed().as_secs_f64()
    );
    out
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Stats { path } => return stats(path),
        Command::Grade { gold, fixtures } => return grade_cmd(cli, gold, fixtures),
        _ => {}
    }
    let (lex, g) = load(cli)?;
    let parser = Parser::new(&g, &lex);
    match &cli.command {
        Command::Parse { sentence } => render(cli, &parser, &lex, sentence_arg(sentence)?, Format::Tree),
        Command::Fstruct { sentence } => render(cli, &parser, &lex, sentence_arg(sentence)?, Format::Fstruct),
        Command::Model { sentence } => render(cli, &parser, &lex, sentence_arg(sentence)?, Format::Model),
        Command::Time { sentence } => render(cli, &parser, &lex, sentence_arg(sentence)?, Format::Timing),
        Command::Batch { path, group } => {
            let items = batch_items(path.as_deref(), group.as_deref())?;
            Ok(batch(cli, &parser, &lex, &items))
        }
        Command::Stats { .. } | Command::Grade { .. } => unreachable!(),
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}
