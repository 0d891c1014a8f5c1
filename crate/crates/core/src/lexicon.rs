//! Lexical entries, the lexicon file, tokenization and tagging.
//!
//! The lexicon file is UTF-8 text with one record per line:
//!
//! ```text
//! surface TAB lemma TAB pos TAB morph TAB semclass TAB tabref TAB semform [TAB comment]
//! ```
//!
//! Empty fields are written as `-`. The surface field may list alternate
//! spellings separated by `|` (`cor|cuor`); multiword surfaces contain
//! spaces (`di mezzo`). Lines starting with `#` are comments.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LexiconError {
    #[error("lexicon line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("unknown token {token:?} at position {position}")]
    UnknownToken { position: usize, token: String },
}

fn format_err(line: usize, msg: impl Into<String>) -> LexiconError {
    LexiconError::Format { line, msg: msg.into() }
}

/// Part-of-speech tags used by the lexicon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pos {
    Det,
    Poss,
    Noun,
    /// Relational noun; carries a semantic form like a predicate.
    RNoun,
    Propn,
    Pron,
    Clitic,
    Adj,
    Adv,
    Prep,
    ArtPrep,
    Conj,
    Comp,
    RelPron,
    Neg,
    Verb,
    Aux,
    Modal,
    PastPart,
    Inf,
    Gerund,
}

impl Pos {
    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Det => "det",
            Pos::Poss => "poss",
            Pos::Noun => "noun",
            Pos::RNoun => "rnoun",
            Pos::Propn => "propn",
            Pos::Pron => "pron",
            Pos::Clitic => "clitic",
            Pos::Adj => "adj",
            Pos::Adv => "adv",
            Pos::Prep => "prep",
            Pos::ArtPrep => "artprep",
            Pos::Conj => "conj",
            Pos::Comp => "comp",
            Pos::RelPron => "relpron",
            Pos::Neg => "neg",
            Pos::Verb => "verb",
            Pos::Aux => "aux",
            Pos::Modal => "modal",
            Pos::PastPart => "pastpart",
            Pos::Inf => "inf",
            Pos::Gerund => "gerund",
        }
    }

    /// Parts of speech that must carry a semantic form.
    pub fn is_predicative(self) -> bool {
        matches!(self, Pos::Verb | Pos::PastPart | Pos::Inf | Pos::Gerund | Pos::RNoun)
    }

    pub fn is_verbal(self) -> bool {
        matches!(
            self,
            Pos::Verb | Pos::Aux | Pos::Modal | Pos::PastPart | Pos::Inf | Pos::Gerund
        )
    }

    pub fn is_nominal_head(self) -> bool {
        matches!(self, Pos::Noun | Pos::RNoun | Pos::Propn | Pos::Pron)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "det" => Pos::Det,
            "poss" => Pos::Poss,
            "noun" => Pos::Noun,
            "rnoun" => Pos::RNoun,
            "propn" => Pos::Propn,
            "pron" => Pos::Pron,
            "clitic" => Pos::Clitic,
            "adj" => Pos::Adj,
            "adv" => Pos::Adv,
            "prep" => Pos::Prep,
            "artprep" => Pos::ArtPrep,
            "conj" => Pos::Conj,
            "comp" => Pos::Comp,
            "relpron" => Pos::RelPron,
            "neg" => Pos::Neg,
            "verb" => Pos::Verb,
            "aux" => Pos::Aux,
            "modal" => Pos::Modal,
            "pastpart" => Pos::PastPart,
            "inf" => Pos::Inf,
            "gerund" => Pos::Gerund,
            other => return Err(format!("unknown pos {other:?}")),
        })
    }
}

/// Morphological features. Absent features unify with anything.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Morph {
    pub gen: Option<String>,
    pub num: Option<String>,
    pub pers: Option<String>,
    pub tense: Option<String>,
    pub mood: Option<String>,
    pub voice: Option<String>,
    pub case: Option<String>,
    /// Definiteness carried by determiners and articulated prepositions.
    pub def: Option<String>,
}

impl Morph {
    fn slot(&mut self, key: &str) -> Option<&mut Option<String>> {
        Some(match key {
            "gen" => &mut self.gen,
            "num" => &mut self.num,
            "pers" => &mut self.pers,
            "tense" => &mut self.tense,
            "mood" => &mut self.mood,
            "voice" => &mut self.voice,
            "case" => &mut self.case,
            "def" => &mut self.def,
            _ => return None,
        })
    }

    pub fn parse(s: &str) -> Result<Morph, String> {
        let mut m = Morph::default();
        if s == "-" || s.is_empty() {
            return Ok(m);
        }
        for kv in s.split(',') {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| format!("morph feature {kv:?} lacks '='"))?;
            let slot = m.slot(k.trim()).ok_or_else(|| format!("unknown morph feature {k:?}"))?;
            if slot.is_some() {
                return Err(format!("duplicate morph feature {k:?}"));
            }
            *slot = Some(v.trim().to_string());
        }
        Ok(m)
    }

    /// True when gender and number do not conflict. `any` matches everything.
    pub fn agrees_gn(&self, other: &Morph) -> bool {
        compatible(&self.gen, &other.gen) && compatible(&self.num, &other.num)
    }

    /// Subject-verb agreement on person and number.
    pub fn agrees_pn(&self, other: &Morph) -> bool {
        compatible(&self.pers, &other.pers) && compatible(&self.num, &other.num)
    }
}

fn compatible(a: &Option<String>, b: &Option<String>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x == y || x == "any" || y == "any",
        _ => true,
    }
}

/// Fourth referential feature: either `me` (speaker/hearer) or `class`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RefKind {
    Me(bool),
    Class(bool),
}

/// Referential feature vector, always exactly four signed features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TabRef {
    pub referential: bool,
    pub pronominal: bool,
    pub anaphoric: bool,
    pub kind: RefKind,
}

impl TabRef {
    pub const LITTLE_PRO: TabRef = TabRef {
        referential: true,
        pronominal: true,
        anaphoric: false,
        kind: RefKind::Me(false),
    };
    pub const BIG_PRO: TabRef = TabRef {
        referential: true,
        pronominal: true,
        anaphoric: true,
        kind: RefKind::Me(false),
    };
}

fn sign(b: bool) -> char {
    if b {
        '+'
    } else {
        '-'
    }
}

impl fmt::Display for TabRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (plus, name) = match self.kind {
            RefKind::Me(p) => (p, "me"),
            RefKind::Class(p) => (p, "class"),
        };
        write!(
            f,
            "[{}ref,{}pro,{}ana,{}{}]",
            sign(self.referential),
            sign(self.pronominal),
            sign(self.anaphoric),
            sign(plus),
            name
        )
    }
}

impl FromStr for TabRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .unwrap_or(s.trim());
        let feats: Vec<&str> = inner.split(',').map(str::trim).collect();
        if feats.len() != 4 {
            return Err(format!("tabref needs four features, got {}", feats.len()));
        }
        let signed = |f: &str, name: &str| -> Result<bool, String> {
            match f.strip_suffix(name) {
                Some("+") => Ok(true),
                Some("-") => Ok(false),
                _ => Err(format!("expected ±{name}, got {f:?}")),
            }
        };
        let kind = if feats[3].ends_with("me") {
            RefKind::Me(signed(feats[3], "me")?)
        } else {
            RefKind::Class(signed(feats[3], "class")?)
        };
        Ok(TabRef {
            referential: signed(feats[0], "ref")?,
            pronominal: signed(feats[1], "pro")?,
            anaphoric: signed(feats[2], "ana")?,
            kind,
        })
    }
}

/// Grammatical-function slot named by an argument specification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GfSlot {
    Subj1,
    Obj1,
    Obj2,
    Obl,
    Vcomp,
    Ncomp,
}

impl GfSlot {
    pub fn as_str(self) -> &'static str {
        match self {
            GfSlot::Subj1 => "subj1",
            GfSlot::Obj1 => "obj1",
            GfSlot::Obj2 => "obj2",
            GfSlot::Obl => "obl",
            GfSlot::Vcomp => "vcomp",
            GfSlot::Ncomp => "ncomp",
        }
    }

    /// Attribute name this slot occupies in an f-structure.
    pub fn attr(self) -> &'static str {
        match self {
            GfSlot::Subj1 => "sogg",
            GfSlot::Obj1 => "ogg",
            GfSlot::Obj2 => "ogg2",
            GfSlot::Obl => "obl",
            GfSlot::Vcomp => "vcomp",
            GfSlot::Ncomp => "ncomp",
        }
    }

    pub fn from_attr(attr: &str) -> Option<GfSlot> {
        Some(match attr {
            "sogg" => GfSlot::Subj1,
            "ogg" => GfSlot::Obj1,
            "ogg2" => GfSlot::Obj2,
            "obl" => GfSlot::Obl,
            "vcomp" => GfSlot::Vcomp,
            "ncomp" => GfSlot::Ncomp,
            _ => return None,
        })
    }
}

impl fmt::Display for GfSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GfSlot {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "subj1" | "sogg" => GfSlot::Subj1,
            "obj1" | "ogg" => GfSlot::Obj1,
            "obj2" => GfSlot::Obj2,
            "obl" => GfSlot::Obl,
            "vcomp" | "xcomp" => GfSlot::Vcomp,
            "ncomp" => GfSlot::Ncomp,
            other => return Err(format!("unknown grammatical function {other:?}")),
        })
    }
}

/// Functional control equation `subj=<matrix slot>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub controlled: GfSlot,
    pub controller: GfSlot,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArgSpec {
    pub category: String,
    pub gf: GfSlot,
    pub role: String,
    pub restrictions: Vec<String>,
    pub marker: Option<String>,
    pub control: Option<Control>,
}

impl fmt::Display for ArgSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.category, self.gf, self.role)?;
        if let Some(m) = &self.marker {
            write!(f, "/{m}")?;
        }
        match &self.control {
            Some(c) => {
                let controlled = if c.controlled == GfSlot::Subj1 {
                    "subj".to_string()
                } else {
                    c.controlled.to_string()
                };
                write!(f, "/[{}={}]", controlled, c.controller)
            }
            None => write!(f, "/[{}]", self.restrictions.join(",")),
        }
    }
}

impl FromStr for ArgSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let open = s
            .find('[')
            .ok_or_else(|| format!("argument {s:?} lacks a bracketed list"))?;
        let list = s[open..]
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| format!("argument {s:?} has an unterminated list"))?;
        let head: Vec<&str> = s[..open].trim_end_matches('/').split('/').collect();
        if head.len() < 3 || head.len() > 4 {
            return Err(format!("argument {s:?} needs cat/gf/role[/marker]"));
        }
        let gf: GfSlot = head[1].parse()?;
        let marker = head.get(3).map(|m| m.to_string());
        let (restrictions, control) = if let Some((lhs, rhs)) = list.split_once('=') {
            let controlled = match lhs.trim() {
                "subj" => GfSlot::Subj1,
                other => other.parse()?,
            };
            (
                Vec::new(),
                Some(Control {
                    controlled,
                    controller: rhs.trim().parse()?,
                }),
            )
        } else if list.trim().is_empty() {
            (Vec::new(), None)
        } else {
            (list.split(',').map(|r| r.trim().to_string()).collect(), None)
        };
        let category = head[0].to_string();
        if marker.is_some() {
            let ok = (gf == GfSlot::Obl && matches!(category.as_str(), "pp" | "sp"))
                || (gf == GfSlot::Vcomp && category == "vinf");
            if !ok {
                return Err(format!("marker only allowed on pp/obl or vinf/vcomp: {s:?}"));
            }
        }
        if control.is_some() && gf != GfSlot::Vcomp {
            return Err(format!("control equation on closed function: {s:?}"));
        }
        Ok(ArgSpec {
            category,
            gf,
            role: head[2].to_string(),
            restrictions,
            marker,
            control,
        })
    }
}

/// A predicate with its ordered argument list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemanticForm {
    pub pred: String,
    pub args: Vec<ArgSpec>,
}

impl SemanticForm {
    pub fn parse(pred: &str, s: &str) -> Result<SemanticForm, String> {
        let s = s.trim();
        let inner = match s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            Some(r) => r,
            None => s,
        };
        let args = split_top_level(inner)
            .into_iter()
            .filter(|a| !a.trim().is_empty())
            .map(|a| a.trim().parse::<ArgSpec>())
            .collect::<Result<Vec<_>, _>>()?;
        let mut seen = Vec::new();
        for a in &args {
            if seen.contains(&a.gf) {
                return Err(format!("semantic form repeats {}", a.gf));
            }
            seen.push(a.gf);
        }
        Ok(SemanticForm {
            pred: pred.to_string(),
            args,
        })
    }

    pub fn arg(&self, gf: GfSlot) -> Option<&ArgSpec> {
        self.args.iter().find(|a| a.gf == gf)
    }

    pub fn governs(&self, gf: GfSlot) -> bool {
        self.arg(gf).is_some()
    }
}

impl fmt::Display for SemanticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

/// Split on commas that are not nested inside brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexicalEntry {
    pub surface: String,
    pub lemma: String,
    pub pos: Pos,
    pub morph: Morph,
    pub semclass: Vec<String>,
    pub tabref: Option<TabRef>,
    pub semform: Option<SemanticForm>,
    pub comment: Option<String>,
}

impl LexicalEntry {
    pub fn has_class(&self, class: &str) -> bool {
        self.semclass.iter().any(|c| c == class)
    }
}

impl fmt::Display for LexicalEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}", self.pos, self.lemma)?;
        let m = &self.morph;
        for v in [&m.gen, &m.num, &m.pers, &m.tense, &m.mood, &m.case]
            .into_iter()
            .flatten()
        {
            write!(f, ",{v}")?;
        }
        f.write_str(")")
    }
}

/// Immutable lexicon indexed by lowercase surface form.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexicalEntry>,
    index: HashMap<String, Vec<usize>>,
    /// Multiword surfaces, split into words.
    multiword: Vec<Vec<String>>,
}

pub const BUNDLED_LEXICON: &str = include_str!("../data/lexicon.tsv");

fn opt_field(s: &str) -> Option<&str> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        None
    } else {
        Some(s)
    }
}

impl Lexicon {
    pub fn bundled() -> Lexicon {
        Lexicon::parse(BUNDLED_LEXICON).expect("bundled lexicon is well-formed")
    }

    pub fn parse(text: &str) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon::default();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() < 6 || cols.len() > 8 {
                return Err(format_err(
                    line_no,
                    format!("expected 6 to 8 tab-separated fields, got {}", cols.len()),
                ));
            }
            let lemma = cols[1].trim();
            if lemma.is_empty() {
                return Err(format_err(line_no, "empty lemma"));
            }
            let pos: Pos = cols[2].trim().parse().map_err(|e| format_err(line_no, e))?;
            let morph = Morph::parse(cols[3].trim()).map_err(|e| format_err(line_no, e))?;
            let semclass = opt_field(cols[4])
                .map(|s| s.split(',').map(|c| c.trim().to_string()).collect())
                .unwrap_or_default();
            let tabref = opt_field(cols[5])
                .map(|s| s.parse::<TabRef>())
                .transpose()
                .map_err(|e| format_err(line_no, e))?;
            let semform = cols
                .get(6)
                .and_then(|s| opt_field(s))
                .map(|s| SemanticForm::parse(lemma, s))
                .transpose()
                .map_err(|e| format_err(line_no, e))?;
            if semform.is_some() != pos.is_predicative() {
                return Err(format_err(
                    line_no,
                    format!("semantic form presence does not match pos {pos}"),
                ));
            }
            let comment = cols.get(7).and_then(|s| opt_field(s)).map(str::to_string);
            let surfaces: Vec<String> = cols[0]
                .split('|')
                .map(|s| s.trim().to_lowercase())
                .filter(|s| !s.is_empty())
                .collect();
            if surfaces.is_empty() {
                return Err(format_err(line_no, "empty surface"));
            }
            let idx = lex.entries.len();
            lex.entries.push(LexicalEntry {
                surface: surfaces[0].clone(),
                lemma: lemma.to_string(),
                pos,
                morph,
                semclass,
                tabref,
                semform,
                comment,
            });
            for s in surfaces {
                if s.contains(' ') {
                    let words: Vec<String> = s.split_whitespace().map(str::to_string).collect();
                    if !lex.multiword.contains(&words) {
                        lex.multiword.push(words);
                    }
                }
                lex.index.entry(s).or_default().push(idx);
            }
        }
        lex.multiword.sort_by_key(|w| std::cmp::Reverse(w.len()));
        Ok(lex)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[LexicalEntry] {
        &self.entries
    }

    /// All entries whose surface (or listed variant) matches, case-insensitively.
    pub fn lookup(&self, surface: &str) -> Vec<LexicalEntry> {
        let key = normalize(surface);
        self.index
            .get(&key)
            .map(|ids| {
                ids.iter()
                    .map(|&i| {
                        let mut e = self.entries[i].clone();
                        e.surface = key.clone();
                        e
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn contains(&self, surface: &str) -> bool {
        self.index.contains_key(&normalize(surface))
    }

    /// Splits raw text into lexicon tokens: lowercases, drops punctuation,
    /// detaches elided articles and clitics, merges known multiword forms.
    pub fn tokenize(&self, text: &str) -> Vec<String> {
        let mut words = Vec::new();
        for raw in text.split_whitespace() {
            let w: String = normalize(raw)
                .chars()
                .filter(|c| !matches!(c, '.' | ',' | ';' | ':' | '!' | '?' | '"' | '«' | '»' | '(' | ')'))
                .collect();
            if w.is_empty() {
                continue;
            }
            let mut rest = w.as_str();
            while let Some(pos) = rest.find('\'') {
                let (head, tail) = rest.split_at(pos + 1);
                if tail.is_empty() || !self.contains(head) {
                    break;
                }
                words.push(head.to_string());
                rest = tail;
            }
            if !rest.is_empty() {
                words.push(rest.to_string());
            }
        }
        let mut out = Vec::with_capacity(words.len());
        let mut i = 0;
        'outer: while i < words.len() {
            for mw in &self.multiword {
                if words.len() - i >= mw.len() && words[i..i + mw.len()] == mw[..] {
                    out.push(mw.join(" "));
                    i += mw.len();
                    continue 'outer;
                }
            }
            out.push(words[i].clone());
            i += 1;
        }
        out
    }

    /// One entry per token, disambiguated by a fixed rule order with a
    /// lookahead of at most three tokens.
    pub fn tag<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Vec<LexicalEntry>, LexiconError> {
        let cands: Vec<Vec<LexicalEntry>> = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let c = self.lookup(t.as_ref());
                if c.is_empty() {
                    Err(LexiconError::UnknownToken {
                        position: i,
                        token: t.as_ref().to_string(),
                    })
                } else {
                    Ok(c)
                }
            })
            .collect::<Result<_, _>>()?;
        let mut out: Vec<LexicalEntry> = Vec::with_capacity(cands.len());
        for i in 0..cands.len() {
            let prev = out.last().map(|e| e.pos);
            let choice = disambiguate(&cands, i, prev);
            out.push(cands[i][choice].clone());
        }
        Ok(out)
    }
}

fn normalize(s: &str) -> String {
    s.trim().replace(['’', '`', '‘'], "'").to_lowercase()
}

fn has(c: &[LexicalEntry], pos: Pos) -> bool {
    c.iter().any(|e| e.pos == pos)
}

fn find(c: &[LexicalEntry], pos: Pos) -> Option<usize> {
    c.iter().position(|e| e.pos == pos)
}

const LOOKAHEAD: usize = 3;

fn disambiguate(cands: &[Vec<LexicalEntry>], i: usize, prev: Option<Pos>) -> usize {
    let c = &cands[i];
    if c.len() == 1 {
        return 0;
    }
    let next = cands.get(i + 1).map(Vec::as_slice).unwrap_or(&[]);
    let next_verbal = next.iter().any(|e| e.pos.is_verbal());
    let next_nominal = next
        .iter()
        .any(|e| e.pos.is_nominal_head() || e.pos == Pos::Adj || e.pos == Pos::Poss);
    let after_det = matches!(prev, Some(Pos::Det | Pos::ArtPrep | Pos::Poss));

    // determiner vs clitic: a clitic sits right before a verb form
    if has(c, Pos::Det) && has(c, Pos::Clitic) {
        let pick = if next_verbal && !next_nominal {
            Pos::Clitic
        } else {
            Pos::Det
        };
        return find(c, pick).unwrap_or(0);
    }
    // auxiliary vs main verb: auxiliary only when a participle follows closely
    if has(c, Pos::Aux) && (has(c, Pos::Verb) || has(c, Pos::Modal)) {
        let participle_ahead = cands.iter().skip(i + 1).take(LOOKAHEAD).any(|n| has(n, Pos::PastPart));
        let main = if has(c, Pos::Verb) { Pos::Verb } else { Pos::Modal };
        let pick = if participle_ahead { Pos::Aux } else { main };
        return find(c, pick).unwrap_or(0);
    }
    // adjective vs noun right after a determiner: det+noun wins unless a
    // noun follows
    if has(c, Pos::Adj) && has(c, Pos::Noun) {
        let noun_follows = next.iter().any(|e| e.pos.is_nominal_head()) && !has(next, Pos::Adv) && !next_verbal;
        let pick = if after_det && noun_follows {
            Pos::Adj
        } else if after_det {
            Pos::Noun
        } else if matches!(prev, Some(Pos::Noun | Pos::RNoun | Pos::Propn)) {
            Pos::Adj
        } else {
            Pos::Noun
        };
        return find(c, pick).unwrap_or(0);
    }
    // quantity adjective vs degree adverb (più): adjective before a noun
    if has(c, Pos::Adj) && has(c, Pos::Adv) {
        let noun_next = next.iter().any(|e| e.pos.is_nominal_head());
        let pick = if noun_next { Pos::Adj } else { Pos::Adv };
        return find(c, pick).unwrap_or(0);
    }
    // noun vs adverb (ora): nominal after a determiner
    if has(c, Pos::Noun) && has(c, Pos::Adv) {
        let pick = if after_det { Pos::Noun } else { Pos::Adv };
        return find(c, pick).unwrap_or(0);
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> Lexicon {
        Lexicon::bundled()
    }

    #[test]
    fn educerebbe_carries_three_place_form() {
        let es = lex().lookup("educerebbe");
        assert_eq!(es.len(), 1);
        let e = &es[0];
        assert_eq!(e.lemma, "educare");
        assert_eq!(e.morph.mood.as_deref(), Some("cond"));
        assert_eq!(e.morph.tense.as_deref(), Some("pres"));
        assert_eq!(
            e.semform.as_ref().unwrap().to_string(),
            "[np/subj1/causer_emot/[+hum],np/obj1/theme_emot/[-ani,+hum],pp/obl/exper/a/[]]"
        );
    }

    #[test]
    fn soffocare_form() {
        let es = lex().lookup("soffocare");
        assert_eq!(
            es[0].semform.as_ref().unwrap().to_string(),
            "[np/subj1/agent/[+hum],np/obj1/theme_aff/[-ani,+hum,+abst]]"
        );
    }

    #[test]
    fn out_of_vocabulary() {
        assert!(lex().lookup("xyzzy").is_empty());
    }

    #[test]
    fn tag_simple_np() {
        let t = lex().tag(&["il", "cor"]).unwrap();
        assert_eq!(t[0].pos, Pos::Det);
        assert_eq!(t[0].morph.gen.as_deref(), Some("mas"));
        assert_eq!(t[1].pos, Pos::Noun);
        assert_eq!(t[1].lemma, "cuor");
        assert_eq!(t[1].morph.num.as_deref(), Some("sing"));
    }

    #[test]
    fn tag_clitic_aux_participle() {
        let t = lex().tag(&["l'", "ha", "riservata"]).unwrap();
        assert_eq!(t[0].pos, Pos::Clitic);
        assert_eq!(t[0].morph.case.as_deref(), Some("acc"));
        assert_eq!(t[0].morph.gen.as_deref(), Some("fem"));
        assert_eq!(t[1].pos, Pos::Aux);
        assert_eq!(t[1].lemma, "avere");
        assert_eq!(t[2].pos, Pos::PastPart);
        assert_eq!(t[2].lemma, "riservare");
        assert_eq!(t[2].morph.gen.as_deref(), Some("fem"));
    }

    #[test]
    fn tag_future_first_plural() {
        let t = lex().tag(&["pregheremo"]).unwrap();
        assert_eq!(t[0].pos, Pos::Verb);
        assert_eq!(t[0].lemma, "pregare");
        assert_eq!(t[0].morph.tense.as_deref(), Some("fut"));
        assert_eq!(t[0].morph.pers.as_deref(), Some("1"));
        assert_eq!(t[0].morph.num.as_deref(), Some("plur"));
    }

    #[test]
    fn tag_unknown_reports_position() {
        let err = lex().tag(&["il", "xyzzy"]).unwrap_err();
        assert_eq!(
            err,
            LexiconError::UnknownToken {
                position: 1,
                token: "xyzzy".into()
            }
        );
    }

    #[test]
    fn distant_participle_keeps_main_verb_reading() {
        let l = lex();
        let toks = l.tokenize("che gli hanno il cor di mezzo il petto tolto");
        let t = l.tag(&toks).unwrap();
        assert_eq!(t[1].pos, Pos::Clitic);
        assert_eq!(t[2].pos, Pos::Verb);
        assert_eq!(toks[5], "di mezzo");
    }

    #[test]
    fn tokenize_splits_elision() {
        let l = lex();
        assert_eq!(
            l.tokenize("Né l'oblioso incanto dell'ora"),
            vec!["né", "l'", "oblioso", "incanto", "dell'", "ora"]
        );
        assert_eq!(l.tokenize("l’ha,"), vec!["l'", "ha"]);
    }

    #[test]
    fn tabref_roundtrip_and_arity() {
        let t: TabRef = "[+ref,-pro,-ana,+class]".parse().unwrap();
        assert_eq!(t.to_string(), "[+ref,-pro,-ana,+class]");
        assert!("[+ref,-pro,-ana]".parse::<TabRef>().is_err());
    }

    #[test]
    fn argspec_constraints() {
        assert!("np/obj1/theme/a/[]".parse::<ArgSpec>().is_err());
        assert!("np/obj1/theme/[subj=subj1]".parse::<ArgSpec>().is_err());
        let v: ArgSpec = "vinf/vcomp/prop/a/[subj=subj1]".parse().unwrap();
        assert_eq!(v.to_string(), "vinf/vcomp/prop/a/[subj=subj1]");
    }

    #[test]
    fn rejects_semform_on_non_predicative() {
        let err = Lexicon::parse("il\til\tdet\t-\t-\t-\tnp/subj1/agent/[]\n").unwrap_err();
        assert!(matches!(err, LexiconError::Format { line: 1, .. }));
    }

    #[test]
    fn bundled_lexicon_invariants() {
        for e in lex().entries() {
            assert_eq!(e.semform.is_some(), e.pos.is_predicative(), "{}", e.surface);
        }
    }
}
