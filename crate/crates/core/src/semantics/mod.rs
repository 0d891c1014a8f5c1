//! Situation-semantics models: infons, their text form and comparison.

mod model;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use model::{build_model, classify_referent, ClassFact, ModelBuilder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("no ontological class for {lemma}")]
    MissingClass { lemma: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("model line {line}: {msg}")]
pub struct ModelFormatError {
    pub line: usize,
    pub msg: String,
}

/// Identifier of a fact: an infon number, or the event index of a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactId {
    Infon(u32),
    Event(u32),
}

impl fmt::Display for FactId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactId::Infon(n) => write!(f, "infon{n}"),
            FactId::Event(k) => write!(f, "id{k}"),
        }
    }
}

impl FromStr for FactId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |p: &str| s.strip_prefix(p).and_then(|n| n.parse().ok());
        if let Some(n) = num("infon") {
            Ok(FactId::Infon(n))
        } else if let Some(k) = num("id") {
            Ok(FactId::Event(k))
        } else {
            Err(format!("bad fact identifier {s:?}"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Infon {
    Ind {
        infon: u32,
        id: u32,
    },
    Fact {
        id: FactId,
        rel: String,
        args: Vec<(String, String)>,
        polarity: u8,
        time: String,
        space: String,
    },
}

impl Infon {
    /// Semantic indices mentioned as argument values.
    pub fn arg_ids(&self) -> Vec<u32> {
        match self {
            Infon::Ind { .. } => Vec::new(),
            Infon::Fact { args, .. } => args.iter().filter_map(|(_, v)| sem_id(v)).collect(),
        }
    }

    pub fn rel(&self) -> Option<&str> {
        match self {
            Infon::Ind { .. } => None,
            Infon::Fact { rel, .. } => Some(rel),
        }
    }
}

fn sem_id(v: &str) -> Option<u32> {
    v.strip_prefix("id").and_then(|n| n.parse().ok())
}

impl fmt::Display for Infon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infon::Ind { infon, id } => write!(f, "ind(infon{infon},id{id})"),
            Infon::Fact {
                id,
                rel,
                args,
                polarity,
                time,
                space,
            } => {
                let a: Vec<String> = args.iter().map(|(r, v)| format!("{r}:{v}")).collect();
                write!(f, "fact({id},{rel},[{}],{polarity},{time},{space})", a.join(","))
            }
        }
    }
}

fn parse_infon(s: &str) -> Result<Infon, String> {
    if let Some(body) = s.strip_prefix("ind(").and_then(|r| r.strip_suffix(')')) {
        let (a, b) = body.split_once(',').ok_or("ind needs two fields")?;
        let infon = match a.parse::<FactId>()? {
            FactId::Infon(n) => n,
            FactId::Event(_) => return Err("ind must be numbered infonN".into()),
        };
        let id = sem_id(b).ok_or_else(|| format!("bad index {b:?}"))?;
        return Ok(Infon::Ind { infon, id });
    }
    let body = s
        .strip_prefix("fact(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or("expected ind(...) or fact(...)")?;
    let (id, rest) = body.split_once(',').ok_or("missing relation")?;
    let (rel, rest) = rest.split_once(',').ok_or("missing arguments")?;
    let rest = rest.strip_prefix('[').ok_or("arguments must be bracketed")?;
    let (list, rest) = rest.split_once(']').ok_or("unclosed argument list")?;
    let mut args = Vec::new();
    for a in list.split(',').filter(|a| !a.is_empty()) {
        let (r, v) = a
            .split_once(':')
            .ok_or_else(|| format!("argument {a:?} lacks a role"))?;
        args.push((r.to_string(), v.to_string()));
    }
    let tail: Vec<&str> = rest.strip_prefix(',').ok_or("missing polarity")?.split(',').collect();
    let [pol, time, space] = tail[..] else {
        return Err("expected polarity, time and space".into());
    };
    let polarity = match pol {
        "0" => 0,
        "1" => 1,
        _ => return Err(format!("polarity must be 0 or 1, got {pol:?}")),
    };
    if rel.is_empty() || time.is_empty() || space.is_empty() {
        return Err("empty field".into());
    }
    Ok(Infon::Fact {
        id: id.parse()?,
        rel: rel.to_string(),
        args,
        polarity,
        time: time.to_string(),
        space: space.to_string(),
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Model {
    pub infons: Vec<Infon>,
    /// F-structure index stamped into `tes(...)` for the main clause.
    pub clause_index: String,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.infons {
            writeln!(f, "{i}")?;
        }
        Ok(())
    }
}

impl Model {
    /// Reads the one-infon-per-line form; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Model, ModelFormatError> {
        let mut infons = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            infons.push(parse_infon(line).map_err(|msg| ModelFormatError { line: n + 1, msg })?);
        }
        let clause_index = infons
            .iter()
            .find_map(|i| match i {
                Infon::Fact {
                    id: FactId::Event(_),
                    time,
                    ..
                } => tes_clause(time).map(str::to_string),
                _ => None,
            })
            .unwrap_or_default();
        Ok(Model { infons, clause_index })
    }

    /// Indices introduced by `ind` entries, relation facts and time locations.
    pub fn introduced(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for i in &self.infons {
            match i {
                Infon::Ind { id, .. } => {
                    out.insert(*id);
                }
                Infon::Fact {
                    id: FactId::Event(k), ..
                } => {
                    out.insert(*k);
                }
                Infon::Fact { rel, args, .. } if rel == "isa" && args.get(1).is_some_and(|a| a.1 == "tloc") => {
                    out.extend(sem_id(&args[0].1));
                }
                _ => {}
            }
        }
        out
    }

    /// Checks that `ind` indices increase strictly and that every index
    /// used as an argument was introduced.
    pub fn check_indices(&self) -> Result<(), String> {
        let mut last = 0;
        for i in &self.infons {
            if let Infon::Ind { id, .. } = i {
                if *id <= last {
                    return Err(format!("ind id{id} does not increase"));
                }
                last = *id;
            }
        }
        let known = self.introduced();
        for i in &self.infons {
            for k in i.arg_ids() {
                if !known.contains(&k) {
                    return Err(format!("id{k} used in {i} but never introduced"));
                }
            }
        }
        Ok(())
    }
}

fn tes_clause(time: &str) -> Option<&str> {
    let inner = time.strip_prefix("tes(")?.strip_suffix(')')?;
    Some(inner.rsplit_once("_sent").map_or(inner, |(c, _)| c))
}

/// Infon content with infon numbers dropped and clause stamps renamed in
/// order of first appearance.
fn normalized(m: &Model) -> Vec<String> {
    let mut clauses: BTreeMap<String, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for i in &m.infons {
        let s = match i {
            Infon::Ind { id, .. } => format!("ind(id{id})"),
            Infon::Fact {
                id,
                rel,
                args,
                polarity,
                time,
                space,
            } => {
                let id = match id {
                    FactId::Infon(_) => "infon".to_string(),
                    e => e.to_string(),
                };
                let time = match tes_clause(time) {
                    Some(c) => {
                        let n = clauses.len();
                        let k = *clauses.entry(c.to_string()).or_insert(n);
                        let sent = time.rsplit_once("_sent").map_or("", |(_, s)| s.trim_end_matches(')'));
                        format!("tes(c{k}_sent{sent})")
                    }
                    None => time.clone(),
                };
                let a: Vec<String> = args.iter().map(|(r, v)| format!("{r}:{v}")).collect();
                format!("fact({id},{rel},[{}],{polarity},{time},{space})", a.join(","))
            }
        };
        out.push(s);
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelDiff {
    /// Expected infons absent from the actual model.
    pub missing: Vec<String>,
    /// Actual infons the expectation does not list.
    pub extra: Vec<String>,
}

impl ModelDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Multiset comparison of two models by content, ignoring infon numbering.
pub fn compare_models(expected: &Model, actual: &Model) -> ModelDiff {
    let mut pool = normalized(actual);
    let mut missing = Vec::new();
    for e in normalized(expected) {
        match pool.iter().position(|a| *a == e) {
            Some(p) => {
                pool.remove(p);
            }
            None => missing.push(e),
        }
    }
    ModelDiff { missing, extra: pool }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "ind(infon1,id1)\nfact(id4,educare,[causer_emot:id2,theme_emot:id1],1,tes(f15_sent1),univ)\n";
        let m = Model::parse(text).unwrap();
        assert_eq!(m.clause_index, "f15");
        assert_eq!(m.to_string(), text);
    }

    #[test]
    fn comparison_ignores_numbering() {
        let a = Model::parse("fact(infon2,solo,[ind:id1],1,univ,univ)\nfact(id4,x,[],1,tes(f15_sent1),univ)").unwrap();
        let b = Model::parse("fact(infon9,solo,[ind:id1],1,univ,univ)\nfact(id4,x,[],1,tes(f1_sent1),univ)").unwrap();
        assert!(compare_models(&a, &b).is_empty());
        let c = Model::parse("fact(infon9,solo,[ind:id2],1,univ,univ)").unwrap();
        let d = compare_models(&a, &c);
        assert_eq!(d.missing.len(), 2);
        assert_eq!(d.extra.len(), 1);
    }

    #[test]
    fn malformed_lines() {
        for bad in [
            "fact(infon1,x,[a],1,univ,univ)",
            "ind(id1,id1)",
            "fact(infon1,x,[],2,univ,univ)",
            "nope",
        ] {
            assert!(Model::parse(bad).is_err(), "{bad}");
        }
    }
}
