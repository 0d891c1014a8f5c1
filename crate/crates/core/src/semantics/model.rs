//! Emission of infons from an accepted f-structure.

use std::collections::BTreeMap;

use super::{FactId, Infon, Model, SemanticsError};
use crate::fstruct::{FStructure, Value};
use crate::lexicon::GfSlot;

/// One class fact about a referent: `isa` or `inst_of` with a class name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFact {
    pub rel: &'static str,
    pub class: String,
}

fn semclasses(x: &FStructure) -> Vec<String> {
    x.atom("cat")
        .map(|c| {
            c.trim_matches(|ch| ch == '[' || ch == ']')
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect()
        })
        .unwrap_or_default()
}

fn is_pronoun(x: &FStructure) -> bool {
    x.atom("tab_ref").is_some_and(|t| t.contains("+pro"))
}

/// Class facts for a nominal: pronouns get a definiteness class and an
/// ontological class, proper names their name, common nouns their
/// semantic class and their PRED.
pub fn classify_referent(x: &FStructure) -> Result<Vec<ClassFact>, SemanticsError> {
    let lemma = x.lemma().unwrap_or_default().to_string();
    let classes = semclasses(x);
    if is_pronoun(x) {
        let definite = x.atom("interpretazione") == Some("definita");
        let human = classes.is_empty() || classes.iter().any(|c| c == "umano");
        let onto = if human {
            match x.atom("gen") {
                Some("fem") => "donna".to_string(),
                Some("mas") => "uomo".to_string(),
                _ => "persona".to_string(),
            }
        } else {
            classes[0].clone()
        };
        return Ok(vec![
            ClassFact {
                rel: "isa",
                class: if definite { "definite" } else { "indefinite" }.into(),
            },
            ClassFact {
                rel: "inst_of",
                class: onto,
            },
        ]);
    }
    if x.has("_propn") {
        return Ok(vec![ClassFact {
            rel: "isa",
            class: lemma,
        }]);
    }
    match classes.first() {
        Some(c) => Ok(vec![
            ClassFact {
                rel: "inst_of",
                class: c.clone(),
            },
            ClassFact {
                rel: "isa",
                class: lemma,
            },
        ]),
        None => Err(SemanticsError::MissingClass { lemma }),
    }
}

/// Issues semantic indices across the sentences of one run.
#[derive(Debug, Default)]
pub struct ModelBuilder {
    next_id: u32,
    sentence: u32,
}

impl ModelBuilder {
    pub fn new() -> ModelBuilder {
        ModelBuilder::default()
    }

    pub fn build(&mut self, f: &FStructure) -> Result<Model, SemanticsError> {
        self.sentence += 1;
        let mut e = Emitter {
            b: self,
            infon: 0,
            out: Vec::new(),
            ids: BTreeMap::new(),
        };
        if !f.attrs.is_empty() {
            e.clause(f, None)?;
        }
        let clause_index = f.index.clone().unwrap_or_default();
        Ok(Model {
            infons: e.out,
            clause_index,
        })
    }
}

/// Model of a single sentence with a fresh index counter.
pub fn build_model(f: &FStructure) -> Result<Model, SemanticsError> {
    ModelBuilder::new().build(f)
}

const UNIV: &str = "univ";

struct Emitter<'a> {
    b: &'a mut ModelBuilder,
    infon: u32,
    out: Vec<Infon>,
    /// F-structure index to semantic index.
    ids: BTreeMap<String, u32>,
}

fn is_clause(x: &FStructure) -> bool {
    x.has("modo") || x.has("adj") || x.has("main")
}

fn is_nominal(x: &FStructure) -> bool {
    x.atom("_cat") == Some("np") || x.has("coord")
}

impl Emitter<'_> {
    fn fresh(&mut self) -> u32 {
        self.b.next_id += 1;
        self.b.next_id
    }

    fn fact(&mut self, rel: &str, args: Vec<(String, String)>, time: &str) {
        self.infon += 1;
        self.out.push(Infon::Fact {
            id: FactId::Infon(self.infon),
            rel: rel.to_string(),
            args,
            polarity: 1,
            time: time.to_string(),
            space: UNIV.into(),
        });
    }

    fn ind(&mut self, x: &FStructure) -> u32 {
        let id = self.fresh();
        self.infon += 1;
        self.out.push(Infon::Ind { infon: self.infon, id });
        if let Some(i) = &x.index {
            self.ids.insert(i.clone(), id);
        }
        id
    }

    fn tes(&self, x: &FStructure) -> String {
        format!("tes({}_sent{})", x.index.as_deref().unwrap_or("f0"), self.b.sentence)
    }

    /// Semantic index of an already introduced structure or antecedent.
    fn known(&self, x: &FStructure) -> Option<u32> {
        let own = x.index.as_ref().and_then(|i| self.ids.get(i));
        let ante = ["controllore", "antecedente"]
            .iter()
            .filter_map(|k| x.atom(k))
            .find_map(|i| self.ids.get(i));
        own.or(ante).copied()
    }

    fn nominal(&mut self, x: &FStructure) -> Result<u32, SemanticsError> {
        if let Some(id) = self.known(x) {
            if let Some(i) = &x.index {
                self.ids.insert(i.clone(), id);
            }
            return Ok(id);
        }
        let id = self.ind(x);
        let ind = |id: u32| ("ind".to_string(), format!("id{id}"));
        if x.has("coord") {
            for c in x.set_items("conj") {
                let cid = self.nominal(c)?;
                self.fact("member", vec![ind(cid), ("set".into(), format!("id{id}"))], UNIV);
            }
            return Ok(id);
        }
        let mods = x.set_items("mods");
        for m in mods.iter().filter(|m| m.atom("_cat") == Some("ap")) {
            if let Some(i) = &m.index {
                self.ids.insert(i.clone(), id);
            }
            if let Some(p) = m.lemma() {
                self.fact(p, vec![ind(id)], UNIV);
            }
        }
        for c in classify_referent(x)? {
            self.fact(c.rel, vec![ind(id), ("class".into(), c.class)], UNIV);
        }
        if let Some(p) = x.fs("poss") {
            let pid = self.nominal(p)?;
            self.fact("poss", vec![ind(id), ("poss".into(), format!("id{pid}"))], UNIV);
        }
        if let Some(n) = x.fs("ncomp") {
            let nid = self.nominal(n)?;
            let role = x
                .form()
                .and_then(|fm| fm.arg(GfSlot::Ncomp))
                .map_or("nil".to_string(), |a| a.role.clone());
            self.fact("di", vec![ind(id), (role, format!("id{nid}"))], UNIV);
        }
        for m in mods {
            if m.has("sem_mark") {
                if let Some(o) = m.fs("ogg").filter(|o| is_nominal(o)) {
                    let oid = self.nominal(o)?;
                    let role = m.atom("_ogg_role").unwrap_or("nil").to_string();
                    let mark = m.atom("sem_mark").unwrap_or("nil").to_string();
                    self.fact(&mark, vec![ind(id), (role, format!("id{oid}"))], UNIV);
                }
            } else if is_clause(m) {
                self.clause(m, Some(id))?;
            } else if is_nominal(m) {
                let aid = self.nominal(m)?;
                self.fact("appos", vec![ind(id), ind(aid)], UNIV);
            }
        }
        Ok(id)
    }

    /// Semantic index standing for a focus or topic filler.
    fn filler(&mut self, v: &FStructure, ev: u32) -> Result<u32, SemanticsError> {
        if let Some(id) = self.known(v) {
            return Ok(id);
        }
        if v.has("sem_mark") {
            if let Some(o) = v.fs("ogg") {
                return self.filler(o, ev);
            }
        }
        if is_clause(v) {
            return self.clause(v, None);
        }
        if is_nominal(v) {
            return self.nominal(v);
        }
        Ok(ev)
    }

    fn clause(&mut self, f: &FStructure, head: Option<u32>) -> Result<u32, SemanticsError> {
        if let Some(adj) = f.fs("adj") {
            let sub = adj.fs("sub").cloned().unwrap_or_default();
            let ev = self.clause(&sub, None)?;
            if let Some(m) = f.fs("main").filter(|m| !m.attrs.is_empty()) {
                self.clause(m, None)?;
            }
            let mark = adj.atom("sem_mark").unwrap_or("sub").to_string();
            let t = self.tes(&sub);
            self.fact(&mark, vec![("arg".into(), format!("id{ev}"))], &t);
            return Ok(ev);
        }
        if !is_clause(f) {
            return self.nominal(f);
        }
        let time = self.tes(f);
        let dfs: Vec<(&str, FStructure)> = ["focus", "topic"]
            .iter()
            .flat_map(|d| match f.get(d) {
                Some(Value::Fs(x)) => vec![(*d, x.clone())],
                Some(Value::Set(xs)) => xs.iter().map(|x| (*d, x.clone())).collect(),
                _ => Vec::new(),
            })
            .collect();
        for (_, x) in &dfs {
            if x.has("_relpron") {
                if let (Some(i), Some(h)) = (&x.index, head) {
                    self.ids.insert(i.clone(), h);
                }
            } else if is_nominal(x) {
                self.nominal(x)?;
            } else if let Some(o) = x.fs("ogg").filter(|o| x.has("sem_mark") && is_nominal(o)) {
                self.nominal(o)?;
            }
        }

        let mut args = Vec::new();
        let mut obliques = Vec::new();
        if let Some(form) = f.form().cloned() {
            for a in &form.args {
                let Some(x) = f.fs(a.gf.attr()) else { continue };
                let id = if x.has("sem_mark") {
                    if let Some(o) = x.fs("ogg").filter(|o| is_nominal(o)) {
                        self.nominal(o)?;
                    }
                    obliques.push(x.clone());
                    continue;
                } else if is_clause(x) {
                    self.clause(x, None)?
                } else if is_nominal(x) {
                    self.nominal(x)?
                } else {
                    let id = self.ind(x);
                    if let Some(p) = x.lemma() {
                        self.fact(p, vec![("ind".into(), format!("id{id}"))], UNIV);
                    }
                    id
                };
                args.push((a.role.clone(), format!("id{id}")));
            }
        }
        let ev = self.fresh();
        let polarity = if f.atom("pol") == Some("neg") { 0 } else { 1 };
        self.out.push(Infon::Fact {
            id: FactId::Event(ev),
            rel: f.lemma().unwrap_or("nil").to_string(),
            args,
            polarity,
            time: time.clone(),
            space: UNIV.into(),
        });
        let arg = |k: u32| ("arg".to_string(), format!("id{k}"));
        self.fact("isa", vec![arg(ev), ("arg".into(), "st".into())], &time);
        if f.has("_finite") {
            let t = self.fresh();
            self.fact("isa", vec![arg(t), ("arg".into(), "tloc".into())], &time);
            let tense = f.atom("tempo").unwrap_or("pres").to_string();
            self.fact(&tense, vec![arg(t)], &time);
            self.fact("time", vec![arg(ev), arg(t)], &time);
        }

        let adjs = f.set_items("adjs");
        let plain = |x: &FStructure| !x.has("sem_mark") && !is_clause(x) && !is_nominal(x) && !x.has("controllore");
        for x in adjs.iter().filter(|x| plain(x)) {
            if let Some(p) = x.lemma() {
                self.fact(p, vec![arg(ev)], &time);
            }
        }
        for (d, x) in &dfs {
            let id = self.filler(x, ev)?;
            self.fact(d, vec![arg(id), arg(ev)], &time);
        }
        if let Some(Value::Atom(_)) = f.get("focus") {
            self.fact("focus", vec![arg(ev), arg(ev)], &time);
        }
        for x in obliques.iter().chain(adjs.iter().filter(|x| !plain(x))) {
            self.adjunct(x, ev, &time)?;
        }
        Ok(ev)
    }

    fn adjunct(&mut self, x: &FStructure, ev: u32, time: &str) -> Result<(), SemanticsError> {
        let arg = ("arg".to_string(), format!("id{ev}"));
        let role = x.atom("_role").unwrap_or("nil").to_string();
        if let Some(mark) = x.atom("sem_mark") {
            let role = x.atom("_ogg_role").unwrap_or("nil").to_string();
            let Some(o) = x.fs("ogg") else { return Ok(()) };
            let id = if is_clause(o) {
                self.clause(o, None)?
            } else {
                self.nominal(o)?
            };
            self.fact(mark, vec![arg, (role, format!("id{id}"))], time);
        } else if x.has("controllore") && !is_clause(x) {
            let id = self.known(x).unwrap_or_else(|| self.ind(x));
            self.fact(&role, vec![arg, (role.clone(), format!("id{id}"))], time);
        } else if is_clause(x) {
            let sub = self.clause(x, None)?;
            self.fact(&role, vec![arg, ("arg".into(), format!("id{sub}"))], time);
        } else if is_nominal(x) {
            let id = self.nominal(x)?;
            self.fact(&role, vec![arg, (role.clone(), format!("id{id}"))], time);
        }
        Ok(())
    }
}
