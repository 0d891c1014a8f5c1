//! Projection of an annotated c-structure onto an f-structure.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use thiserror::Error;

use super::{Clash, FStructure, Pred, Value};
use crate::cstruct::{CNode, Category, Child, Df, Gf, Leaf};
use crate::lexicon::{GfSlot, LexicalEntry, Morph, Pos, SemanticForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error(transparent)]
    Clash(#[from] Clash),
    #[error("no verb heads the clause spanning {0:?}")]
    NoVerb(Range<usize>),
    #[error("malformed {cat} at {span:?}")]
    Malformed { cat: Category, span: Range<usize> },
}

/// Solves the tree's annotations into one root f-structure.
pub fn build_fstructure(tree: &CNode) -> Result<FStructure, BuildError> {
    let mut b = Builder::default();
    b.prepass(tree);
    let mut f = b.root(tree)?;
    f.normalize();
    Ok(f)
}

/// Role of an adjunct PP, keyed by its preposition.
pub(crate) fn prep_role(prep: &str) -> &'static str {
    match prep {
        "di" => "matter",
        "in" | "su" => "locativo",
        "con" => "circumst",
        "a" | "per" => "goal",
        "da" | "di_mezzo" => "source",
        _ => "circumst",
    }
}

#[derive(Default)]
struct Builder {
    counters: BTreeMap<&'static str, u32>,
    preds: u32,
    /// Fronted adjectives resolved against a noun, keyed by token index.
    linked: BTreeMap<usize, FStructure>,
}

fn malformed(n: &CNode) -> BuildError {
    BuildError::Malformed {
        cat: n.cat,
        span: n.span.clone(),
    }
}

fn leaf_of(n: &CNode, pred: impl Fn(Pos) -> bool) -> Option<&Leaf> {
    n.kids.iter().filter_map(Child::as_leaf).find(|l| pred(l.entry.pos))
}

/// Adds a discourse-function filler, turning the attribute into a set when
/// a second filler of the same kind appears.
fn add_df(f: &mut FStructure, attr: &str, v: Value) -> Result<(), Clash> {
    let clash = |old: &Value| Clash {
        path: attr.to_string(),
        a: old.canonical(),
        b: v.canonical(),
    };
    let merged = match (f.attrs.remove(attr), &v) {
        (None, _) => v.clone(),
        (Some(Value::Fs(old)), Value::Fs(new)) if old.index != new.index => Value::set(vec![old, new.clone()]),
        (Some(Value::Set(mut xs)), Value::Fs(new)) => {
            xs.push(new.clone());
            Value::set(xs)
        }
        (Some(old), _) if old == v => old,
        (Some(old), _) => {
            let c = clash(&old);
            f.put(attr, old);
            return Err(c);
        }
    };
    f.put(attr, merged);
    Ok(())
}

/// Finite and lexical verb leaves of the clause rooted at `n`, ignoring
/// nested clauses and phrases.
fn clause_verbs(n: &CNode) -> (Option<&Leaf>, Option<&Leaf>) {
    fn nested(c: &CNode) -> bool {
        matches!(c.fannot.gf, Some(Gf::Parenthetical | Gf::Mod | Gf::Adjunct))
    }
    fn collect<'a>(n: &'a CNode, out: &mut Vec<&'a Leaf>) {
        for k in &n.kids {
            match k {
                Child::Leaf(l) if n.cat == Category::I0 || n.cat == Category::V0 => out.push(l),
                Child::Leaf(_) => {}
                Child::Node(c) if nested(c) => {}
                Child::Node(c) => {
                    use Category::*;
                    let spine = matches!(
                        (n.cat, c.cat),
                        (CP | CBar | IP, CBar | C0 | SpecCP | IP | IBar)
                            | (IBar, I0 | VP)
                            | (VP, SpecVP | VBar)
                            | (SpecCP | IP | SpecVP | VBar, FocP | TopP)
                            | (I0 | VBar | FocP | TopP, V0)
                    );
                    if spine && c.cat != C0 {
                        collect(c, out)
                    }
                }
            }
        }
    }
    let mut leaves = Vec::new();
    collect(n, &mut leaves);
    let finite = leaves
        .iter()
        .copied()
        .find(|l| matches!(l.entry.pos, Pos::Verb | Pos::Aux | Pos::Modal));
    let lexical = leaves
        .iter()
        .copied()
        .find(|l| matches!(l.entry.pos, Pos::PastPart | Pos::Inf | Pos::Gerund));
    (finite, lexical)
}

/// The complementizer and clause of a subordinate root `CP[C'[C0 IP]]`.
fn subordinate(n: &CNode) -> Option<&Leaf> {
    if n.cat != Category::CP {
        return None;
    }
    let cbar = n.child_nodes().find(|c| c.cat == Category::CBar)?;
    let c0 = cbar.child_nodes().find(|c| c.cat == Category::C0)?;
    leaf_of(c0, |p| p == Pos::Comp)
}

fn sign_list(xs: &[String]) -> String {
    format!("[{}]", xs.join(","))
}

impl Builder {
    fn fresh(&mut self, prefix: &'static str) -> String {
        let n = self.counters.entry(prefix).or_insert(0);
        *n += 1;
        format!("{prefix}{n}")
    }

    fn pred(&mut self, lemma: &str, form: Option<SemanticForm>) -> Value {
        self.preds += 1;
        Value::Pred(Pred {
            lemma: lemma.to_string(),
            form,
            instance: self.preds,
        })
    }

    fn prepass(&mut self, tree: &CNode) {
        let links: BTreeSet<usize> = tree
            .nodes()
            .iter()
            .flat_map(|n| n.focus_links.iter().copied())
            .collect();
        for n in tree.nodes() {
            if n.cat != Category::FocP {
                continue;
            }
            let Some(ap) = n.child_nodes().find(|c| c.cat == Category::AP) else {
                continue;
            };
            if let Some(i) = ap.head_leaf().and_then(|l| l.index) {
                if links.contains(&i) {
                    let f = self.ap(ap);
                    self.linked.insert(i, f);
                }
            }
        }
    }

    fn root(&mut self, n: &CNode) -> Result<FStructure, BuildError> {
        match subordinate(n) {
            Some(comp) => {
                let mut w = FStructure::with_index(self.fresh("f"));
                let sub = self.clause(n)?;
                w.put("main", Value::Fs(FStructure::new()));
                let mut adj = FStructure::new();
                adj.put_atom("sem_mark", comp.entry.lemma.clone());
                adj.put("sub", Value::Fs(sub));
                w.put("adj", Value::Fs(adj));
                Ok(w)
            }
            None => match n.cat {
                Category::NP => Ok(self.np(n, None)),
                _ => self.clause(n),
            },
        }
    }

    /// A finite clause: CP, IP, or a fragment with an implicit verb.
    fn clause(&mut self, n: &CNode) -> Result<FStructure, BuildError> {
        let mut f = FStructure::with_index(self.fresh("f"));
        let (fin, lex) = clause_verbs(n);
        let fin = fin.ok_or_else(|| BuildError::NoVerb(n.span.clone()))?;
        let head = lex.unwrap_or(fin);
        f.put("pred", self.pred(&head.entry.lemma, head.entry.semform.clone()));
        let m = &fin.entry.morph;
        if let Some(v) = head.entry.morph.voice.clone().or_else(|| m.voice.clone()) {
            f.put_atom("voice", v);
        }
        if let Some(mood) = &m.mood {
            f.put_atom("modo", mood.clone());
        }
        let tempo = match (fin.entry.pos, lex.map(|l| l.entry.pos)) {
            (Pos::Aux, Some(Pos::PastPart)) => match m.tense.as_deref() {
                Some("pres") | None => "pass_pross".to_string(),
                Some(_) => "trapass".to_string(),
            },
            _ => m.tense.clone().unwrap_or_else(|| "pres".into()),
        };
        f.put_atom("tempo", tempo);
        if fin.entry.pos == Pos::Modal {
            f.put_atom("supporto", fin.entry.lemma.clone());
        }
        if let Some(p) = &m.pers {
            f.put_atom("_pers", p.clone());
        }
        if let Some(x) = &m.num {
            f.put_atom("_num", x.clone());
        }
        f.put_atom("_finite", "+");
        self.place(n, &mut f)?;
        Ok(f)
    }

    fn nonfinite(&mut self, vp: &CNode) -> Result<FStructure, BuildError> {
        let v0 = vp
            .nodes()
            .into_iter()
            .find(|c| c.cat == Category::V0)
            .ok_or_else(|| malformed(vp))?;
        let leaf = leaf_of(v0, |p| p.is_verbal()).ok_or_else(|| malformed(v0))?;
        let mut g = FStructure::with_index(self.fresh("finf"));
        g.put("pred", self.pred(&leaf.entry.lemma, leaf.entry.semform.clone()));
        let (modo, tempo) = match leaf.entry.pos {
            Pos::Gerund => ("gerundio", "pres"),
            Pos::PastPart => ("participio", "pass"),
            _ => ("inf", "pres"),
        };
        g.put_atom("modo", modo);
        g.put_atom("tempo", tempo);
        g.put_atom("_cat", "vinf");
        g.put_atom(
            "_role",
            match leaf.entry.pos {
                Pos::Gerund => "gerundive",
                Pos::PastPart => "participial",
                _ => "scopo",
            },
        );
        self.place(vp, &mut g)?;
        Ok(g)
    }

    fn place(&mut self, n: &CNode, f: &mut FStructure) -> Result<(), BuildError> {
        for k in &n.kids {
            match k {
                Child::Leaf(l) => self.leaf_in_clause(l, f)?,
                Child::Node(c) => self.node_in_clause(c, n.cat, f)?,
            }
        }
        Ok(())
    }

    fn leaf_in_clause(&mut self, l: &Leaf, f: &mut FStructure) -> Result<(), BuildError> {
        match l.entry.pos {
            Pos::Neg => f.put_atom("pol", "neg"),
            Pos::Clitic => {
                let mut c = self.pronoun(&l.entry, "sn");
                match l.entry.morph.case.as_deref() {
                    Some("acc") => {
                        c.put_atom("_clitic", "+");
                        f.assign("ogg", Value::Fs(c))?;
                    }
                    _ => {
                        c.put_atom("_role", "dativo");
                        f.add_to_set("adjs", c);
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn node_in_clause(&mut self, c: &CNode, parent: Category, f: &mut FStructure) -> Result<(), BuildError> {
        if c.fannot.gf == Some(Gf::Parenthetical) {
            let mut p = self.clause(c)?;
            p.put_atom("_role", "parenthetical");
            f.add_to_set("adjs", p);
            return Ok(());
        }
        if let Some(df) = c.fannot.df {
            return self.discourse_function(c, df, f);
        }
        match c.cat {
            Category::CP
            | Category::CBar
            | Category::C0
            | Category::SpecCP
            | Category::IP
            | Category::IBar
            | Category::I0
            | Category::SpecIP
            | Category::SpecVP
            | Category::VBar => self.place(c, f),
            Category::VP if parent == Category::IBar => self.place(c, f),
            Category::VP => {
                let g = self.nonfinite(c)?;
                let free = f.form().is_some_and(|s| s.governs(GfSlot::Vcomp)) && !f.has("vcomp");
                if free {
                    f.assign("vcomp", Value::Fs(g))?;
                } else {
                    f.add_to_set("adjs", g);
                }
                Ok(())
            }
            Category::NP => {
                let mut x = self.np(c, None);
                match c.fannot.gf {
                    Some(Gf::Subj) => f.assign("sogg", Value::Fs(x))?,
                    Some(Gf::Obj) => f.assign("ogg", Value::Fs(x))?,
                    Some(Gf::Obj2) => f.assign("ogg2", Value::Fs(x))?,
                    _ if parent == Category::VBar && !f.has("ogg") => f.assign("ogg", Value::Fs(x))?,
                    _ => {
                        x.put_atom("_role", "tempo");
                        f.add_to_set("adjs", x);
                    }
                }
                Ok(())
            }
            Category::AP => {
                let mut x = self.ap(c);
                if c.fannot.gf == Some(Gf::Ncomp) {
                    f.assign("ncomp", Value::Fs(x))?;
                } else {
                    x.put_atom("_role", "predicativo");
                    f.add_to_set("adjs", x);
                }
                Ok(())
            }
            Category::AdvP => {
                let x = self.adverb(c);
                f.add_to_set("adjs", x);
                Ok(())
            }
            Category::PP => self.pp_in_clause(c, parent, f),
            _ => Ok(()),
        }
    }

    fn discourse_function(&mut self, c: &CNode, df: Df, f: &mut FStructure) -> Result<(), BuildError> {
        let inner = c.child_nodes().next().ok_or_else(|| malformed(c))?;
        let attr = match df {
            Df::Focus => "focus",
            Df::Topic => "topic",
        };
        let v = match inner.cat {
            Category::V0 => {
                let l = leaf_of(inner, |p| p.is_verbal()).ok_or_else(|| malformed(inner))?;
                Value::atom(l.entry.lemma.clone())
            }
            Category::AP => {
                let i = inner.head_leaf().and_then(|l| l.index);
                match i.and_then(|i| self.linked.get(&i)) {
                    Some(x) => Value::Fs(x.clone()),
                    None => Value::Fs(self.ap(inner)),
                }
            }
            Category::NP => {
                let mut x = self.np(inner, None);
                if c.fannot.hanging {
                    x.attrs.remove("gen");
                    x.attrs.remove("num");
                    x.put_atom("_hanging", "+");
                    f.put_atom("_hanging", "+");
                }
                Value::Fs(x)
            }
            Category::PP => Value::Fs(self.pp(inner)?),
            Category::VP => Value::Fs(self.nonfinite(inner)?),
            _ => return Err(malformed(inner)),
        };
        add_df(f, attr, v)?;
        Ok(())
    }

    fn pp_in_clause(&mut self, c: &CNode, parent: Category, f: &mut FStructure) -> Result<(), BuildError> {
        let mut p = self.pp(c)?;
        let form = f.form().cloned();
        let verbal = p.fs("ogg").and_then(|o| o.atom("_cat")) == Some("vinf");
        if verbal {
            let mut g = p.fs("ogg").cloned().unwrap_or_default();
            let free = form.as_ref().is_some_and(|s| s.governs(GfSlot::Vcomp)) && !f.has("vcomp");
            if free {
                f.assign("vcomp", Value::Fs(g))?;
            } else {
                g.put_atom("_role", "scopo");
                f.add_to_set("adjs", g);
            }
            return Ok(());
        }
        let prep = p.atom("sem_mark").unwrap_or_default().to_string();
        let obl = form.as_ref().and_then(|s| s.arg(GfSlot::Obl));
        let marked = obl.is_some_and(|a| a.marker.as_deref().is_none_or(|m| m == prep));
        if parent == Category::VBar && marked && !f.has("obl") {
            p.put_atom("_ogg_role", "nil");
            f.assign("obl", Value::Fs(p))?;
        } else {
            let role = prep_role(&prep);
            p.put_atom("_role", role);
            p.put_atom("_ogg_role", role);
            f.add_to_set("adjs", p);
        }
        Ok(())
    }

    fn pp(&mut self, n: &CNode) -> Result<FStructure, BuildError> {
        let parts: Vec<&CNode> = n.child_nodes().filter(|c| c.cat == Category::PP).collect();
        if parts.len() >= 2 {
            let conj = leaf_of(n, |p| p == Pos::Conj).ok_or_else(|| malformed(n))?;
            let mut members = Vec::new();
            let mut mark = None;
            for part in parts {
                let p = self.pp(part)?;
                mark = mark.or_else(|| p.atom("sem_mark").map(str::to_string));
                members.extend(p.fs("ogg").cloned());
            }
            let mut coord = FStructure::with_index(self.fresh("sn"));
            coord.put_atom("coord", conj.entry.lemma.clone());
            coord.put_atom("num", "plur");
            coord.put("conj", Value::set(members));
            coord.put_atom("_cat", "np");
            let mut p = FStructure::new();
            p.put_atom("sem_mark", mark.unwrap_or_default());
            p.put("ogg", Value::Fs(coord));
            p.put_atom("_cat", "pp");
            return Ok(p);
        }
        let prep = leaf_of(n, |p| matches!(p, Pos::Prep | Pos::ArtPrep)).ok_or_else(|| malformed(n))?;
        let obj = n.child_nodes().next().ok_or_else(|| malformed(n))?;
        let o = match obj.cat {
            Category::VP => self.nonfinite(obj)?,
            Category::NP => self.np(obj, Some(&prep.entry.morph)),
            _ => return Err(malformed(obj)),
        };
        let mut p = FStructure::new();
        p.put_atom("sem_mark", prep.entry.lemma.clone());
        p.put("ogg", Value::Fs(o));
        p.put_atom("_cat", "pp");
        Ok(p)
    }

    fn pronoun(&mut self, e: &LexicalEntry, prefix: &'static str) -> FStructure {
        let mut f = FStructure::with_index(self.fresh(prefix));
        if !e.semclass.is_empty() {
            f.put_atom("cat", sign_list(&e.semclass));
        }
        f.put("pred", self.pred("pro", None));
        self.morph(&mut f, &e.morph, true);
        if let Some(t) = &e.tabref {
            f.put_atom("tab_ref", t.to_string());
        }
        f.put_atom("_cat", "np");
        f
    }

    fn morph(&self, f: &mut FStructure, m: &Morph, pers: bool) {
        if let Some(g) = &m.gen {
            f.put_atom("gen", g.clone());
        }
        if let Some(n) = &m.num {
            f.put_atom("num", n.clone());
        }
        if pers {
            f.put_atom("pers", m.pers.clone().unwrap_or_else(|| "3".into()));
        }
        if let Some(c) = &m.case {
            f.put_atom("caso", c.clone());
        }
    }

    fn spec(f: &mut FStructure, def: &str) {
        let mut s = FStructure::new();
        s.put_atom("def", def);
        f.put("spec", Value::Fs(s));
    }

    fn np(&mut self, n: &CNode, inherited: Option<&Morph>) -> FStructure {
        let members: Vec<&CNode> = n.child_nodes().filter(|c| c.cat == Category::NP).collect();
        if members.len() >= 2 && leaf_of(n, |p| p == Pos::Conj).is_some() {
            let conj = leaf_of(n, |p| p == Pos::Conj).expect("checked");
            let mut f = FStructure::with_index(self.fresh("sn"));
            f.put_atom("coord", conj.entry.lemma.clone());
            f.put_atom("num", "plur");
            let items = members.iter().map(|m| self.np(m, inherited)).collect();
            f.put("conj", Value::set(items));
            f.put_atom("_cat", "np");
            return f;
        }
        let mut f = FStructure::with_index(self.fresh("sn"));
        let head = leaf_of(n, |p| p.is_nominal_head());
        let relational = head.is_some_and(|h| h.entry.pos == Pos::RNoun);
        let mut def = inherited.and_then(|m| m.def.clone());
        if let Some(h) = head {
            let e = &h.entry;
            if !e.semclass.is_empty() {
                f.put_atom("cat", sign_list(&e.semclass));
            }
            let form = if relational { e.semform.clone() } else { None };
            f.put("pred", self.pred(&e.lemma, form));
            self.morph(&mut f, &e.morph, true);
            if let Some(t) = &e.tabref {
                f.put_atom("tab_ref", t.to_string());
            }
            if matches!(e.pos, Pos::Pron | Pos::Propn) {
                def.get_or_insert_with(|| "+".into());
            }
            if e.pos == Pos::Propn {
                f.put_atom("_propn", "+");
            }
            if e.pos == Pos::Pron {
                f.put_atom("antecedente", "esterno");
                let third = e.morph.pers.as_deref() == Some("3");
                f.put_atom("interpretazione", if third { "specifica" } else { "definita" });
            }
        }
        for k in &n.kids {
            match k {
                Child::Leaf(l) if l.entry.pos == Pos::Det => {
                    if let Some(d) = &l.entry.morph.def {
                        def = Some(d.clone());
                    }
                }
                Child::Leaf(l) if l.entry.pos == Pos::Poss => {
                    let p = self.possessive(&l.entry);
                    f.put("poss", Value::Fs(p));
                }
                Child::Leaf(_) => {}
                Child::Node(c) => match c.cat {
                    Category::AP => {
                        let a = self.ap(c);
                        f.add_to_set("mods", a);
                    }
                    Category::FocP => {
                        let Some(inner) = c.child_nodes().next() else { continue };
                        let i = inner.head_leaf().and_then(|l| l.index);
                        let a = match i.and_then(|i| self.linked.get(&i)) {
                            Some(x) => x.clone(),
                            None => self.ap(inner),
                        };
                        f.add_to_set("mods", a.clone());
                        let _ = add_df(&mut f, "focus", Value::Fs(a));
                    }
                    Category::ScrNP | Category::PP => {
                        let pp = if c.cat == Category::ScrNP {
                            c.child_nodes().next()
                        } else {
                            Some(c)
                        };
                        let Some(pp) = pp else { continue };
                        let Ok(mut p) = self.pp(pp) else { continue };
                        let prep = p.atom("sem_mark").unwrap_or_default().to_string();
                        if relational && prep == "di" && !f.has("ncomp") {
                            if let Some(o) = p.fs("ogg").cloned() {
                                f.put("ncomp", Value::Fs(o));
                            }
                        } else {
                            let role = prep_role(&prep);
                            p.put_atom("_role", role);
                            p.put_atom("_ogg_role", role);
                            f.add_to_set("mods", p);
                        }
                    }
                    Category::NP => {
                        let mut a = self.np(c, None);
                        a.put_atom("_role", "appos");
                        f.add_to_set("mods", a);
                    }
                    Category::CP => {
                        let idx = f.index.clone().unwrap_or_default();
                        if let Ok(r) = self.relative(c, &idx) {
                            f.add_to_set("mods", r);
                        }
                    }
                    _ => {}
                },
            }
        }
        for i in &n.focus_links {
            if let Some(a) = self.linked.get(i).cloned() {
                f.add_to_set("mods", a);
            }
        }
        Self::spec(&mut f, def.as_deref().unwrap_or("'0'"));
        f.put_atom("_cat", "np");
        f
    }

    fn possessive(&mut self, e: &LexicalEntry) -> FStructure {
        let mut p = FStructure::with_index(self.fresh("sn"));
        p.put("pred", self.pred(&e.lemma, None));
        self.morph(&mut p, &e.morph, false);
        Self::spec(&mut p, "+");
        if let Some(t) = &e.tabref {
            p.put_atom("tab_ref", t.to_string());
        }
        p.put_atom("antecedente", "esterno");
        p.put_atom("interpretazione", "definita");
        p
    }

    fn ap(&mut self, n: &CNode) -> FStructure {
        let mut f = FStructure::with_index(self.fresh("sa"));
        if let Some(h) = leaf_of(n, |p| p == Pos::Adj) {
            let e = &h.entry;
            if !e.semclass.is_empty() {
                f.put_atom("cat", sign_list(&e.semclass));
            }
            f.put("pred", self.pred(&e.lemma, None));
            self.morph(&mut f, &e.morph, false);
            if let Some(t) = &e.tabref {
                f.put_atom("tab_ref", t.to_string());
            }
        }
        for c in n.child_nodes().filter(|c| c.cat == Category::AdvP) {
            let a = self.adverb(c);
            f.add_to_set("adjs", a);
        }
        f.put_atom("_cat", "ap");
        f.put_atom("_role", "mod_a");
        f
    }

    fn adverb(&mut self, n: &CNode) -> FStructure {
        let mut f = FStructure::new();
        if let Some(h) = leaf_of(n, |p| p == Pos::Adv) {
            f.put("pred", self.pred(&h.entry.lemma, None));
            let role = h.entry.semclass.first().cloned().unwrap_or_else(|| "modo".into());
            f.put_atom("_role", role);
        }
        f
    }

    /// A relative clause whose pronoun becomes the clause topic.
    fn relative(&mut self, cp: &CNode, head: &str) -> Result<FStructure, BuildError> {
        let rel = cp
            .nodes()
            .into_iter()
            .find(|c| c.cat == Category::C0)
            .and_then(|c0| leaf_of(c0, |p| p == Pos::RelPron))
            .ok_or_else(|| malformed(cp))?
            .entry
            .clone();
        let mut g = self.clause(cp)?;
        let locative = rel.morph.case.as_deref() == Some("obl");
        let mut t = FStructure::with_index(self.fresh(if locative { "sp" } else { "sn" }));
        if !rel.semclass.is_empty() {
            t.put_atom("cat", sign_list(&rel.semclass));
        }
        t.put("pred", self.pred(&rel.lemma, None));
        self.morph(&mut t, &rel.morph, true);
        if let Some(tr) = &rel.tabref {
            t.put_atom("tab_ref", tr.to_string());
        }
        t.put_atom("controllore", head);
        t.put_atom("_relpron", "+");
        t.put_atom("_cat", if locative { "pp" } else { "np" });
        add_df(&mut g, "topic", Value::Fs(t))?;
        g.put_atom("_role", "relativa");
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstruct::{FAnnot, Leaf};
    use crate::lexicon::Lexicon;

    fn leaf(lex: &Lexicon, i: usize, w: &str, pos: Pos) -> Child {
        let e = lex.lookup(w).into_iter().find(|e| e.pos == pos).unwrap();
        Child::Leaf(Leaf::new(i, e))
    }

    #[test]
    fn single_word_np() {
        let lex = Lexicon::bundled();
        let np = CNode::new(Category::NP, vec![leaf(&lex, 0, "primavera", Pos::Noun)]);
        let f = build_fstructure(&np).unwrap();
        assert_eq!(f.index.as_deref(), Some("sn1"));
        assert_eq!(f.lemma(), Some("primavera"));
        assert_eq!(f.atom("pers"), Some("3"));
        assert_eq!(f.fs("spec").and_then(|s| s.atom("def")), Some("'0'"));
    }

    #[test]
    fn canonical_clause() {
        let lex = Lexicon::bundled();
        let subj = CNode::new(
            Category::NP,
            vec![leaf(&lex, 0, "il", Pos::Det), leaf(&lex, 1, "sognatore", Pos::Noun)],
        )
        .with_annot(FAnnot::gf(Gf::Subj));
        let obj = CNode::new(Category::NP, vec![leaf(&lex, 3, "lei", Pos::Pron)]).with_annot(FAnnot::gf(Gf::Obj));
        let i0 = CNode::new(Category::I0, vec![leaf(&lex, 2, "educa", Pos::Verb)]).as_head();
        let vp = CNode::new(
            Category::VP,
            vec![Child::Node(CNode::new(Category::VBar, vec![Child::Node(obj)]))],
        );
        let ibar = CNode::new(Category::IBar, vec![Child::Node(i0), Child::Node(vp)]);
        let ip = CNode::new(
            Category::IP,
            vec![
                Child::Node(CNode::new(Category::SpecIP, vec![Child::Node(subj)])),
                Child::Node(ibar),
            ],
        );
        let f = build_fstructure(&ip).unwrap();
        assert_eq!(f.lemma(), Some("educare"));
        assert_eq!(f.fs("sogg").and_then(|s| s.lemma()), Some("sognatore"));
        assert_eq!(f.fs("ogg").and_then(|s| s.lemma()), Some("lei"));
        assert_eq!(f.atom("modo"), Some("ind"));
        let mut preds = 0;
        f.walk(&mut |_, x| preds += usize::from(x.form().is_some()));
        assert_eq!(preds, 1);
    }

    #[test]
    fn second_filler_makes_a_set() {
        let mut f = FStructure::new();
        add_df(&mut f, "topic", Value::Fs(FStructure::with_index("sn1"))).unwrap();
        add_df(&mut f, "topic", Value::Fs(FStructure::with_index("sn2"))).unwrap();
        assert_eq!(f.set_items("topic").len(), 2);
    }
}
