//! Left-to-right grouping of tagged tokens into phrasal units.

use std::cell::Cell;
use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Fault, Strategy, LOOKAHEAD};
use crate::cstruct::{CNode, Category, Child, Df, FAnnot, Gf, Leaf};
use crate::focus::FocusStack;
use crate::grammar::{Grammar, Rule};
use crate::lexicon::{LexicalEntry, Lexicon, Pos};

pub(crate) struct Ctx<'a> {
    pub toks: &'a [Arc<LexicalEntry>],
    pub en: &'a BTreeSet<Strategy>,
    pub lexicon: &'a Lexicon,
    pub grammar: &'a Grammar,
    pub enabled: &'a dyn Fn(&Rule) -> bool,
    /// Peak count of constituents waiting for their clause's verb.
    pub stm: Cell<usize>,
}

/// A phrase or bare word awaiting clause assembly.
#[derive(Debug, Clone)]
pub(crate) struct Unit {
    pub item: Child,
    pub used: BTreeSet<Strategy>,
}

impl Unit {
    pub fn node(n: CNode) -> Unit {
        Unit {
            item: Child::Node(n),
            used: BTreeSet::new(),
        }
    }

    pub fn leaf(l: Leaf) -> Unit {
        Unit {
            item: Child::Leaf(l),
            used: BTreeSet::new(),
        }
    }

    pub fn using(mut self, used: &BTreeSet<Strategy>) -> Unit {
        self.used.extend(used.iter().copied());
        self
    }

    pub fn cat(&self) -> Option<Category> {
        self.item.as_node().map(|n| n.cat)
    }

    pub fn pos(&self) -> Option<Pos> {
        self.item.as_leaf().map(|l| l.entry.pos)
    }

    pub fn is(&self, cat: Category) -> bool {
        self.cat() == Some(cat)
    }

    pub fn node_ref(&self) -> Option<&CNode> {
        self.item.as_node()
    }

    pub fn start(&self) -> usize {
        match &self.item {
            Child::Node(n) => n.span.start,
            Child::Leaf(l) => l.index.unwrap_or(0),
        }
    }

    pub fn end(&self) -> usize {
        match &self.item {
            Child::Node(n) => n.span.end,
            Child::Leaf(l) => l.index.map_or(0, |i| i + 1),
        }
    }

    /// A bare non-finite verb form (stranded or fronted participle/infinitive).
    pub fn is_bare_v0(&self) -> bool {
        self.is(Category::V0)
    }

    pub fn head_entry_shared(&self) -> Option<Arc<LexicalEntry>> {
        match &self.item {
            Child::Leaf(l) => Some(l.entry.clone()),
            Child::Node(n) => n.head_leaf().map(|l| l.entry.clone()),
        }
    }

    pub fn head_entry(&self) -> Option<&LexicalEntry> {
        match &self.item {
            Child::Leaf(l) => Some(l.entry.as_ref()),
            Child::Node(n) => n.head_leaf().map(|l| l.entry.as_ref()),
        }
    }
}

pub(crate) fn wrap(cat: Category, kids: Vec<Child>) -> CNode {
    CNode::new(cat, kids)
}

pub(crate) fn annotated(cat: Category, kid: CNode, fannot: FAnnot) -> CNode {
    CNode::new(cat, vec![Child::Node(kid)]).with_annot(fannot)
}

impl Ctx<'_> {
    pub fn on(&self, s: Strategy) -> bool {
        self.en.contains(&s)
    }

    pub fn pos(&self, i: usize) -> Option<Pos> {
        self.toks.get(i).map(|e| e.pos)
    }

    pub fn leaf(&self, i: usize) -> Leaf {
        Leaf::new(i, self.toks[i].clone())
    }

    fn lemma(&self, i: usize) -> &str {
        &self.toks[i].lemma
    }

    /// Units covering `start..end`; stops at the first fault.
    pub fn units(&self, start: usize, end: usize) -> (Vec<Unit>, Option<Fault>) {
        let mut out = Vec::new();
        let mut i = start;
        while i < end {
            match self.unit_at(i, end) {
                Ok((u, j)) => {
                    debug_assert!(j > i);
                    out.push(u);
                    i = j;
                }
                Err(f) => return (out, Some(f)),
            }
        }
        (out, None)
    }

    fn unit_at(&self, i: usize, end: usize) -> Result<(Unit, usize), Fault> {
        let pos = self.toks[i].pos;
        match pos {
            Pos::Det | Pos::Poss | Pos::Noun | Pos::RNoun | Pos::Propn | Pos::Pron => self
                .np(i, end, Vec::new(), BTreeSet::new())?
                .ok_or_else(|| Fault::new(i, "noun phrase")),
            Pos::Adj => match self.np(i, end, Vec::new(), BTreeSet::new())? {
                Some(r) => Ok(r),
                None => Ok(self.ap(i)),
            },
            Pos::Adv => {
                if self.pos(i + 1) == Some(Pos::Adj) && i + 1 < end {
                    Ok(self.ap(i))
                } else {
                    let n = wrap(Category::AdvP, vec![Child::Leaf(self.leaf(i))]);
                    Ok((Unit::node(n), i + 1))
                }
            }
            Pos::Prep | Pos::ArtPrep => self.pp_or_scrambled(i, end),
            Pos::Inf => {
                let after_host = i > 0 && matches!(self.pos(i - 1), Some(Pos::Aux | Pos::Modal));
                let before_finite = matches!(
                    self.pos(i + 1),
                    Some(Pos::Verb | Pos::Aux | Pos::Modal | Pos::Clitic | Pos::Neg)
                );
                if after_host || before_finite {
                    Ok((self.bare_v0(i), i + 1))
                } else {
                    self.nested_vp(i, end)
                }
            }
            Pos::Gerund => self.nested_vp(i, end),
            Pos::PastPart => {
                let hosted = self.toks[..i].iter().any(|t| {
                    matches!(t.pos, Pos::Aux | Pos::Modal)
                        || (t.pos == Pos::Verb && matches!(t.lemma.as_str(), "avere" | "essere"))
                });
                if hosted {
                    Ok((self.bare_v0(i), i + 1))
                } else {
                    self.nested_vp(i, end)
                }
            }
            _ => Ok((Unit::leaf(self.leaf(i)), i + 1)),
        }
    }

    fn bare_v0(&self, i: usize) -> Unit {
        Unit::node(wrap(Category::V0, vec![Child::Leaf(self.leaf(i))]).as_head())
    }

    /// AP at `i`: an adjective, optionally preceded by a degree adverb.
    pub fn ap(&self, i: usize) -> (Unit, usize) {
        if self.toks[i].pos == Pos::Adv {
            let adv = wrap(Category::AdvP, vec![Child::Leaf(self.leaf(i))]);
            let n = wrap(Category::AP, vec![Child::Node(adv), Child::Leaf(self.leaf(i + 1))]);
            (Unit::node(n), i + 2)
        } else {
            (Unit::node(wrap(Category::AP, vec![Child::Leaf(self.leaf(i))])), i + 1)
        }
    }

    /// Whether a relational noun heads material starting at `k`, reached
    /// through determiners and adjectives within the lookahead window.
    fn relational_head_ahead(&self, k: usize, end: usize) -> bool {
        for t in k..end.min(k + LOOKAHEAD) {
            match self.toks[t].pos {
                Pos::Det | Pos::Poss | Pos::Adj => continue,
                Pos::RNoun => return true,
                _ => return false,
            }
        }
        false
    }

    fn is_genitive(&self, j: usize) -> bool {
        matches!(self.pos(j), Some(Pos::Prep | Pos::ArtPrep)) && self.lemma(j) == "di"
    }

    /// Noun phrase starting at `i`, after any already-built `prefix`
    /// children. `Ok(None)` when only adjectives were found.
    pub fn np(
        &self,
        i: usize,
        end: usize,
        prefix: Vec<Child>,
        mut used: BTreeSet<Strategy>,
    ) -> Result<Option<(Unit, usize)>, Fault> {
        let mut kids = prefix;
        let mut j = i;
        let mut has_det = false;
        if j < end && self.toks[j].pos == Pos::Det {
            kids.push(Child::Leaf(self.leaf(j)));
            has_det = true;
            j += 1;
        }
        if j < end && self.toks[j].pos == Pos::Poss {
            kids.push(Child::Leaf(self.leaf(j)));
            j += 1;
        }
        let mut pre_aps = Vec::new();
        while j < end {
            let p = self.toks[j].pos;
            if p == Pos::Adj || (p == Pos::Adv && self.pos(j + 1) == Some(Pos::Adj) && j + 1 < end) {
                let (u, k) = self.ap(j);
                pre_aps.push(u.item);
                j = k;
            } else {
                break;
            }
        }
        let mut stack = FocusStack::new();
        let head_ok = |p: Option<Pos>| p.is_some_and(|p| p.is_nominal_head());
        if !(j < end && head_ok(self.pos(j))) {
            // scrambled genitive between the modifiers and a relational head
            let scr = self.on(Strategy::ScrambledGenitive)
                && j < end
                && self.is_genitive(j)
                && (has_det || !pre_aps.is_empty());
            if scr {
                let (pp, k) = self.pp(j, end)?;
                if k < end && self.relational_head_ahead(k, end) && self.pos(k) == Some(Pos::RNoun) {
                    for ap in pre_aps.drain(..) {
                        if let Child::Node(n) = ap {
                            stack.suspend(n);
                        }
                    }
                    let scr = annotated(Category::ScrNP, pp.node_ref().unwrap().clone(), FAnnot::default());
                    used.insert(Strategy::ScrambledGenitive);
                    used.extend(pp.used.iter().copied());
                    // FocP placeholders are filled once the head resolves them
                    kids.push(Child::Node(scr));
                    j = k;
                } else if has_det {
                    return Err(Fault::new(j, "noun"));
                } else {
                    return Ok(None);
                }
            } else if has_det || !kids.is_empty() {
                return Err(Fault::new(j.min(end), "noun"));
            } else {
                return Ok(None);
            }
        }
        kids.extend(pre_aps);
        let head_pos = self.toks[j].pos;
        let head_morph = self.toks[j].morph.clone();
        kids.push(Child::Leaf(self.leaf(j)));
        j += 1;
        let mut apposed = false;
        loop {
            if j >= end {
                break;
            }
            let p = self.toks[j].pos;
            if p == Pos::Noun && head_pos == Pos::Noun && !apposed {
                if let Some((u, k)) = self.np(j, end, Vec::new(), BTreeSet::new())? {
                    used.extend(u.used.iter().copied());
                    kids.push(u.item);
                    j = k;
                    apposed = true;
                    continue;
                }
            }
            if p == Pos::Adj && self.toks[j].morph.agrees_gn(&head_morph) {
                let next_is_head = self.pos(j + 1).is_some_and(|q| q.is_nominal_head());
                if !next_is_head {
                    let (u, k) = self.ap(j);
                    kids.push(u.item);
                    j = k;
                    continue;
                }
            }
            if self.is_genitive(j) {
                let (pp, k) = self.pp(j, end)?;
                let forward = self.on(Strategy::ScrambledGenitive)
                    && k < end
                    && matches!(self.pos(k), Some(Pos::Det | Pos::Poss | Pos::Adj))
                    && self.relational_head_ahead(k, end);
                if !forward {
                    used.extend(pp.used.iter().copied());
                    kids.push(pp.item);
                    j = k;
                    continue;
                }
            }
            if p == Pos::RelPron {
                let cp = self.relative(j, end)?;
                used.extend(cp.used.iter().copied());
                kids.push(cp.item);
                j = end;
                continue;
            }
            break;
        }
        let mut np = wrap(Category::NP, kids);
        if !stack.is_empty() {
            let mut resolved = Vec::new();
            while !stack.is_empty() {
                let ap = stack
                    .resolve(&mut np)
                    .map_err(|_| Fault::new(np.span.start, "agreeing head for fronted modifier"))?;
                resolved.push(ap);
            }
            // place the resolved foci before the scrambled genitive
            let at = np
                .kids
                .iter()
                .position(|k| k.as_node().is_some_and(|n| n.cat == Category::ScrNP))
                .unwrap_or(0);
            for ap in resolved.into_iter() {
                let foc = annotated(Category::FocP, ap, FAnnot::df(Df::Focus));
                np.kids.insert(at, Child::Node(foc));
            }
            np.recompute_span();
        }
        let mut unit = Unit::node(np);
        unit.used = used;
        // coordination
        if j + 1 < end && self.toks[j].pos == Pos::Conj && self.lemma(j) == "e" {
            if let Some((rhs, k)) = self.np(j + 1, end, Vec::new(), BTreeSet::new())? {
                let lhs = unit.item.clone();
                let mut used = unit.used.clone();
                used.extend(rhs.used.iter().copied());
                let coord = wrap(Category::NP, vec![lhs, Child::Leaf(self.leaf(j)), rhs.item]);
                let mut u = Unit::node(coord);
                u.used = used;
                return Ok(Some((u, k)));
            }
        }
        Ok(Some((unit, j)))
    }

    /// Prepositional phrase at `i`, with coordination of a following PP.
    pub fn pp(&self, i: usize, end: usize) -> Result<(Unit, usize), Fault> {
        let (first, j) = self.simple_pp(i, end)?;
        if j + 1 < end
            && self.toks[j].pos == Pos::Conj
            && self.lemma(j) == "e"
            && matches!(self.pos(j + 1), Some(Pos::Prep | Pos::ArtPrep))
        {
            if let Ok((second, k)) = self.simple_pp(j + 1, end) {
                let mut used = first.used.clone();
                used.extend(second.used.iter().copied());
                let n = wrap(Category::PP, vec![first.item, Child::Leaf(self.leaf(j)), second.item]);
                let mut u = Unit::node(n);
                u.used = used;
                return Ok((u, k));
            }
        }
        Ok((first, j))
    }

    fn simple_pp(&self, i: usize, end: usize) -> Result<(Unit, usize), Fault> {
        if i + 1 >= end {
            return Err(Fault::new(end, "prepositional object"));
        }
        let prep = Child::Leaf(self.leaf(i));
        let (obj, j) = if self.toks[i + 1].pos == Pos::Inf {
            self.nested_vp(i + 1, end)?
        } else {
            self.np(i + 1, end, Vec::new(), BTreeSet::new())?
                .ok_or_else(|| Fault::new(i + 1, "noun phrase"))?
        };
        let used = obj.used.clone();
        let mut u = Unit::node(wrap(Category::PP, vec![prep, obj.item]));
        u.used = used;
        Ok((u, j))
    }

    /// A PP, or an NP led by a scrambled genitive PP.
    fn pp_or_scrambled(&self, i: usize, end: usize) -> Result<(Unit, usize), Fault> {
        let (pp, k) = self.pp(i, end)?;
        if self.on(Strategy::ScrambledGenitive)
            && self.is_genitive(i)
            && k < end
            && matches!(self.pos(k), Some(Pos::Det | Pos::Poss | Pos::Adj))
            && self.relational_head_ahead(k, end)
        {
            let scr = annotated(Category::ScrNP, pp.node_ref().unwrap().clone(), FAnnot::default());
            let mut used = pp.used.clone();
            used.insert(Strategy::ScrambledGenitive);
            if let Some(r) = self.np(k, end, vec![Child::Node(scr)], used)? {
                return Ok(r);
            }
        }
        Ok((pp, k))
    }

    /// Non-finite VP at `i`, taking the longest run of following units that
    /// forms a licensed V'.
    pub fn nested_vp(&self, i: usize, end: usize) -> Result<(Unit, usize), Fault> {
        let v0 = wrap(Category::V0, vec![Child::Leaf(self.leaf(i))]).as_head();
        let frame = self.toks[i].semform.clone();
        let (units, _) = self.units(i + 1, end);
        let take = units
            .iter()
            .take_while(|u| {
                matches!(
                    u.cat(),
                    Some(Category::NP | Category::PP | Category::AP | Category::AdvP | Category::VP)
                )
            })
            .count();
        for k in (0..=take).rev() {
            let vs = self.vbar_variants(Some(v0.clone()), frame.as_ref(), false, &units[..k], None);
            if let Some(v) = vs.into_iter().next() {
                let mut kids = Vec::new();
                if let Some(spec) = v.spec {
                    kids.push(Child::Node(spec));
                }
                kids.push(Child::Node(v.vbar));
                let vp = wrap(Category::VP, kids);
                let j = if k == 0 { i + 1 } else { units[k - 1].end() };
                let mut u = Unit::node(vp);
                u.used = v.used;
                return Ok((u, j));
            }
        }
        Err(Fault::new(i, "verb phrase"))
    }

    /// Relative clause from the relative pronoun at `j` to `end`.
    fn relative(&self, j: usize, end: usize) -> Result<Unit, Fault> {
        let (units, fault) = self.units(j, end);
        if let Some(f) = fault {
            return Err(f);
        }
        let cands = self.clause(&units, end)?;
        cands
            .into_iter()
            .find(|c| self.grammar.validate(&c.tree, self.enabled).is_ok())
            .map(|c| {
                let mut u = Unit::node(c.tree.with_annot(FAnnot::gf(Gf::Mod)));
                u.used = c.used;
                u
            })
            .ok_or_else(|| Fault::new(j, "relative clause"))
    }
}
