//! Clause assembly over phrasal units.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::chunk::{annotated, wrap, Ctx, Unit};
use super::{Cand, Fault, Strategy};
use crate::cstruct::{CNode, Category, Child, Df, FAnnot, Gf, Leaf};
use crate::focus::FocusStack;
use crate::grammar::Tier;
use crate::lexicon::{GfSlot, LexicalEntry, Morph, Pos, SemanticForm};

/// One analysis of the material after the finite verb.
#[derive(Debug, Clone)]
pub(crate) struct Vbar {
    pub spec: Option<CNode>,
    pub vbar: CNode,
    pub extraposed: Option<CNode>,
    pub used: BTreeSet<Strategy>,
}

/// One analysis of the material before the finite verb.
#[derive(Debug, Clone, Default)]
struct Pre {
    spec_cp: Option<CNode>,
    hanging: Option<CNode>,
    kids: Vec<Child>,
    has_subject: bool,
    /// Fronted adjectival foci still to be resolved against a nominal head.
    pending: Vec<CNode>,
    used: BTreeSet<Strategy>,
}

fn governs(frame: Option<&SemanticForm>, slot: GfSlot) -> bool {
    frame.is_some_and(|f| f.governs(slot))
}

/// Dislocated nominals must be determined: a bare common noun cannot be
/// extraposed.
fn referential(u: &Unit) -> bool {
    let Some(n) = u.node_ref() else { return false };
    n.kids.iter().any(|k| {
        k.as_leaf()
            .is_some_and(|l| matches!(l.entry.pos, Pos::Det | Pos::Poss | Pos::Propn | Pos::Pron))
    })
}

fn subject_agrees(u: &Unit, vm: &Morph) -> bool {
    u.is(Category::NP) && u.head_entry().is_some_and(|e| e.morph.agrees_pn(vm))
}

fn with_gf(u: &Unit, gf: Gf) -> CNode {
    u.node_ref().expect("phrasal unit").clone().with_annot(FAnnot::gf(gf))
}

fn is_bare_np(n: &CNode) -> bool {
    n.cat == Category::NP
        && !n
            .kids
            .iter()
            .any(|k| k.as_leaf().is_some_and(|l| matches!(l.entry.pos, Pos::Det | Pos::Poss)))
        && n.head_leaf()
            .is_some_and(|l| matches!(l.entry.pos, Pos::Noun | Pos::RNoun))
}

fn has_estens_modifier(n: &CNode) -> bool {
    n.child_nodes()
        .filter(|c| c.cat == Category::AP)
        .any(|c| c.head_leaf().is_some_and(|l| l.entry.has_class("estens")))
}

fn is_circumstantial(u: &Unit) -> bool {
    u.is(Category::NP) && u.head_entry().is_some_and(|e| e.has_class("circostanza"))
}

fn is_adjunct(u: &Unit) -> bool {
    u.is(Category::AdvP) || u.is(Category::PP) || is_circumstantial(u)
}

/// Cartesian product of per-item label preferences, in lexicographic order.
fn labelings(prefs: &[Vec<Df>]) -> Vec<Vec<Df>> {
    let mut out = vec![Vec::new()];
    for p in prefs {
        let mut next = Vec::new();
        for prefix in &out {
            for d in p {
                let mut v = prefix.clone();
                v.push(*d);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn df_node(u: &Unit, d: Df) -> CNode {
    let cat = match d {
        Df::Focus => Category::FocP,
        Df::Topic => Category::TopP,
    };
    annotated(cat, u.node_ref().expect("phrasal unit").clone(), FAnnot::df(d))
}

/// The copula understood in verbless predications.
pub(crate) fn implicit_copula() -> LexicalEntry {
    LexicalEntry {
        surface: "è".into(),
        lemma: "essere".into(),
        pos: Pos::Verb,
        morph: Morph::parse("pers=3,num=sing,tense=pres,mood=ind,voice=attiva").expect("valid morph"),
        semclass: vec!["stato".into()],
        tabref: None,
        semform: Some(SemanticForm::parse("essere", "[np/subj1/theme_unaff/[],ap/ncomp/prop/[]]").expect("valid form")),
        comment: None,
    }
}

impl Ctx<'_> {
    /// Licenses `kids` under `cat`; returns the strategy of a noncanonical
    /// licensing rule, or `None` inside the outer option for ordinary rules.
    fn license(&self, cat: Category, kids: &[Child]) -> Option<Option<Strategy>> {
        let node = CNode::new(cat, kids.to_vec());
        let rule = self.grammar.license(&node, self.enabled)?;
        Some(if rule.tier == Tier::Noncanonical {
            rule.id.as_deref().and_then(Strategy::from_id)
        } else {
            None
        })
    }

    /// V' analyses of `q`, in preference order.
    pub fn vbar_variants(
        &self,
        v0: Option<CNode>,
        frame: Option<&SemanticForm>,
        obj_filled: bool,
        q: &[Unit],
        subj: Option<&Morph>,
    ) -> Vec<Vbar> {
        let obj_ok = governs(frame, GfSlot::Obj1) && !obj_filled;
        let ncomp_ok = governs(frame, GfSlot::Ncomp);
        let mut out = Vec::new();
        let base: Vec<Child> = v0.iter().cloned().map(Child::Node).collect();
        let unit_used =
            |us: &[Unit]| -> BTreeSet<Strategy> { us.iter().flat_map(|u| u.used.iter().copied()).collect() };

        // canonical complement order
        let canonical = |us: &[Unit]| -> Option<(CNode, BTreeSet<Strategy>)> {
            let mut kids = base.clone();
            let mut nps = 0;
            for u in us {
                match u.cat() {
                    Some(Category::NP) => {
                        nps += 1;
                        if !obj_ok || nps > 1 {
                            return None;
                        }
                        kids.push(Child::Node(with_gf(u, Gf::Obj)));
                    }
                    Some(Category::AP) => {
                        if !ncomp_ok {
                            return None;
                        }
                        kids.push(Child::Node(with_gf(u, Gf::Ncomp)));
                    }
                    Some(Category::PP | Category::AdvP | Category::VP | Category::CP) => kids.push(u.item.clone()),
                    _ => return None,
                }
            }
            let s = self.license(Category::VBar, &kids)?;
            let mut used = unit_used(us);
            used.extend(s);
            Some((CNode::new(Category::VBar, kids), used))
        };

        if let Some((vbar, used)) = canonical(q) {
            out.push(Vbar {
                spec: None,
                vbar,
                extraposed: None,
                used,
            });
        }

        if let Some(vm) = subj {
            if self.on(Strategy::SubjVpInternal) && v0.is_none() {
                if let Some(first) = q.first().filter(|u| subject_agrees(u, vm)) {
                    let spec_kids = vec![Child::Node(with_gf(first, Gf::Subj))];
                    if let Some(s) = self.license(Category::SpecVP, &spec_kids) {
                        if let Some((vbar, mut used)) = canonical(&q[1..]) {
                            used.extend(s);
                            used.extend(first.used.iter().copied());
                            used.insert(Strategy::SubjVpInternal);
                            out.push(Vbar {
                                spec: Some(CNode::new(Category::SpecVP, spec_kids)),
                                vbar,
                                extraposed: None,
                                used,
                            });
                        }
                    }
                }
            }
            if self.on(Strategy::SubjExtraposed) && !q.is_empty() {
                let last = &q[q.len() - 1];
                if subject_agrees(last, vm) && referential(last) {
                    if let Some((vbar, mut used)) = canonical(&q[..q.len() - 1]) {
                        used.extend(last.used.iter().copied());
                        used.insert(Strategy::SubjExtraposed);
                        out.push(Vbar {
                            spec: None,
                            vbar,
                            extraposed: Some(with_gf(last, Gf::Subj)),
                            used,
                        });
                    }
                }
            }
        }

        if self.on(Strategy::DfVp) && obj_ok {
            out.extend(self.df_vp_variants(&base, q, unit_used(q)));
        }
        out
    }

    fn df_vp_variants(&self, base: &[Child], q: &[Unit], uu: BTreeSet<Strategy>) -> Vec<Vbar> {
        let mut out = Vec::new();
        let finish = |kids: Vec<Child>, spec: Option<CNode>| -> Option<Vbar> {
            let s = self.license(Category::VBar, &kids)?;
            if let Some(sp) = &spec {
                self.license(Category::SpecVP, &sp.kids)?;
            }
            let mut used = uu.clone();
            used.extend(s);
            used.insert(Strategy::DfVp);
            Some(Vbar {
                spec,
                vbar: CNode::new(Category::VBar, kids),
                extraposed: None,
                used,
            })
        };

        // focal adjective stranded before the object it modifies
        if q.len() >= 2 && q[0].is(Category::AP) {
            if let Some(oi) = q[1..].iter().position(|u| u.is(Category::NP)).map(|i| i + 1) {
                let ap = q[0].node_ref().unwrap().clone();
                let mut obj = with_gf(&q[oi], Gf::Obj);
                let mut st = FocusStack::new();
                st.suspend(ap.clone());
                if st.resolve(&mut obj).is_ok() && q[1..].iter().filter(|u| u.is(Category::NP)).count() == 1 {
                    let mut kids = base.to_vec();
                    for (i, u) in q.iter().enumerate().skip(1) {
                        kids.push(if i == oi {
                            Child::Node(obj.clone())
                        } else {
                            u.item.clone()
                        });
                    }
                    let spec = CNode::new(
                        Category::SpecVP,
                        vec![Child::Node(annotated(Category::FocP, ap, FAnnot::df(Df::Focus)))],
                    );
                    out.extend(finish(kids, Some(spec)));
                }
            }
        }

        // object dislocated to the right of obliques, optionally split from
        // its focal quantifier
        if let Some(last_np) = q.iter().rposition(|u| u.is(Category::NP)) {
            let before = &q[..last_np];
            let after = &q[last_np + 1..];
            let before_ok = before.iter().any(|u| u.is(Category::PP) || u.is(Category::VP))
                && !before.iter().any(|u| u.is(Category::NP));
            if before_ok && after.iter().all(|u| u.is(Category::AdvP)) {
                let np = q[last_np].node_ref().unwrap().clone();
                let split = split_focal_quantifier(&np);
                let mut kids = base.to_vec();
                kids.extend(before.iter().map(|u| u.item.clone()));
                match split {
                    Some((ap, mut rest)) => {
                        let mut st = FocusStack::new();
                        st.suspend(ap.clone());
                        if st.resolve(&mut rest).is_ok() {
                            kids.push(Child::Node(annotated(Category::FocP, ap, FAnnot::df(Df::Focus))));
                            kids.push(Child::Node(rest.with_annot(FAnnot::gf(Gf::Obj))));
                        } else {
                            kids.push(Child::Node(np.with_annot(FAnnot::gf(Gf::Obj))));
                        }
                    }
                    None => kids.push(Child::Node(np.with_annot(FAnnot::gf(Gf::Obj)))),
                }
                kids.extend(after.iter().map(|u| u.item.clone()));
                out.extend(finish(kids, None));
            }
        }

        // object followed by obliques and focal adjectives agreeing with it
        if let Some(oi) = q.iter().position(|u| u.is(Category::NP)) {
            let tail = &q[oi + 1..];
            let lead_ok = q[..oi].iter().all(|u| u.is(Category::AdvP));
            let has_ap = tail.iter().any(|u| u.is(Category::AP));
            let tail_ok = tail
                .iter()
                .all(|u| u.is(Category::PP) || u.is(Category::AP) || u.is(Category::AdvP));
            if lead_ok && has_ap && tail_ok {
                let mut obj = with_gf(&q[oi], Gf::Obj);
                let mut st = FocusStack::new();
                let mut tail_kids = Vec::new();
                let mut ok = true;
                for u in tail {
                    if u.is(Category::AP) {
                        let ap = u.node_ref().unwrap().clone();
                        st.suspend(ap.clone());
                        if st.resolve(&mut obj).is_err() {
                            ok = false;
                            break;
                        }
                        tail_kids.push(Child::Node(annotated(Category::FocP, ap, FAnnot::df(Df::Focus))));
                    } else {
                        tail_kids.push(u.item.clone());
                    }
                }
                if ok {
                    let mut kids = base.to_vec();
                    kids.extend(q[..oi].iter().map(|u| u.item.clone()));
                    kids.push(Child::Node(obj));
                    kids.extend(tail_kids);
                    out.extend(finish(kids, None));
                }
            }
        }
        out
    }

    /// Candidate trees for one clause.
    pub fn clause(&self, units: &[Unit], end: usize) -> Result<Vec<Cand>, Fault> {
        if units.is_empty() {
            return Err(Fault::new(end, "clause"));
        }
        let is_c0 = |u: &Unit| match &u.item {
            Child::Leaf(l) => {
                matches!(l.entry.pos, Pos::Comp | Pos::RelPron) || (l.entry.pos == Pos::Neg && l.entry.lemma == "né")
            }
            _ => false,
        };
        let (c0, body) = if is_c0(&units[0]) {
            (units[0].item.as_leaf().cloned(), &units[1..])
        } else {
            (None, units)
        };
        let heads: Vec<usize> = body
            .iter()
            .enumerate()
            .filter(|(_, u)| matches!(u.pos(), Some(Pos::Verb | Pos::Aux | Pos::Modal)))
            .map(|(i, _)| i)
            .collect();
        let base: BTreeSet<Strategy> = units.iter().flat_map(|u| u.used.iter().copied()).collect();
        let mut cands = match heads.len() {
            0 => self.fragment(c0, body, end)?,
            1 => self.finite(c0, body, heads[0], end)?,
            2 if self.on(Strategy::Parenthetical) => self.with_parenthetical(c0, body, heads[0], heads[1], end)?,
            _ => return Err(Fault::new(body[heads[1]].start(), "end of clause")),
        };
        for c in &mut cands {
            c.used.extend(base.iter().copied());
        }
        Ok(cands)
    }

    fn root(&self, c0: Option<Leaf>, spec_cp: Option<CNode>, ip: CNode) -> CNode {
        match (c0, spec_cp) {
            (Some(c), _) => {
                let c0 = wrap(Category::C0, vec![Child::Leaf(c)]).as_head();
                let cbar = wrap(Category::CBar, vec![Child::Node(c0), Child::Node(ip)]);
                wrap(Category::CP, vec![Child::Node(cbar)])
            }
            (None, Some(spec)) => wrap(Category::CP, vec![Child::Node(spec), Child::Node(ip)]),
            (None, None) => ip,
        }
    }

    fn finite(&self, c0: Option<Leaf>, body: &[Unit], h: usize, end: usize) -> Result<Vec<Cand>, Fault> {
        let mut g = h;
        while g > 0 {
            let u = &body[g - 1];
            let in_group = matches!(u.pos(), Some(Pos::Clitic | Pos::Neg))
                || u.node_ref().is_some_and(|n| n.fannot.gf == Some(Gf::Parenthetical));
            if !in_group {
                break;
            }
            g -= 1;
        }
        let p = &body[..g];
        let mut q: &[Unit] = &body[h + 1..];
        self.stm.set(self.stm.get().max(p.len()));
        let mut head = body[h].item.as_leaf().expect("verb leaf").clone();
        let mut local = BTreeSet::new();
        let mut v0: Option<CNode> = None;
        let mut stranded: Option<usize> = None;
        let mut fronted: Option<usize> = None;
        let after_verb = q.first().map_or(end, |u| u.start());

        let bare = |u: &Unit, want: Pos| u.is_bare_v0() && u.head_entry().is_some_and(|e| e.pos == want);
        match head.entry.pos {
            Pos::Aux | Pos::Modal => {
                let want = if head.entry.pos == Pos::Aux {
                    Pos::PastPart
                } else {
                    Pos::Inf
                };
                if q.first().is_some_and(|u| bare(u, want)) {
                    v0 = q[0].node_ref().cloned();
                    q = &q[1..];
                } else if self.on(Strategy::VerbComplex) {
                    if let Some(i) = q.iter().position(|u| bare(u, want)) {
                        stranded = Some(i);
                    } else if let Some(i) = p.iter().position(|u| bare(u, want)) {
                        fronted = Some(i);
                    } else {
                        return Err(Fault::new(after_verb, "participle or infinitive"));
                    }
                    local.insert(Strategy::VerbComplex);
                } else {
                    return Err(Fault::new(after_verb, "participle or infinitive"));
                }
            }
            _ => {
                let aux_lemma = matches!(head.entry.lemma.as_str(), "avere" | "essere");
                if self.on(Strategy::VerbComplex) && aux_lemma {
                    if let Some(i) = q.iter().position(|u| bare(u, Pos::PastPart)).filter(|&i| i > 0) {
                        let aux = self
                            .lexicon
                            .lookup(&head.entry.surface)
                            .into_iter()
                            .find(|e| e.pos == Pos::Aux);
                        if let Some(aux) = aux {
                            head.entry = aux.into();
                            stranded = Some(i);
                            local.insert(Strategy::VerbComplex);
                        }
                    }
                }
            }
        }

        let main_entry: Arc<LexicalEntry> = if let Some(v) = &v0 {
            v.head_leaf().unwrap().entry.clone()
        } else if let Some(i) = stranded {
            q[i].head_entry_shared().unwrap()
        } else if let Some(i) = fronted {
            p[i].head_entry_shared().unwrap()
        } else {
            head.entry.clone()
        };
        let frame = main_entry.semform.as_ref();
        let vm = head.entry.morph.clone();
        let mut group: Vec<Unit> = body[g..h].to_vec();
        let obj_filled = group.iter().any(|u| {
            u.pos() == Some(Pos::Clitic) && u.head_entry().and_then(|e| e.morph.case.as_deref()) == Some("acc")
        });
        group.push(Unit::leaf(head));
        let i0 = wrap(Category::I0, group.iter().map(|u| u.item.clone()).collect()).as_head();

        let pres = self.pre_layouts(c0.is_some(), p, &vm, fronted);
        if pres.is_empty() {
            let at = p
                .iter()
                .filter(|u| !is_adjunct(u))
                .nth(1)
                .or_else(|| p.iter().find(|u| !is_adjunct(u)))
                .map_or(after_verb, |u| u.start());
            return Err(Fault::new(at, "integrable pre-verbal constituent"));
        }

        let posts: Vec<Vbar> = match stranded {
            Some(i) => {
                let v = q[i].node_ref().unwrap().clone();
                let inner = self.vbar_variants(Some(v), frame, obj_filled, &q[i + 1..], Some(&vm));
                let mut out = Vec::new();
                if i == 0 {
                    out = inner;
                } else if self.on(Strategy::DfVp) {
                    let prefs: Vec<Vec<Df>> = q[..i]
                        .iter()
                        .map(|u| match u.cat() {
                            Some(Category::AP) => vec![Df::Focus],
                            _ => vec![Df::Topic, Df::Focus],
                        })
                        .collect();
                    let ok = q[..i]
                        .iter()
                        .all(|u| matches!(u.cat(), Some(Category::NP | Category::PP | Category::AP)));
                    if ok {
                        for labels in labelings(&prefs) {
                            let spec_kids: Vec<Child> = q[..i]
                                .iter()
                                .zip(&labels)
                                .map(|(u, d)| Child::Node(df_node(u, *d)))
                                .collect();
                            if self.license(Category::SpecVP, &spec_kids).is_none() {
                                continue;
                            }
                            for v in &inner {
                                if v.spec.is_some() {
                                    continue;
                                }
                                let mut v = v.clone();
                                v.spec = Some(CNode::new(Category::SpecVP, spec_kids.clone()));
                                v.used.insert(Strategy::DfVp);
                                v.used.extend(q[..i].iter().flat_map(|u| u.used.iter().copied()));
                                out.push(v);
                            }
                        }
                    }
                }
                out
            }
            None => self.vbar_variants(v0.clone(), frame, obj_filled, q, Some(&vm)),
        };
        if posts.is_empty() {
            return Err(Fault::new(after_verb, "complement in canonical order"));
        }

        let mut out = Vec::new();
        for pre in &pres {
            for post in &posts {
                let post_subject = post.extraposed.is_some()
                    || post
                        .spec
                        .as_ref()
                        .is_some_and(|s| s.child_nodes().any(|n| n.fannot.gf == Some(Gf::Subj)));
                if pre.has_subject && post_subject {
                    continue;
                }
                let mut post = post.clone();
                if !resolve_pending(&pre.pending, &mut post) {
                    continue;
                }
                let mut vp_kids = Vec::new();
                if let Some(s) = post.spec.clone() {
                    vp_kids.push(Child::Node(s));
                }
                if !post.vbar.kids.is_empty() || vp_kids.is_empty() {
                    vp_kids.push(Child::Node(post.vbar.clone()));
                }
                let mut ibar_kids = vec![Child::Node(i0.clone())];
                if !(vp_kids.len() == 1 && post.vbar.kids.is_empty()) {
                    ibar_kids.push(Child::Node(wrap(Category::VP, vp_kids)));
                }
                let ibar = wrap(Category::IBar, ibar_kids);
                let mut ip_kids = pre.kids.clone();
                ip_kids.push(Child::Node(ibar));
                let mut ip = wrap(Category::IP, ip_kids);
                if let Some(x) = post.extraposed.clone() {
                    ip = wrap(Category::IP, vec![Child::Node(ip), Child::Node(x)]);
                }
                if let Some(t) = pre.hanging.clone() {
                    ip = wrap(Category::IP, vec![Child::Node(t), Child::Node(ip)]);
                }
                let tree = self.root(c0.clone(), pre.spec_cp.clone(), ip);
                let mut used = local.clone();
                used.extend(pre.used.iter().copied());
                used.extend(post.used.iter().copied());
                used.extend(body.iter().flat_map(|u| u.used.iter().copied()));
                out.push(Cand { tree, used });
            }
        }
        if out.is_empty() {
            return Err(Fault::new(after_verb, "consistent subject and complements"));
        }
        Ok(out)
    }

    fn pre_layouts(&self, has_c0: bool, p: &[Unit], vm: &Morph, fronted: Option<usize>) -> Vec<Pre> {
        let mut out = Vec::new();
        let core: Vec<usize> = (0..p.len()).filter(|&i| !is_adjunct(&p[i])).collect();
        let adjunct_child = |u: &Unit| -> Child {
            if is_circumstantial(u) {
                Child::Node(with_gf(u, Gf::Adjunct))
            } else {
                u.item.clone()
            }
        };
        let valid_core = |u: &Unit, i: usize| match u.cat() {
            Some(Category::NP | Category::AP) => true,
            Some(Category::V0) => fronted == Some(i),
            _ => false,
        };
        if core.iter().any(|&i| !valid_core(&p[i], i)) {
            return out;
        }

        // adjuncts plus at most one agreeing subject
        let canonical_rest = |from: usize| -> Option<(Vec<Child>, bool)> {
            let rest: Vec<usize> = core.iter().copied().filter(|&i| i >= from).collect();
            if rest.len() > 1 {
                return None;
            }
            if let Some(&s) = rest.first() {
                if !subject_agrees(&p[s], vm) {
                    return None;
                }
            }
            let kids = (from..p.len())
                .map(|i| {
                    if rest.first() == Some(&i) {
                        let np = with_gf(&p[i], Gf::Subj);
                        Child::Node(CNode::new(Category::SpecIP, vec![Child::Node(np)]))
                    } else {
                        adjunct_child(&p[i])
                    }
                })
                .collect();
            Some((kids, !rest.is_empty()))
        };
        if let Some((kids, has_subject)) = canonical_rest(0) {
            out.push(Pre {
                kids,
                has_subject,
                ..Pre::default()
            });
        }
        if core.is_empty() {
            return out;
        }

        let last_core = *core.last().unwrap();
        let prefs = |i: usize| -> Vec<Df> {
            let u = &p[i];
            match u.cat() {
                Some(Category::NP) => {
                    let n = u.node_ref().unwrap();
                    let pron = n.head_leaf().is_some_and(|l| l.entry.pos == Pos::Pron);
                    if pron || has_estens_modifier(n) {
                        vec![Df::Focus, Df::Topic]
                    } else if is_bare_np(n) || (i == last_core && subject_agrees(u, vm)) {
                        vec![Df::Topic, Df::Focus]
                    } else {
                        vec![Df::Focus, Df::Topic]
                    }
                }
                _ => vec![Df::Focus],
            }
        };
        let pending_of = |u: &Unit, d: Df| -> Option<CNode> {
            (d == Df::Focus && u.is(Category::AP)).then(|| u.node_ref().unwrap().clone())
        };

        // discourse functions in the complementizer specifier
        if !has_c0 && core[0] == 0 {
            let u0 = &p[0];
            if self.on(Strategy::FocusSpecCp) && prefs(0).contains(&Df::Focus) {
                let spec = vec![Child::Node(df_node(u0, Df::Focus))];
                if let (Some(s), Some((kids, has_subject))) = (self.license(Category::SpecCP, &spec), canonical_rest(1))
                {
                    let mut used: BTreeSet<Strategy> = s.into_iter().collect();
                    used.insert(Strategy::FocusSpecCp);
                    out.push(Pre {
                        spec_cp: Some(CNode::new(Category::SpecCP, spec)),
                        kids,
                        has_subject,
                        pending: pending_of(u0, Df::Focus).into_iter().collect(),
                        used,
                        ..Pre::default()
                    });
                }
            }
            if self.on(Strategy::TopicSpecCp) {
                if u0.is(Category::NP) && prefs(0).contains(&Df::Topic) {
                    let spec = vec![Child::Node(df_node(u0, Df::Topic))];
                    if let (Some(_), Some((kids, has_subject))) =
                        (self.license(Category::SpecCP, &spec), canonical_rest(1))
                    {
                        out.push(Pre {
                            spec_cp: Some(CNode::new(Category::SpecCP, spec)),
                            kids,
                            has_subject,
                            used: [Strategy::TopicSpecCp].into(),
                            ..Pre::default()
                        });
                    }
                }
                if core.len() >= 2 && core[1] == 1 && p[1].is(Category::NP) && prefs(0).contains(&Df::Focus) {
                    let spec = vec![
                        Child::Node(df_node(u0, Df::Focus)),
                        Child::Node(df_node(&p[1], Df::Topic)),
                    ];
                    if let (Some(_), Some((kids, has_subject))) =
                        (self.license(Category::SpecCP, &spec), canonical_rest(2))
                    {
                        out.push(Pre {
                            spec_cp: Some(CNode::new(Category::SpecCP, spec)),
                            kids,
                            has_subject,
                            pending: pending_of(u0, Df::Focus).into_iter().collect(),
                            used: [Strategy::TopicSpecCp].into(),
                            ..Pre::default()
                        });
                    }
                }
            }
        }

        // discourse functions adjoined inside IP
        if self.on(Strategy::DfIp) {
            let mut layouts: Vec<(Vec<usize>, Option<usize>)> = vec![(core.clone(), None)];
            if core.len() >= 2 && subject_agrees(&p[last_core], vm) {
                layouts.push((core[..core.len() - 1].to_vec(), Some(last_core)));
            }
            for (dfs, subj) in layouts {
                let pr: Vec<Vec<Df>> = dfs.iter().map(|&i| prefs(i)).collect();
                for labels in labelings(&pr) {
                    let mut kids = Vec::new();
                    let mut pending = Vec::new();
                    for (i, u) in p.iter().enumerate() {
                        if let Some(k) = dfs.iter().position(|&d| d == i) {
                            kids.push(Child::Node(df_node(u, labels[k])));
                            pending.extend(pending_of(u, labels[k]));
                        } else if subj == Some(i) {
                            let np = with_gf(u, Gf::Subj);
                            kids.push(Child::Node(CNode::new(Category::SpecIP, vec![Child::Node(np)])));
                        } else {
                            kids.push(adjunct_child(u));
                        }
                    }
                    let mut hanging = None;
                    let first_bare = p[0].node_ref().is_some_and(is_bare_np);
                    if dfs.len() > 1 && dfs[0] == 0 && labels[0] == Df::Topic && first_bare {
                        if let Child::Node(mut t) = kids.remove(0) {
                            t.fannot.hanging = true;
                            hanging = Some(t);
                        }
                    }
                    out.push(Pre {
                        hanging,
                        kids,
                        has_subject: subj.is_some(),
                        pending,
                        used: [Strategy::DfIp].into(),
                        ..Pre::default()
                    });
                }
            }
        }
        out
    }

    fn fragment(&self, c0: Option<Leaf>, body: &[Unit], end: usize) -> Result<Vec<Cand>, Fault> {
        if !self.on(Strategy::Fragment) {
            return Err(Fault::new(end, "finite verb"));
        }
        self.stm.set(self.stm.get().max(body.len()));
        let nps: Vec<usize> = (0..body.len()).filter(|&i| body[i].is(Category::NP)).collect();
        let aps: Vec<usize> = (0..body.len()).filter(|&i| body[i].is(Category::AP)).collect();
        let others_ok = body
            .iter()
            .all(|u| u.is(Category::NP) || u.is(Category::AP) || u.is(Category::AdvP));
        if nps.len() != 1 || aps.len() > 1 || !others_ok {
            return Err(Fault::new(end, "finite verb"));
        }
        let mut units: Vec<Unit> = body.to_vec();
        let mut ap_at = aps.first().copied();
        if ap_at.is_none() {
            let np = units[nps[0]].node_ref().unwrap().clone();
            let (np2, ap) = split_trailing_ap(&np).ok_or_else(|| Fault::new(end, "predicate"))?;
            let used = units[nps[0]].used.clone();
            units[nps[0]] = Unit::node(np2).using(&used);
            units.insert(nps[0] + 1, Unit::node(ap));
            ap_at = Some(nps[0] + 1);
        }
        let ap_at = ap_at.unwrap();
        let np_at = units.iter().position(|u| u.is(Category::NP)).unwrap();
        let copula = wrap(Category::I0, vec![Child::Leaf(Leaf::implicit(implicit_copula()))]).as_head();
        let subj = CNode::new(Category::SpecIP, vec![Child::Node(with_gf(&units[np_at], Gf::Subj))]);
        let ip = if ap_at < np_at {
            let mut kids = vec![];
            for (i, u) in units.iter().enumerate() {
                if i == ap_at {
                    kids.push(Child::Node(df_node(u, Df::Focus)));
                } else if i == np_at {
                    kids.push(Child::Node(subj.clone()));
                } else {
                    kids.push(u.item.clone());
                }
            }
            if np_at != units.len() - 1 {
                return Err(Fault::new(units[np_at + 1].start(), "end of fragment"));
            }
            kids.push(Child::Node(wrap(Category::IBar, vec![Child::Node(copula)])));
            wrap(Category::IP, kids)
        } else {
            if np_at != 0 {
                return Err(Fault::new(units[0].start(), "subject"));
            }
            let vbar_kids: Vec<Child> = units[1..]
                .iter()
                .map(|u| {
                    if u.is(Category::AP) {
                        Child::Node(with_gf(u, Gf::Ncomp))
                    } else {
                        u.item.clone()
                    }
                })
                .collect();
            let vp = wrap(Category::VP, vec![Child::Node(wrap(Category::VBar, vbar_kids))]);
            let ibar = wrap(Category::IBar, vec![Child::Node(copula), Child::Node(vp)]);
            wrap(Category::IP, vec![Child::Node(subj), Child::Node(ibar)])
        };
        let mut used: BTreeSet<Strategy> = units.iter().flat_map(|u| u.used.iter().copied()).collect();
        used.insert(Strategy::Fragment);
        Ok(vec![Cand {
            tree: self.root(c0, None, ip),
            used,
        }])
    }

    fn with_parenthetical(
        &self,
        c0: Option<Leaf>,
        body: &[Unit],
        h0: usize,
        h1: usize,
        end: usize,
    ) -> Result<Vec<Cand>, Fault> {
        let conj = h0 > 0 && body[h0 - 1].pos() == Some(Pos::Conj);
        let p_start = if conj { h0 - 1 } else { h0 };
        let head = body[h0].item.as_leaf().unwrap().clone();
        let frame = head.entry.semform.clone();
        let inner = &body[h0 + 1..h1];
        let v = self
            .vbar_variants(None, frame.as_ref(), false, inner, None)
            .into_iter()
            .next()
            .ok_or_else(|| Fault::new(body[h1].start(), "end of clause"))?;
        let i0 = wrap(Category::I0, vec![Child::Leaf(head)]).as_head();
        let mut ibar = vec![Child::Node(i0)];
        if !v.vbar.kids.is_empty() {
            ibar.push(Child::Node(wrap(Category::VP, vec![Child::Node(v.vbar)])));
        }
        let ip = wrap(Category::IP, vec![Child::Node(wrap(Category::IBar, ibar))]);
        let node = if conj {
            let c0 = wrap(Category::C0, vec![body[h0 - 1].item.clone()]).as_head();
            let cbar = wrap(Category::CBar, vec![Child::Node(c0), Child::Node(ip)]);
            wrap(Category::CP, vec![Child::Node(cbar)])
        } else {
            ip
        };
        let mut used = v.used;
        used.insert(Strategy::Parenthetical);
        let paren = Unit::node(node.with_annot(FAnnot::gf(Gf::Parenthetical))).using(&used);
        let mut nb: Vec<Unit> = body[..p_start].to_vec();
        nb.push(paren);
        let main = nb.len();
        nb.extend(body[h1..].iter().cloned());
        let mut cands = self.finite(c0, &nb, main, end)?;
        for c in &mut cands {
            c.used.insert(Strategy::Parenthetical);
        }
        Ok(cands)
    }
}

/// Resolves fronted adjectival foci against the nearest nominal in the
/// post-verbal material: the object, else a post-verbal subject.
fn resolve_pending(pending: &[CNode], post: &mut Vbar) -> bool {
    for ap in pending {
        let mut st = FocusStack::new();
        st.suspend(ap.clone());
        let mut done = false;
        for k in post.vbar.kids.iter_mut() {
            if let Child::Node(n) = k {
                if n.cat == Category::NP && st.resolve(n).is_ok() {
                    done = true;
                    break;
                }
            }
        }
        if !done {
            if let Some(x) = post.extraposed.as_mut() {
                done = st.resolve(x).is_ok();
            }
        }
        if !done {
            return false;
        }
    }
    true
}

/// Splits a determinerless NP that opens with a quantity adjective.
fn split_focal_quantifier(np: &CNode) -> Option<(CNode, CNode)> {
    let first = np.kids.first()?.as_node()?;
    let quant = first.cat == Category::AP && first.head_leaf().is_some_and(|l| l.entry.has_class("quantita"));
    if !quant || np.kids.len() < 2 {
        return None;
    }
    let rest = CNode::new(Category::NP, np.kids[1..].to_vec());
    Some((first.clone(), rest))
}

/// Detaches a final AP from an NP, for verbless predications.
fn split_trailing_ap(np: &CNode) -> Option<(CNode, CNode)> {
    let last = np.kids.last()?.as_node()?;
    if last.cat != Category::AP || np.kids.len() < 2 {
        return None;
    }
    let mut rest = np.clone();
    rest.kids.pop();
    rest.recompute_span();
    Some((rest, last.clone()))
}
