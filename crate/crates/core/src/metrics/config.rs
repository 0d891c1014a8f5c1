//! Basic argument configuration of a clause.

use std::fmt;

use crate::cstruct::{CNode, Category, Child, Gf, Leaf};
use crate::lexicon::Pos;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sym {
    S,
    O,
    IO,
    Obl,
    V,
    Adj,
    Mo,
    Cl,
    Ax,
    Cg,
    Pa,
}

impl Sym {
    pub fn as_str(self) -> &'static str {
        match self {
            Sym::S => "S",
            Sym::O => "O",
            Sym::IO => "iO",
            Sym::Obl => "Obl",
            Sym::V => "V",
            Sym::Adj => "Adj",
            Sym::Mo => "Mo",
            Sym::Cl => "Cl",
            Sym::Ax => "Ax",
            Sym::Cg => "Cg",
            Sym::Pa => "Pa",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigString {
    pub symbols: Vec<Sym>,
    /// Set when the tree has no overt verb.
    pub fragment: bool,
}

impl fmt::Display for ConfigString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            f.write_str(s.as_str())?;
        }
        Ok(())
    }
}

/// A symbol still to be decided, for fronted nominals whose function
/// depends on the rest of the clause.
#[derive(Debug, Clone, Copy)]
enum Slot {
    Fixed(Sym),
    Fronted { agrees: bool },
}

const ADJUNCT_CLASSES: [&str; 3] = ["tempo", "luogo", "circostanza"];

fn is_aux_like(l: &Leaf) -> bool {
    l.entry.pos == Pos::Aux || (l.entry.pos == Pos::Verb && matches!(l.entry.lemma.as_str(), "avere" | "essere"))
}

fn is_parenthetical(n: &CNode) -> bool {
    n.fannot.gf == Some(Gf::Parenthetical)
}

/// Whether a PP's object names a time, place or circumstance.
fn adjunct_object(pp: &CNode) -> bool {
    pp.child_nodes()
        .find(|c| c.cat == Category::NP)
        .and_then(CNode::head_leaf)
        .is_some_and(|h| ADJUNCT_CLASSES.iter().any(|c| h.entry.has_class(c)))
}

/// Overt verbal leaves of the clause spine, in token order.
fn spine_verbs(n: &CNode, out: &mut Vec<Leaf>) {
    use Category as C;
    for k in &n.kids {
        match k {
            Child::Leaf(l) if l.index.is_some() && l.entry.pos.is_verbal() => out.push(l.clone()),
            Child::Node(c) if is_parenthetical(c) => {}
            Child::Node(c) => match c.cat {
                C::NP | C::AP | C::AdvP | C::C0 | C::ScrNP => {}
                C::CP if n.cat != C::TopP && n.cat != C::FocP => {}
                C::PP => {
                    if let Some(vp) = c.child_nodes().find(|x| x.cat == C::VP) {
                        spine_verbs(vp, out);
                    }
                }
                _ => spine_verbs(c, out),
            },
            _ => {}
        }
    }
}

struct Walker {
    slots: Vec<Slot>,
    overt_subject: bool,
    finite: Option<Leaf>,
    /// Token indices of auxiliaries separated from their participle.
    detached: Vec<usize>,
    /// Token indices of participles absorbed by an adjacent auxiliary.
    absorbed: Vec<usize>,
}

impl Walker {
    fn new(tree: &CNode) -> Walker {
        let mut verbs = Vec::new();
        spine_verbs(tree, &mut verbs);
        verbs.sort_by_key(|l| l.index);
        let mut detached = Vec::new();
        let mut absorbed = Vec::new();
        for (i, v) in verbs.iter().enumerate() {
            if !is_aux_like(v) {
                continue;
            }
            let part = verbs[i + 1..].iter().find(|p| p.entry.pos == Pos::PastPart);
            if let (Some(p), Some(a)) = (part, v.index) {
                if p.index == Some(a + 1) {
                    absorbed.extend(p.index);
                } else {
                    detached.push(a);
                }
            }
        }
        Walker {
            slots: Vec::new(),
            overt_subject: false,
            finite: verbs.first().cloned(),
            detached,
            absorbed,
        }
    }

    fn push(&mut self, s: Sym) {
        self.slots.push(Slot::Fixed(s));
    }

    fn agrees(&self, np: &CNode) -> bool {
        let (Some(v), Some(h)) = (&self.finite, np.head_leaf()) else {
            return false;
        };
        let vm = &v.entry.morph;
        let hm = &h.entry.morph;
        hm.pers.as_deref().unwrap_or("3") == vm.pers.as_deref().unwrap_or("3")
            && match (&hm.num, &vm.num) {
                (Some(a), Some(b)) => a == b || a == "any" || b == "any",
                _ => true,
            }
    }

    fn leaf(&mut self, l: &Leaf) {
        let Some(i) = l.index else { return };
        match l.entry.pos {
            Pos::Clitic => self.push(Sym::Cl),
            _ if self.absorbed.contains(&i) => {}
            _ if self.detached.contains(&i) => self.push(Sym::Ax),
            p if p.is_verbal() => self.push(Sym::V),
            _ => {}
        }
    }

    fn node(&mut self, n: &CNode, in_vp: bool, root: bool) {
        use Category as C;
        if is_parenthetical(n) {
            self.push(Sym::Pa);
            return;
        }
        match n.cat {
            C::CP if !root => {}
            C::CP | C::CBar | C::SpecCP | C::IP | C::SpecIP | C::IBar | C::VP | C::SpecVP | C::VBar | C::I0 | C::V0 => {
                let in_vp = in_vp || n.cat == C::VP;
                for k in &n.kids {
                    match k {
                        Child::Node(c) => {
                            if matches!(n.cat, C::I0 | C::V0) && matches!(c.cat, C::IP | C::CP) {
                                self.push(Sym::Pa)
                            } else {
                                self.node(c, in_vp, root && c.cat != C::CP)
                            }
                        }
                        Child::Leaf(l) => self.leaf(l),
                    }
                }
            }
            C::C0 => {}
            C::TopP | C::FocP => {
                for c in n.child_nodes() {
                    match c.cat {
                        C::NP => {
                            self.scrambled(c);
                            if n.fannot.hanging {
                                self.push(Sym::S)
                            } else {
                                let agrees = self.agrees(c);
                                self.slots.push(Slot::Fronted { agrees })
                            }
                        }
                        C::AP => self.push(Sym::Mo),
                        C::PP => self.push(Sym::Obl),
                        _ => self.node(c, in_vp, false),
                    }
                }
            }
            C::NP => {
                self.scrambled(n);
                match n.fannot.gf {
                    Some(Gf::Subj) => {
                        self.overt_subject = true;
                        self.push(Sym::S)
                    }
                    Some(Gf::Obj | Gf::Obj2) => self.push(Sym::O),
                    _ if in_vp => self.push(Sym::O),
                    _ => self.push(Sym::Adj),
                }
            }
            C::PP => {
                if let Some(vp) = n.child_nodes().find(|c| c.cat == C::VP) {
                    self.node(vp, true, false);
                } else if in_vp && !adjunct_object(n) {
                    self.push(Sym::IO)
                } else {
                    self.push(Sym::Adj)
                }
            }
            C::AdvP => {
                if n.head_leaf().is_some_and(|l| l.entry.has_class("connettivo")) {
                    self.push(Sym::Cg)
                }
            }
            C::AP => self.push(Sym::Pa),
            C::ScrNP => self.push(Sym::Mo),
        }
    }

    fn scrambled(&mut self, np: &CNode) {
        if np.child_nodes().next().is_some_and(|c| c.cat == Category::ScrNP) {
            self.push(Sym::Mo);
        }
    }

    /// Without an overt subject, the agreeing fronted nominal nearest the
    /// verb is the subject; the other fronted nominals are objects.
    fn resolve(self) -> Vec<Sym> {
        let subject = if self.overt_subject {
            None
        } else {
            self.slots
                .iter()
                .rposition(|s| matches!(s, Slot::Fronted { agrees: true }))
        };
        self.slots
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                Slot::Fixed(x) => *x,
                Slot::Fronted { .. } if Some(i) == subject => Sym::S,
                Slot::Fronted { .. } => Sym::O,
            })
            .collect()
    }
}

/// Left-to-right signature of the main clause's major constituents.
pub fn basic_configuration(tree: &CNode) -> ConfigString {
    let mut w = Walker::new(tree);
    let fragment = w.finite.is_none();
    if tree.cat == Category::NP {
        return ConfigString {
            symbols: Vec::new(),
            fragment: true,
        };
    }
    w.node(tree, false, true);
    ConfigString {
        symbols: w.resolve(),
        fragment,
    }
}
