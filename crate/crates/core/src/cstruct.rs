//! Constituent-structure trees.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::Arc;

use crate::lexicon::{LexicalEntry, Morph};

/// Closed set of phrase-structure labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    CP,
    SpecCP,
    CBar,
    C0,
    IP,
    SpecIP,
    IBar,
    I0,
    VP,
    SpecVP,
    VBar,
    V0,
    NP,
    AP,
    PP,
    AdvP,
    TopP,
    FocP,
    ScrNP,
}

impl Category {
    pub const ALL: [Category; 19] = [
        Category::CP,
        Category::SpecCP,
        Category::CBar,
        Category::C0,
        Category::IP,
        Category::SpecIP,
        Category::IBar,
        Category::I0,
        Category::VP,
        Category::SpecVP,
        Category::VBar,
        Category::V0,
        Category::NP,
        Category::AP,
        Category::PP,
        Category::AdvP,
        Category::TopP,
        Category::FocP,
        Category::ScrNP,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::CP => "CP",
            Category::SpecCP => "SpecCP",
            Category::CBar => "C'",
            Category::C0 => "C0",
            Category::IP => "IP",
            Category::SpecIP => "SpecIP",
            Category::IBar => "I'",
            Category::I0 => "I0",
            Category::VP => "VP",
            Category::SpecVP => "SpecVP",
            Category::VBar => "V'",
            Category::V0 => "V0",
            Category::NP => "NP",
            Category::AP => "AP",
            Category::PP => "PP",
            Category::AdvP => "AdvP",
            Category::TopP => "TopP",
            Category::FocP => "FocP",
            Category::ScrNP => "ScrNP",
        }
    }

    /// Bar-level projections that must have exactly one head daughter.
    pub fn is_bar(self) -> bool {
        matches!(self, Category::CBar | Category::IBar | Category::VBar)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown category {s:?}"))
    }
}

/// Discourse function of a TopP/FocP node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Df {
    Focus,
    Topic,
}

/// Grammatical function named by a functional annotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gf {
    Subj,
    Obj,
    Obj2,
    Obl,
    Vcomp,
    Ncomp,
    Adjunct,
    Mod,
    Parenthetical,
}

impl Gf {
    pub fn as_str(self) -> &'static str {
        match self {
            Gf::Subj => "SUBJ",
            Gf::Obj => "OBJ",
            Gf::Obj2 => "OBJ2",
            Gf::Obl => "OBL",
            Gf::Vcomp => "VCOMP",
            Gf::Ncomp => "NCOMP",
            Gf::Adjunct => "ADJ",
            Gf::Mod => "MOD",
            Gf::Parenthetical => "PARENTH",
        }
    }

    pub fn from_attr(attr: &str) -> Option<Gf> {
        Some(match attr {
            "sogg" => Gf::Subj,
            "ogg" => Gf::Obj,
            "ogg2" => Gf::Obj2,
            "obl" => Gf::Obl,
            "vcomp" => Gf::Vcomp,
            "ncomp" => Gf::Ncomp,
            "adjs" => Gf::Adjunct,
            "mods" => Gf::Mod,
            _ => return None,
        })
    }
}

/// Functional annotation on a c-structure node.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FAnnot {
    pub df: Option<Df>,
    pub gf: Option<Gf>,
    /// Set on a bare-NP topic whose agreement with the clause is not enforced.
    pub hanging: bool,
}

impl FAnnot {
    pub fn gf(gf: Gf) -> FAnnot {
        FAnnot {
            gf: Some(gf),
            ..FAnnot::default()
        }
    }

    pub fn df(df: Df) -> FAnnot {
        FAnnot {
            df: Some(df),
            ..FAnnot::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.df.is_none() && self.gf.is_none()
    }
}

impl fmt::Display for FAnnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.df {
            Some(Df::Focus) => parts.push("^FOCUS=!".to_string()),
            Some(Df::Topic) => parts.push("^TOPIC=!".to_string()),
            None => {}
        }
        if let Some(g) = self.gf {
            parts.push(match g {
                Gf::Adjunct | Gf::Mod => format!("!in^{}", g.as_str()),
                _ => format!("^{}=!", g.as_str()),
            });
        }
        if self.hanging {
            parts.push("hanging".into());
        }
        f.write_str(&parts.join(","))
    }
}

/// A terminal. `index` is `None` for implicit material (the copula of a
/// verbless fragment).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaf {
    pub index: Option<usize>,
    pub entry: Arc<LexicalEntry>,
}

impl Leaf {
    pub fn new(index: usize, entry: impl Into<Arc<LexicalEntry>>) -> Leaf {
        Leaf {
            index: Some(index),
            entry: entry.into(),
        }
    }

    pub fn implicit(entry: impl Into<Arc<LexicalEntry>>) -> Leaf {
        Leaf {
            index: None,
            entry: entry.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Child {
    Node(CNode),
    Leaf(Leaf),
}

impl Child {
    pub fn symbol(&self) -> String {
        match self {
            Child::Node(n) => n.cat.to_string(),
            Child::Leaf(l) => l.entry.pos.to_string(),
        }
    }

    pub fn as_node(&self) -> Option<&CNode> {
        match self {
            Child::Node(n) => Some(n),
            Child::Leaf(_) => None,
        }
    }

    pub fn as_leaf(&self) -> Option<&Leaf> {
        match self {
            Child::Leaf(l) => Some(l),
            Child::Node(_) => None,
        }
    }

    fn collect_indices(&self, out: &mut Vec<usize>) {
        match self {
            Child::Leaf(l) => out.extend(l.index),
            Child::Node(n) => n.kids.iter().for_each(|k| k.collect_indices(out)),
        }
    }
}

/// A c-structure node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CNode {
    pub cat: Category,
    pub span: Range<usize>,
    pub head: bool,
    pub fannot: FAnnot,
    pub kids: Vec<Child>,
    /// Features stamped on a reconstructed verb complex.
    pub feats: Option<Morph>,
    /// Token indices of suspended focus modifiers resolved against this node.
    pub focus_links: Vec<usize>,
}

impl CNode {
    /// Builds a node whose span covers its children.
    pub fn new(cat: Category, kids: Vec<Child>) -> CNode {
        let mut n = CNode {
            cat,
            span: 0..0,
            head: false,
            fannot: FAnnot::default(),
            kids,
            feats: None,
            focus_links: Vec::new(),
        };
        n.recompute_span();
        n
    }

    pub fn with_annot(mut self, fannot: FAnnot) -> CNode {
        self.fannot = fannot;
        self
    }

    pub fn as_head(mut self) -> CNode {
        self.head = true;
        self
    }

    pub fn recompute_span(&mut self) {
        let idx = self.token_indices();
        self.span = match (idx.iter().min(), idx.iter().max()) {
            (Some(&a), Some(&b)) => a..b + 1,
            _ => {
                // implicit-only node: empty span at the first child's position
                0..0
            }
        };
    }

    /// Token indices covered by this node in left-to-right order.
    pub fn token_indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for k in &self.kids {
            k.collect_indices(&mut out);
        }
        out
    }

    pub fn leaves(&self) -> Vec<&Leaf> {
        let mut out = Vec::new();
        self.walk_leaves(&mut |l| out.push(l));
        out
    }

    fn walk_leaves<'a>(&'a self, f: &mut dyn FnMut(&'a Leaf)) {
        for k in &self.kids {
            match k {
                Child::Leaf(l) => f(l),
                Child::Node(n) => n.walk_leaves(f),
            }
        }
    }

    pub fn nodes(&self) -> Vec<&CNode> {
        let mut out = vec![self];
        for k in &self.kids {
            if let Child::Node(n) = k {
                out.extend(n.nodes());
            }
        }
        out
    }

    /// Lexical head: the noun of an NP, the adjective of an AP, the
    /// preposition of a PP, the last verb form of a verbal projection.
    pub fn head_leaf(&self) -> Option<&Leaf> {
        use crate::lexicon::Pos;
        let direct = |pred: &dyn Fn(Pos) -> bool| {
            self.kids
                .iter()
                .filter_map(Child::as_leaf)
                .filter(|l| pred(l.entry.pos))
                .last()
        };
        match self.cat {
            Category::NP => direct(&|p| p.is_nominal_head())
                .or_else(|| self.child_nodes().find(|n| n.cat == Category::NP)?.head_leaf()),
            Category::AP => direct(&|p| p == Pos::Adj),
            Category::AdvP => direct(&|p| p == Pos::Adv),
            Category::PP => direct(&|p| matches!(p, Pos::Prep | Pos::ArtPrep))
                .or_else(|| self.child_nodes().find(|n| n.cat == Category::PP)?.head_leaf()),
            Category::V0 | Category::I0 => {
                direct(&|p| p.is_verbal()).or_else(|| self.child_nodes().find(|n| n.cat == Category::V0)?.head_leaf())
            }
            Category::C0 => self.kids.iter().filter_map(Child::as_leaf).next(),
            _ => self.child_nodes().find_map(|n| n.head_leaf()),
        }
    }

    pub fn child_nodes(&self) -> impl Iterator<Item = &CNode> {
        self.kids.iter().filter_map(Child::as_node)
    }

    pub fn find(&self, cat: Category) -> Option<&CNode> {
        self.nodes().into_iter().find(|n| n.cat == cat)
    }

    pub fn surface(&self) -> String {
        self.leaves()
            .iter()
            .map(|l| {
                if l.index.is_some() {
                    l.entry.surface.clone()
                } else {
                    "∅".to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Checks that every overt token `0..n` is covered exactly once and that
    /// each node's children are contiguous and ordered.
    pub fn check_partition(&self, n: usize) -> Result<(), String> {
        let mut idx = self.token_indices();
        let ordered = idx.windows(2).all(|w| w[0] < w[1]);
        idx.sort_unstable();
        if idx != (0..n).collect::<Vec<_>>() {
            return Err(format!("tokens covered {idx:?}, expected 0..{n}"));
        }
        if !ordered {
            return Err("leaves out of order".into());
        }
        self.check_contiguous()
    }

    fn check_contiguous(&self) -> Result<(), String> {
        let mut cursor: Option<usize> = None;
        for k in &self.kids {
            let idx = match k {
                Child::Leaf(l) => l.index.into_iter().collect::<Vec<_>>(),
                Child::Node(c) => {
                    c.check_contiguous()?;
                    c.token_indices()
                }
            };
            if let (Some(&first), Some(&last)) = (idx.first(), idx.last()) {
                if last + 1 - first != idx.len() {
                    return Err(format!("{} has a discontinuous child", self.cat));
                }
                if let Some(c) = cursor {
                    if first != c {
                        return Err(format!("{} children are not adjacent", self.cat));
                    }
                }
                cursor = Some(last + 1);
            }
        }
        Ok(())
    }

    /// Indented labeled bracketing, one node per line.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.pretty_into(0, &mut out);
        out
    }

    fn pretty_into(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        out.push_str(&pad);
        out.push('[');
        out.push_str(self.cat.as_str());
        if self.head {
            out.push('*');
        }
        if !self.fannot.is_empty() || self.fannot.hanging {
            out.push_str(&format!(" {{{}}}", self.fannot));
        }
        out.push('\n');
        for k in &self.kids {
            match k {
                Child::Node(n) => n.pretty_into(depth + 1, out),
                Child::Leaf(l) => {
                    out.push_str(&pad);
                    out.push_str("  ");
                    let form = if l.index.is_some() {
                        l.entry.surface.as_str()
                    } else {
                        "∅"
                    };
                    out.push_str(&format!("{}/{}\n", form, l.entry.pos));
                }
            }
        }
        out.push_str(&pad);
        out.push_str("]\n");
    }
}

impl fmt::Display for CNode {
    /// Compact one-line bracketing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.cat)?;
        for k in &self.kids {
            match k {
                Child::Node(n) => write!(f, " {n}")?,
                Child::Leaf(l) => match l.index {
                    Some(_) => write!(f, " {}", l.entry.surface)?,
                    None => write!(f, " ∅")?,
                },
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::Lexicon;

    fn leaf(lex: &Lexicon, i: usize, w: &str) -> Child {
        Child::Leaf(Leaf::new(i, lex.lookup(w).remove(0)))
    }

    #[test]
    fn partition_and_display() {
        let lex = Lexicon::bundled();
        let np = CNode::new(Category::NP, vec![leaf(&lex, 0, "il"), leaf(&lex, 1, "cor")]);
        assert_eq!(np.span, 0..2);
        assert_eq!(np.to_string(), "[NP il cor]");
        assert!(np.check_partition(2).is_ok());
        assert!(np.check_partition(3).is_err());
        let bad = CNode::new(Category::NP, vec![leaf(&lex, 1, "cor"), leaf(&lex, 0, "il")]);
        assert!(bad.check_partition(2).is_err());
    }

    #[test]
    fn category_names_roundtrip() {
        for c in Category::ALL {
            assert_eq!(c.as_str().parse::<Category>().unwrap(), c);
        }
    }
}
