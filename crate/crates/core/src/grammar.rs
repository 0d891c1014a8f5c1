//! Phrase-structure rule file and tree licensing.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::cstruct::{CNode, Category, Child};
use crate::lexicon::Pos;

pub const BUNDLED_GRAMMAR: &str = include_str!("../data/grammar.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrammarError {
    #[error("grammar line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("no rule licenses {lhs} -> {rhs}")]
    Unlicensed { lhs: Category, rhs: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tier {
    Canonical,
    Phrasal,
    Noncanonical,
}

impl Tier {
    pub fn as_str(self) -> &'static str {
        match self {
            Tier::Canonical => "canonical",
            Tier::Phrasal => "phrasal",
            Tier::Noncanonical => "noncanonical",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sym {
    Cat(Category),
    Pos(Pos),
}

impl Sym {
    fn parse(s: &str) -> Result<Sym, String> {
        if let Ok(c) = s.parse::<Category>() {
            return Ok(Sym::Cat(c));
        }
        s.parse::<Pos>()
            .map(Sym::Pos)
            .map_err(|_| format!("unknown symbol {s:?}"))
    }

    fn matches(self, child: &Child) -> bool {
        match (self, child) {
            (Sym::Cat(c), Child::Node(n)) => n.cat == c,
            (Sym::Pos(p), Child::Leaf(l)) => l.entry.pos == p,
            _ => false,
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Cat(c) => write!(f, "{c}"),
            Sym::Pos(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quant {
    One,
    Opt,
    Star,
    Plus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub alts: Vec<Sym>,
    pub quant: Quant,
}

impl Item {
    fn parse(s: &str) -> Result<Item, String> {
        let (body, quant) = match s.chars().last() {
            Some('?') => (&s[..s.len() - 1], Quant::Opt),
            Some('*') => (&s[..s.len() - 1], Quant::Star),
            Some('+') => (&s[..s.len() - 1], Quant::Plus),
            _ => (s, Quant::One),
        };
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
        if body.is_empty() {
            return Err(format!("empty item {s:?}"));
        }
        let alts = body.split('|').map(Sym::parse).collect::<Result<_, _>>()?;
        Ok(Item { alts, quant })
    }

    fn accepts(&self, child: &Child) -> bool {
        self.alts.iter().any(|s| s.matches(child))
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alts: Vec<String> = self.alts.iter().map(Sym::to_string).collect();
        let body = if alts.len() > 1 && self.quant != Quant::One {
            format!("({})", alts.join("|"))
        } else {
            alts.join("|")
        };
        let q = match self.quant {
            Quant::One => "",
            Quant::Opt => "?",
            Quant::Star => "*",
            Quant::Plus => "+",
        };
        write!(f, "{body}{q}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Category,
    pub rhs: Vec<Item>,
    pub tier: Tier,
    /// Reanalysis rank; 0 outside the noncanonical tier.
    pub rank: u32,
    pub id: Option<String>,
    pub annotations: Vec<(String, String)>,
    pub line: usize,
}

impl Rule {
    pub fn matches(&self, kids: &[Child]) -> bool {
        match_items(&self.rhs, kids)
    }
}

fn match_items(items: &[Item], kids: &[Child]) -> bool {
    let Some((item, rest)) = items.split_first() else {
        return kids.is_empty();
    };
    let (min, max) = match item.quant {
        Quant::One => (1, 1),
        Quant::Opt => (0, 1),
        Quant::Star => (0, usize::MAX),
        Quant::Plus => (1, usize::MAX),
    };
    let mut taken = 0;
    loop {
        if taken >= min && match_items(rest, &kids[taken..]) {
            return true;
        }
        if taken == max || taken == kids.len() || !item.accepts(&kids[taken]) {
            return false;
        }
        taken += 1;
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ->", self.lhs)?;
        for i in &self.rhs {
            write!(f, " {i}")?;
        }
        write!(f, " @{}", self.tier)?;
        if self.tier == Tier::Noncanonical {
            write!(f, " @rank={}", self.rank)?;
        }
        if let Some(id) = &self.id {
            write!(f, " @id={id}")?;
        }
        for (s, a) in &self.annotations {
            write!(f, " @ann={s}:{a}")?;
        }
        Ok(())
    }
}

/// Rules licensing a validated tree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Licensing {
    pub tiers: BTreeSet<Tier>,
    pub strategies: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    pub rules: Vec<Rule>,
}

impl Grammar {
    pub fn bundled() -> Grammar {
        Grammar::parse(BUNDLED_GRAMMAR).expect("bundled grammar is well-formed")
    }

    pub fn parse(text: &str) -> Result<Grammar, GrammarError> {
        let mut rules = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: String| GrammarError::Format { line, msg };
            let (lhs, rest) = body.split_once("->").ok_or_else(|| err("missing '->'".into()))?;
            let lhs: Category = lhs.trim().parse().map_err(err)?;
            let mut rhs = Vec::new();
            let mut tier = None;
            let mut rank = None;
            let mut id = None;
            let mut annotations = Vec::new();
            for tok in rest.split_whitespace() {
                if let Some(tag) = tok.strip_prefix('@') {
                    match tag.split_once('=') {
                        None => {
                            let t = match tag {
                                "canonical" => Tier::Canonical,
                                "phrasal" => Tier::Phrasal,
                                "noncanonical" => Tier::Noncanonical,
                                other => return Err(err(format!("unknown tier {other:?}"))),
                            };
                            if tier.replace(t).is_some() {
                                return Err(err("tier given twice".into()));
                            }
                        }
                        Some(("rank", v)) => {
                            let r: u32 = v.parse().map_err(|_| err(format!("bad rank {v:?}")))?;
                            if r == 0 {
                                return Err(err("ranks start at 1".into()));
                            }
                            rank = Some(r);
                        }
                        Some(("id", v)) if !v.is_empty() => id = Some(v.to_string()),
                        Some(("ann", v)) => {
                            let (s, a) = v
                                .split_once(':')
                                .ok_or_else(|| err(format!("annotation {v:?} lacks ':'")))?;
                            annotations.push((s.to_string(), a.to_string()));
                        }
                        _ => return Err(err(format!("unknown directive {tok:?}"))),
                    }
                } else {
                    if tier.is_some() || rank.is_some() {
                        return Err(err(format!("symbol {tok:?} after directives")));
                    }
                    rhs.push(Item::parse(tok).map_err(err)?);
                }
            }
            if rhs.is_empty() {
                return Err(err("empty right-hand side".into()));
            }
            let tier = tier.ok_or_else(|| err("missing tier".into()))?;
            let rank = match (tier, rank) {
                (Tier::Noncanonical, Some(r)) => r,
                (Tier::Noncanonical, None) => return Err(err("noncanonical rule needs a rank".into())),
                (_, Some(_)) => return Err(err("only noncanonical rules take a rank".into())),
                (_, None) => 0,
            };
            if tier == Tier::Noncanonical && id.is_none() {
                return Err(err("noncanonical rule needs an id".into()));
            }
            rules.push(Rule {
                lhs,
                rhs,
                tier,
                rank,
                id,
                annotations,
                line,
            });
        }
        if rules.is_empty() {
            return Err(GrammarError::Format {
                line: 0,
                msg: "no rules".into(),
            });
        }
        Ok(Grammar { rules })
    }

    /// Reanalysis strategies in rank order; each id appears once, at the
    /// lowest rank it is declared with.
    pub fn strategies(&self) -> Vec<(u32, String)> {
        let mut out: Vec<(u32, String)> = Vec::new();
        let mut rules: Vec<&Rule> = self.rules.iter().filter(|r| r.tier == Tier::Noncanonical).collect();
        rules.sort_by_key(|r| r.rank);
        for r in rules {
            let id = r.id.clone().unwrap_or_default();
            if !out.iter().any(|(_, s)| *s == id) {
                out.push((r.rank, id));
            }
        }
        out
    }

    /// Finds the licensing rule for one node among rules accepted by
    /// `enabled`, preferring canonical and phrasal rules, then lower ranks.
    pub fn license<'a>(&'a self, node: &CNode, enabled: &dyn Fn(&Rule) -> bool) -> Option<&'a Rule> {
        let mut cands: Vec<&Rule> = self.rules.iter().filter(|r| r.lhs == node.cat && enabled(r)).collect();
        cands.sort_by_key(|r| (r.tier == Tier::Noncanonical, r.rank));
        cands.into_iter().find(|r| r.matches(&node.kids))
    }

    /// Checks that every node of `tree` is licensed by an enabled rule.
    pub fn validate(&self, tree: &CNode, enabled: &dyn Fn(&Rule) -> bool) -> Result<Licensing, GrammarError> {
        let mut lic = Licensing::default();
        for node in tree.nodes() {
            let rule = self.license(node, enabled).ok_or_else(|| GrammarError::Unlicensed {
                lhs: node.cat,
                rhs: node.kids.iter().map(Child::symbol).collect::<Vec<_>>().join(" "),
            })?;
            lic.tiers.insert(rule.tier);
            if let Some(id) = &rule.id {
                lic.strategies.insert(id.clone());
            }
        }
        Ok(lic)
    }

    pub fn validate_all(&self, tree: &CNode) -> Result<Licensing, GrammarError> {
        self.validate(tree, &|_| true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstruct::Leaf;
    use crate::lexicon::Lexicon;

    fn leaf(lex: &Lexicon, i: usize, w: &str) -> Child {
        Child::Leaf(Leaf::new(i, lex.lookup(w).remove(0)))
    }

    #[test]
    fn bundled_grammar_has_ranked_strategies() {
        let g = Grammar::bundled();
        let s = g.strategies();
        let ranks: Vec<u32> = s.iter().map(|(r, _)| *r).collect();
        assert_eq!(ranks, (1..=10).collect::<Vec<_>>());
        assert_eq!(s[0].1, "subj_vp_internal");
        assert_eq!(s[7].1, "verb_complex");
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(Grammar::parse("NP -> det noun").is_err());
        assert!(Grammar::parse("XP -> det @phrasal").is_err());
        assert!(Grammar::parse("NP -> det @noncanonical @id=x").is_err());
        assert!(Grammar::parse("NP -> det @phrasal @rank=2").is_err());
        assert!(Grammar::parse("NP -> dett @phrasal").is_err());
        assert!(Grammar::parse("NP det @phrasal").is_err());
    }

    #[test]
    fn rule_roundtrips_through_display() {
        let g = Grammar::bundled();
        for r in &g.rules {
            let again = Grammar::parse(&r.to_string()).unwrap();
            assert_eq!(again.rules[0].rhs, r.rhs, "{r}");
            assert_eq!(again.rules[0].rank, r.rank);
        }
    }

    #[test]
    fn licenses_np_and_rejects_bad_order() {
        let lex = Lexicon::bundled();
        let g = Grammar::bundled();
        let np = CNode::new(Category::NP, vec![leaf(&lex, 0, "il"), leaf(&lex, 1, "cor")]);
        let lic = g.validate_all(&np).unwrap();
        assert!(lic.tiers.contains(&Tier::Phrasal));
        let bad = CNode::new(Category::NP, vec![leaf(&lex, 0, "cor"), leaf(&lex, 1, "il")]);
        assert!(matches!(g.validate_all(&bad), Err(GrammarError::Unlicensed { .. })));
    }

    #[test]
    fn star_and_plus_quantifiers() {
        let lex = Lexicon::bundled();
        let g = Grammar::parse("SpecVP -> (TopP|FocP)+ @noncanonical @rank=6 @id=df_vp").unwrap();
        let np = CNode::new(Category::NP, vec![leaf(&lex, 0, "lei")]);
        let top = CNode::new(Category::TopP, vec![Child::Node(np.clone())]);
        let foc = CNode::new(Category::FocP, vec![Child::Node(np)]);
        let empty = CNode::new(Category::SpecVP, vec![]);
        assert!(!g.rules[0].matches(&empty.kids));
        let two = CNode::new(Category::SpecVP, vec![Child::Node(top), Child::Node(foc)]);
        assert!(g.rules[0].matches(&two.kids));
    }
}
