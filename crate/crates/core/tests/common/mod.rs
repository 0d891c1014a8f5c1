//! Oracles and fixtures shared by the integration tests and the
//! acceptance run.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use verso::discourse::BindMode;
use verso::fstruct::{check_wellformedness, unify, FStructure, Value, Violation};
use verso::grammar::Grammar;
use verso::lexicon::Lexicon;
use verso::metrics::{Arc, Projectivity};
use verso::parser::Parser;
use verso::pipeline::{analyse, Analysis, Interpretation};
use verso::suite::{self, SuiteSentence};

pub fn analyse_suite() -> Vec<(SuiteSentence, Analysis)> {
    let lex = Lexicon::bundled();
    let g = Grammar::bundled();
    let p = Parser::new(&g, &lex);
    suite::bundled()
        .into_iter()
        .map(|s| {
            let a = analyse(&p, &lex, &s.text).unwrap_or_else(|e| panic!("{}: {e}", s.id));
            (s, a)
        })
        .collect()
}

pub fn fstructure(id: &str) -> FStructure {
    let lex = Lexicon::bundled();
    let g = Grammar::bundled();
    let p = Parser::new(&g, &lex);
    let s = suite::bundled().into_iter().find(|s| s.id == id).unwrap();
    analyse(&p, &lex, &s.text).unwrap().interpretation.fstructure
}

// Unification.

pub const ATOMS: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fact {
    Atom(String),
    Node,
}

pub type Facts = BTreeMap<Vec<String>, Fact>;

pub fn flatten(f: &FStructure) -> Facts {
    fn go(f: &FStructure, prefix: &[String], out: &mut Facts) {
        for (k, v) in &f.attrs {
            let mut p = prefix.to_vec();
            p.push(k.clone());
            match v {
                Value::Atom(a) => {
                    out.insert(p, Fact::Atom(a.clone()));
                }
                Value::Fs(x) => {
                    out.insert(p.clone(), Fact::Node);
                    go(x, &p, out);
                }
                other => panic!("unexpected value {other:?}"),
            }
        }
    }
    let mut out = Facts::new();
    go(f, &[], &mut out);
    out
}

/// Union of facts, or the first path holding two different facts.
pub fn oracle(a: &Facts, b: &Facts) -> Result<Facts, Vec<String>> {
    let mut out = a.clone();
    let mut clashes = Vec::new();
    for (p, v) in b {
        match a.get(p) {
            Some(w) if w != v => clashes.push(p.clone()),
            _ => {
                out.insert(p.clone(), v.clone());
            }
        }
    }
    match clashes.into_iter().min() {
        Some(p) => Err(p),
        None => Ok(out),
    }
}

fn flat_values() -> Vec<Option<Value>> {
    let mut v = vec![None];
    v.extend(ATOMS.iter().map(|a| Some(Value::atom(*a))));
    v
}

fn with(attrs: &[(&str, &Option<Value>)]) -> FStructure {
    let mut f = FStructure::new();
    for (k, v) in attrs {
        if let Some(v) = v {
            f.put(*k, v.clone());
        }
    }
    f
}

/// Depth-2 structures over attributes a, b, c and atoms x, y, z, where c
/// may hold a nested structure over `inner`.
pub fn universe(inner: &[&str]) -> Vec<FStructure> {
    let flat = flat_values();
    let mut nested: Vec<FStructure> = vec![FStructure::new()];
    for k in inner {
        nested = nested
            .iter()
            .flat_map(|n| {
                flat.iter().map(move |v| {
                    let mut m = n.clone();
                    if let Some(v) = v {
                        m.put(*k, v.clone());
                    }
                    m
                })
            })
            .collect();
    }
    let mut c_vals = flat.clone();
    c_vals.extend(nested.into_iter().map(|n| Some(Value::Fs(n))));
    let mut out = Vec::new();
    for a in &flat {
        for b in &flat {
            for c in &c_vals {
                out.push(with(&[("a", a), ("b", b), ("c", c)]));
            }
        }
    }
    out
}

pub fn check_against_oracle(x: &FStructure, y: &FStructure) -> Option<FStructure> {
    let got = unify(x, y);
    match (oracle(&flatten(x), &flatten(y)), &got) {
        (Ok(facts), Ok(u)) => assert_eq!(flatten(u), facts, "{x:?} + {y:?}"),
        (Err(p), Err(c)) => assert_eq!(c.path, p.join("."), "{x:?} + {y:?}"),
        (o, g) => panic!("oracle {o:?} vs unify {g:?} on {x:?} + {y:?}"),
    }
    got.ok()
}

pub fn check_idempotence(u: &[FStructure]) {
    for x in u {
        assert_eq!(&unify(x, x).unwrap(), x);
    }
}

pub fn check_commutativity_against_oracle(u: &[FStructure]) {
    for x in u {
        for y in u {
            let xy = check_against_oracle(x, y);
            assert_eq!(xy, unify(y, x).ok(), "{x:?} / {y:?}");
        }
    }
}

pub fn check_associativity(u: &[FStructure]) {
    let pairs: Vec<Vec<Option<FStructure>>> = u.iter().map(|x| u.iter().map(|y| unify(x, y).ok()).collect()).collect();
    for (i, x) in u.iter().enumerate() {
        for (j, y) in u.iter().enumerate() {
            for (k, z) in u.iter().enumerate() {
                let left = pairs[i][j].as_ref().and_then(|xy| unify(xy, z).ok());
                let right = pairs[j][k].as_ref().and_then(|yz| unify(x, yz).ok());
                assert_eq!(left, right, "{x:?} {y:?} {z:?}");
            }
        }
    }
}

// Projectivity.

/// Every unordered pair of arcs whose spans interleave strictly.
pub fn naive_crossings(arcs: &[Arc]) -> Vec<(Arc, Arc)> {
    let mut out = Vec::new();
    for (i, a) in arcs.iter().enumerate() {
        for b in &arcs[i + 1..] {
            let (l1, r1, l2, r2) = (a.left(), a.right(), b.left(), b.right());
            if (l1 < l2 && l2 < r1 && r1 < r2) || (l2 < l1 && l1 < r2 && r2 < r1) {
                out.push(if (l1, r1) <= (l2, r2) { (*a, *b) } else { (*b, *a) });
            }
        }
    }
    sort_pairs(&mut out);
    out
}

fn sort_pairs(v: &mut [(Arc, Arc)]) {
    v.sort_by_key(|(a, b)| (a.left(), a.right(), a.head, b.left(), b.right(), b.head));
}

pub fn crossings(p: Projectivity) -> Vec<(Arc, Arc)> {
    let mut v = match p {
        Projectivity::Projective => Vec::new(),
        Projectivity::Crossing(v) => v,
    };
    sort_pairs(&mut v);
    v
}

/// A random dependency tree over tokens 1..=n rooted at 0: tokens are
/// attached in random order to a random already-attached node.
pub fn random_tree(rng: &mut StdRng, n: usize) -> Vec<Arc> {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut attached = vec![0];
    let mut arcs = Vec::new();
    for d in order {
        let h = attached[rng.gen_range(0..attached.len())];
        arcs.push(Arc::new(h, d));
        attached.push(d);
    }
    arcs
}

// Well-formedness.

/// Kind and path of a violation, with the missing function for
/// completeness.
pub fn violation_key(v: &Violation) -> String {
    match v {
        Violation::Uniqueness { path, .. } => format!("uniqueness@{path}"),
        Violation::Coherence { path } => format!("coherence@{path}"),
        Violation::Completeness { path, gf, pred } => format!("completeness@{path} {pred}:{gf}"),
    }
}

fn remove(f: &mut FStructure, path: &str) {
    let (parent, attr) = path.rsplit_once('.').unwrap_or(("", path));
    f.at_mut(parent).unwrap().attrs.remove(attr).unwrap();
}

fn sub(f: &FStructure, path: &str) -> Value {
    Value::Fs(f.at(path).unwrap().clone())
}

fn set_member<'a>(
    f: &'a mut FStructure,
    path: &str,
    attr: &str,
    pick: impl Fn(&FStructure) -> bool,
) -> &'a mut FStructure {
    let Some(Value::Set(xs)) = f.at_mut(path).unwrap().get_mut(attr) else {
        panic!("{path}.{attr} is not a set");
    };
    xs.iter_mut().find(|x| pick(x)).unwrap()
}

pub struct Mutation {
    pub name: &'static str,
    pub fstructure: FStructure,
    pub expected: Vec<&'static str>,
}

/// Ten single-fault mutations of accepted f-structures.
pub fn mutations() -> Vec<Mutation> {
    let xii = fstructure("xii");
    let x = fstructure("x");
    let iii = fstructure("iii");
    let mut out = Vec::new();
    let mut add = |name, base: &FStructure, edit: &dyn Fn(&mut FStructure), expected| {
        let mut f = base.clone();
        edit(&mut f);
        out.push(Mutation {
            name,
            fstructure: f,
            expected,
        });
    };
    add(
        "focus deleted",
        &xii,
        &|f| {
            remove(f, "focus");
            remove(f, "ogg");
        },
        vec!["completeness@ educare:obj1"],
    );
    add(
        "subject deleted",
        &xii,
        &|f| remove(f, "sogg"),
        vec!["completeness@ educare:subj1"],
    );
    add(
        "oblique deleted",
        &xii,
        &|f| remove(f, "obl"),
        vec!["completeness@ educare:obl"],
    );
    add(
        "spurious second object",
        &xii,
        &|f| {
            let v = sub(f, "obl.ogg");
            f.put("ogg2", v);
        },
        vec!["coherence@ogg2"],
    );
    add(
        "noun with an object",
        &xii,
        &|f| {
            let v = sub(f, "sogg");
            f.at_mut("obl.ogg").unwrap().put("ogg", v);
        },
        vec!["coherence@obl.ogg.ogg"],
    );
    add(
        "shared index with diverging content",
        &xii,
        &|f| f.at_mut("focus").unwrap().put_atom("gen", "mas"),
        vec!["uniqueness@ogg"],
    );
    add(
        "semantic form used twice",
        &xii,
        &|f| {
            let pred = f.at("focus").unwrap().set_items("mods")[0].get("pred").unwrap().clone();
            set_member(f, "sogg", "mods", |_| true).put("pred", pred);
        },
        vec!["uniqueness@sogg.mods.0.pred"],
    );
    add(
        "embedded clause loses its subject",
        &x,
        &|f| {
            remove(f, "adj.sub.focus");
            remove(f, "adj.sub.sogg");
        },
        vec!["completeness@adj.sub soffocare:subj1"],
    );
    add(
        "embedded clause gains an object",
        &x,
        &|f| {
            let v = Value::Fs(f.at("adj.sub").unwrap().set_items("adjs")[0].fs("ogg").unwrap().clone());
            f.at_mut("adj.sub").unwrap().put("ogg2", v);
        },
        vec!["coherence@adj.sub.ogg2"],
    );
    add(
        "controlled subject deleted",
        &iii,
        &|f| {
            let rel = set_member(f, "obl.ogg", "mods", |m| m.has("vcomp"));
            rel.fs_mut("vcomp").unwrap().attrs.remove("sogg").unwrap();
        },
        vec!["completeness@obl.ogg.mods.0.vcomp conversare:subj1"],
    );
    out
}

pub fn detected(m: &Mutation) -> Vec<String> {
    check_wellformedness(&m.fstructure)
        .violations
        .iter()
        .map(violation_key)
        .collect()
}

// Discourse.

fn members(v: &Value) -> Vec<&FStructure> {
    match v {
        Value::Fs(x) => vec![x],
        Value::Set(xs) => xs.iter().collect(),
        _ => Vec::new(),
    }
}

/// Indices reachable from `f` through anything but its own focus and topic.
fn argument_indices(f: &FStructure) -> Vec<String> {
    let mut out = Vec::new();
    for (k, v) in &f.attrs {
        if k != "focus" && k != "topic" {
            for x in members(v) {
                x.walk(&mut |_, y| out.extend(y.index.clone()));
            }
        }
    }
    out
}

/// Focus and topic fillers that neither fill an argument of their clause
/// nor antecede a clitic, as `df index at path`.
pub fn unbound_fillers(i: &Interpretation) -> Vec<String> {
    let anaphoric: Vec<&str> = i
        .bindings
        .iter()
        .filter(|b| b.mode == BindMode::Anaphoric)
        .map(|b| b.filler.as_str())
        .collect();
    let mut out = Vec::new();
    i.fstructure.walk(&mut |path, clause| {
        let args = argument_indices(clause);
        for df in ["focus", "topic"] {
            for filler in clause.get(df).map(members).unwrap_or_default() {
                let Some(ix) = &filler.index else { continue };
                if !args.contains(ix) && !anaphoric.contains(&ix.as_str()) {
                    out.push(format!("{df} {ix} at {path:?}"));
                }
            }
        }
    });
    out
}
