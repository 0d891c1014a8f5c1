//! Uniqueness, Coherence and Completeness.

use std::collections::BTreeMap;
use std::fmt;

use super::{FStructure, Value};
use crate::lexicon::GfSlot;

/// Attributes naming governable grammatical functions.
pub const GOVERNABLE: [&str; 6] = ["sogg", "ogg", "ogg2", "obl", "vcomp", "ncomp"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// One index or PRED instance with two different contents.
    Uniqueness { path: String, detail: String },
    /// A governable function the local PRED does not list.
    Coherence { path: String },
    /// A listed function with no value and no pending filler.
    Completeness { path: String, gf: String, pred: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Uniqueness { path, detail } => write!(f, "uniqueness at {path}: {detail}"),
            Violation::Coherence { path } => write!(f, "coherence: {path} is not governed"),
            Violation::Completeness { path, gf, pred } => {
                write!(f, "completeness: {pred} at {} lacks {gf}", or_root(path))
            }
        }
    }
}

fn or_root(p: &str) -> &str {
    if p.is_empty() {
        "<root>"
    } else {
        p
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WellformednessReport {
    pub violations: Vec<Violation>,
}

impl WellformednessReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn uniqueness(&self) -> Vec<&str> {
        self.paths(|v| matches!(v, Violation::Uniqueness { .. }))
    }

    pub fn coherence(&self) -> Vec<&str> {
        self.paths(|v| matches!(v, Violation::Coherence { .. }))
    }

    pub fn completeness(&self) -> Vec<&str> {
        self.paths(|v| matches!(v, Violation::Completeness { .. }))
    }

    fn paths(&self, keep: impl Fn(&Violation) -> bool) -> Vec<&str> {
        self.violations
            .iter()
            .filter(|v| keep(v))
            .map(|v| match v {
                Violation::Uniqueness { path, .. }
                | Violation::Coherence { path }
                | Violation::Completeness { path, .. } => path.as_str(),
            })
            .collect()
    }
}

impl fmt::Display for WellformednessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("uniqueness:ok coherence:ok completeness:ok");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&lines.join("\n"))
    }
}

fn join(path: &str, attr: &str) -> String {
    if path.is_empty() {
        attr.to_string()
    } else {
        format!("{path}.{attr}")
    }
}

/// Indices of every structure reachable from `f` through a grammatical
/// function or an adjunct set, excluding discourse functions.
fn bound_indices(f: &FStructure) -> Vec<String> {
    let mut out = Vec::new();
    for (k, v) in &f.attrs {
        if k == "focus" || k == "topic" {
            continue;
        }
        let items: Vec<&FStructure> = match v {
            Value::Fs(x) => vec![x],
            Value::Set(xs) => xs.iter().collect(),
            _ => continue,
        };
        for x in items {
            out.extend(x.index.clone());
            x.walk(&mut |_, y| out.extend(y.index.clone()));
        }
    }
    out
}

/// Whether a focus or topic of `f` still awaits a binding site.
fn has_pending_filler(f: &FStructure) -> bool {
    let bound = bound_indices(f);
    ["focus", "topic"].iter().any(|df| {
        let items: Vec<&FStructure> = match f.get(df) {
            Some(Value::Fs(x)) => vec![x],
            Some(Value::Set(xs)) => xs.iter().collect(),
            _ => Vec::new(),
        };
        items
            .iter()
            .any(|x| x.index.as_ref().is_none_or(|i| !bound.contains(i)))
    })
}

pub fn check_wellformedness(f: &FStructure) -> WellformednessReport {
    let mut violations = Vec::new();
    let mut by_index: BTreeMap<String, (String, String)> = BTreeMap::new();
    let mut by_pred: BTreeMap<u32, (String, Option<String>)> = BTreeMap::new();
    f.walk(&mut |path, x| {
        if let Some(i) = &x.index {
            let content = x.canonical();
            match by_index.get(i) {
                Some((p0, c0)) if *c0 != content => violations.push(Violation::Uniqueness {
                    path: path.to_string(),
                    detail: format!("index {i} already bound with different content at {}", or_root(p0)),
                }),
                Some(_) => {}
                None => {
                    by_index.insert(i.clone(), (path.to_string(), content));
                }
            }
        }
        if let Some(p) = x.pred() {
            match by_pred.get(&p.instance) {
                Some((p0, i0)) if *i0 != x.index => violations.push(Violation::Uniqueness {
                    path: join(path, "pred"),
                    detail: format!("semantic form {} already used at {}", p.lemma, or_root(p0)),
                }),
                Some(_) => {}
                None => {
                    by_pred.insert(p.instance, (path.to_string(), x.index.clone()));
                }
            }
        }

        let form = x.form();
        // A preposition governs its object.
        let prepositional = x.has("sem_mark");
        for gf in GOVERNABLE {
            if !x.has(gf) || (prepositional && gf == "ogg") {
                continue;
            }
            let governed = GfSlot::from_attr(gf).is_some_and(|s| form.is_some_and(|fm| fm.governs(s)));
            if !governed {
                violations.push(Violation::Coherence { path: join(path, gf) });
            }
        }
        if let Some(fm) = form {
            let pending = has_pending_filler(x);
            for a in &fm.args {
                let attr = a.gf.attr();
                if !x.has(attr) && !pending {
                    violations.push(Violation::Completeness {
                        path: path.to_string(),
                        gf: a.gf.to_string(),
                        pred: fm.pred.clone(),
                    });
                }
            }
        }
    });
    WellformednessReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fstruct::Pred;
    use crate::lexicon::SemanticForm;

    fn clause(args: &str) -> FStructure {
        let mut f = FStructure::with_index("f1");
        f.put(
            "pred",
            Value::Pred(Pred {
                lemma: "educare".into(),
                form: Some(SemanticForm::parse("educare", args).unwrap()),
                instance: 1,
            }),
        );
        f
    }

    fn nominal(i: &str, lemma: &str, inst: u32) -> FStructure {
        let mut f = FStructure::with_index(i);
        f.put(
            "pred",
            Value::Pred(Pred {
                lemma: lemma.into(),
                form: None,
                instance: inst,
            }),
        );
        f
    }

    #[test]
    fn complete_and_coherent() {
        let mut f = clause("np/subj1/causer_emot/[+hum],np/obj1/theme_emot/[-ani,+hum]");
        f.put("sogg", Value::Fs(nominal("sn1", "sognatore", 2)));
        f.put("ogg", Value::Fs(nominal("sn2", "lei", 3)));
        assert!(check_wellformedness(&f).is_ok());
    }

    #[test]
    fn missing_object_without_focus() {
        let mut f = clause("np/subj1/causer_emot/[+hum],np/obj1/theme_emot/[-ani,+hum]");
        f.put("sogg", Value::Fs(nominal("sn1", "sognatore", 2)));
        let r = check_wellformedness(&f);
        assert_eq!(r.completeness(), vec![""]);
        assert!(matches!(&r.violations[0], Violation::Completeness { gf, .. } if gf == "obj1"));
        f.put("focus", Value::Fs(nominal("sn2", "lei", 3)));
        assert!(check_wellformedness(&f).is_ok());
    }

    #[test]
    fn ungoverned_and_duplicated() {
        let mut f = clause("np/subj1/causer_emot/[+hum]");
        f.put("sogg", Value::Fs(nominal("sn1", "sognatore", 2)));
        f.put("ogg2", Value::Fs(nominal("sn2", "lei", 3)));
        assert_eq!(check_wellformedness(&f).coherence(), vec!["ogg2"]);

        let mut g = clause("np/subj1/causer_emot/[+hum]");
        g.put("sogg", Value::Fs(nominal("sn1", "sognatore", 2)));
        g.put("topic", Value::Fs(nominal("sn1", "lei", 3)));
        assert_eq!(check_wellformedness(&g).uniqueness(), vec!["topic"]);
    }
}
