//! Attribute-value structures and their unification.

mod build;
mod check;
mod print;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::lexicon::SemanticForm;

pub(crate) use build::prep_role;
pub use build::{build_fstructure, BuildError};
pub use check::{check_wellformedness, Violation, WellformednessReport, GOVERNABLE};
pub use print::{serialize, skeleton};

/// A PRED value. Two preds unify only when they are the same instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pred {
    pub lemma: String,
    pub form: Option<SemanticForm>,
    pub instance: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Atom(String),
    Pred(Pred),
    Fs(FStructure),
    /// Unordered; kept sorted by canonical form so equality ignores order.
    Set(Vec<FStructure>),
}

impl Value {
    pub fn atom(s: impl Into<String>) -> Value {
        Value::Atom(s.into())
    }

    pub fn set(items: Vec<FStructure>) -> Value {
        Value::Set(normalize_set(items))
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Value::Atom(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_fs(&self) -> Option<&FStructure> {
        match self {
            Value::Fs(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_pred(&self) -> Option<&Pred> {
        match self {
            Value::Pred(p) => Some(p),
            _ => None,
        }
    }

    pub fn canonical(&self) -> String {
        match self {
            Value::Atom(s) => s.clone(),
            Value::Pred(p) => format!("{}#{}", p.lemma, p.instance),
            Value::Fs(f) => f.canonical(),
            Value::Set(v) => {
                let parts: Vec<String> = v.iter().map(FStructure::canonical).collect();
                format!("{{{}}}", parts.join(","))
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// A node of the functional structure. Attribute names starting with `_`
/// are bookkeeping and are never serialized.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FStructure {
    pub index: Option<String>,
    pub attrs: BTreeMap<String, Value>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("clash at {path}: {a} vs {b}")]
pub struct Clash {
    pub path: String,
    pub a: String,
    pub b: String,
}

fn normalize_set(mut items: Vec<FStructure>) -> Vec<FStructure> {
    items.sort_by_cached_key(FStructure::canonical);
    items.dedup();
    items
}

fn join(path: &str, attr: &str) -> String {
    if path.is_empty() {
        attr.to_string()
    } else {
        format!("{path}.{attr}")
    }
}

/// Orders indices by prefix, then numerically.
fn index_key(s: &str) -> (String, u64, String) {
    let cut = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
    let (p, n) = s.split_at(cut);
    (p.to_string(), n.parse().unwrap_or(u64::MAX), s.to_string())
}

fn unify_value(path: &str, a: &Value, b: &Value) -> Result<Value, Clash> {
    let clash = || Clash {
        path: path.to_string(),
        a: a.canonical(),
        b: b.canonical(),
    };
    match (a, b) {
        (Value::Atom(x), Value::Atom(y)) if x == y => Ok(a.clone()),
        (Value::Pred(x), Value::Pred(y)) if x == y => Ok(a.clone()),
        (Value::Fs(x), Value::Fs(y)) => unify_at(path, x, y).map(Value::Fs),
        (Value::Set(x), Value::Set(y)) => Ok(Value::set(x.iter().chain(y).cloned().collect())),
        _ => Err(clash()),
    }
}

fn unify_at(path: &str, a: &FStructure, b: &FStructure) -> Result<FStructure, Clash> {
    let index = match (&a.index, &b.index) {
        (Some(x), Some(y)) => Some(std::cmp::min_by_key(x, y, |s| index_key(s)).clone()),
        (x, y) => x.clone().or_else(|| y.clone()),
    };
    let mut attrs = a.attrs.clone();
    for (k, vb) in &b.attrs {
        let merged = match a.attrs.get(k) {
            Some(va) => unify_value(&join(path, k), va, vb)?,
            None => vb.clone(),
        };
        attrs.insert(k.clone(), merged);
    }
    Ok(FStructure { index, attrs })
}

/// Least structure containing both arguments. Conflicts are reported at
/// the lexicographically first clashing path.
pub fn unify(a: &FStructure, b: &FStructure) -> Result<FStructure, Clash> {
    unify_at("", a, b)
}

impl FStructure {
    pub fn new() -> FStructure {
        FStructure::default()
    }

    pub fn with_index(index: impl Into<String>) -> FStructure {
        FStructure {
            index: Some(index.into()),
            attrs: BTreeMap::new(),
        }
    }

    pub fn get(&self, attr: &str) -> Option<&Value> {
        self.attrs.get(attr)
    }

    pub fn get_mut(&mut self, attr: &str) -> Option<&mut Value> {
        self.attrs.get_mut(attr)
    }

    pub fn has(&self, attr: &str) -> bool {
        self.attrs.contains_key(attr)
    }

    pub fn atom(&self, attr: &str) -> Option<&str> {
        self.get(attr).and_then(Value::as_atom)
    }

    pub fn fs(&self, attr: &str) -> Option<&FStructure> {
        self.get(attr).and_then(Value::as_fs)
    }

    pub fn fs_mut(&mut self, attr: &str) -> Option<&mut FStructure> {
        match self.attrs.get_mut(attr) {
            Some(Value::Fs(f)) => Some(f),
            _ => None,
        }
    }

    pub fn pred(&self) -> Option<&Pred> {
        self.get("pred").and_then(Value::as_pred)
    }

    pub fn lemma(&self) -> Option<&str> {
        self.pred().map(|p| p.lemma.as_str())
    }

    pub fn form(&self) -> Option<&SemanticForm> {
        self.pred().and_then(|p| p.form.as_ref())
    }

    pub fn set_items(&self, attr: &str) -> &[FStructure] {
        match self.get(attr) {
            Some(Value::Set(v)) => v,
            _ => &[],
        }
    }

    /// Follows a dotted path of attribute names.
    pub fn at(&self, path: &str) -> Option<&FStructure> {
        if path.is_empty() {
            return Some(self);
        }
        path.split('.').try_fold(self, |f, a| f.fs(a))
    }

    pub fn at_mut(&mut self, path: &str) -> Option<&mut FStructure> {
        if path.is_empty() {
            return Some(self);
        }
        path.split('.').try_fold(self, |f, a| f.fs_mut(a))
    }

    /// Raw insertion, replacing any previous value.
    pub fn put(&mut self, attr: impl Into<String>, v: Value) {
        self.attrs.insert(attr.into(), v);
    }

    pub fn put_atom(&mut self, attr: &str, v: impl Into<String>) {
        self.put(attr, Value::Atom(v.into()));
    }

    /// Unifies `v` into `attr`.
    pub fn assign(&mut self, attr: &str, v: Value) -> Result<(), Clash> {
        let merged = match self.attrs.get(attr) {
            Some(old) => unify_value(attr, old, &v)?,
            None => v,
        };
        self.attrs.insert(attr.to_string(), merged);
        Ok(())
    }

    /// Adds a member to the set-valued `attr`.
    pub fn add_to_set(&mut self, attr: &str, f: FStructure) {
        let mut items = self.set_items(attr).to_vec();
        items.push(f);
        self.put(attr, Value::set(items));
    }

    /// Compact single-line rendering used for ordering and diagnostics.
    pub fn canonical(&self) -> String {
        let mut parts = Vec::new();
        if let Some(i) = &self.index {
            parts.push(format!("indice:{i}"));
        }
        for (k, v) in &self.attrs {
            if !k.starts_with('_') {
                parts.push(format!("{k}:{}", v.canonical()));
            }
        }
        format!("[{}]", parts.join(","))
    }

    /// Visits this structure and every nested one, depth first, with its
    /// dotted path. Set members are addressed as `attr.N`.
    pub fn walk<'a>(&'a self, f: &mut dyn FnMut(&str, &'a FStructure)) {
        fn go<'a>(path: &str, fs: &'a FStructure, f: &mut dyn FnMut(&str, &'a FStructure)) {
            f(path, fs);
            for (k, v) in &fs.attrs {
                match v {
                    Value::Fs(x) => go(&join(path, k), x, f),
                    Value::Set(xs) => {
                        for (i, x) in xs.iter().enumerate() {
                            go(&join(&join(path, k), &i.to_string()), x, f);
                        }
                    }
                    _ => {}
                }
            }
        }
        go("", self, f)
    }

    /// Re-sorts every set after in-place edits.
    pub fn normalize(&mut self) {
        for v in self.attrs.values_mut() {
            match v {
                Value::Fs(x) => x.normalize(),
                Value::Set(xs) => {
                    xs.iter_mut().for_each(FStructure::normalize);
                    *xs = normalize_set(std::mem::take(xs));
                }
                _ => {}
            }
        }
    }
}

impl fmt::Display for FStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}
