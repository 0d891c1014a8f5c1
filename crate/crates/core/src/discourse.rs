//! Binding of discourse functions, little-pro insertion and control.

use std::fmt;

use thiserror::Error;

use crate::fstruct::{FStructure, Pred, Value};
use crate::lexicon::{ArgSpec, GfSlot, TabRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BindMode {
    /// The filler itself occupies the target function.
    Functional,
    /// The filler is the antecedent of a clitic in the target function.
    Anaphoric,
}

impl fmt::Display for BindMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BindMode::Functional => "functional",
            BindMode::Anaphoric => "anaphoric",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    /// Index of the filler, or the verb lemma for a focused verb.
    pub filler: String,
    /// `focus` or `topic`.
    pub df: String,
    /// Dotted path of the binding site.
    pub target: String,
    pub mode: BindMode,
    pub agreement_exempt: bool,
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} -> {} ({})", self.df, self.filler, self.target, self.mode)?;
        if self.agreement_exempt {
            f.write_str(" agreement-exempt")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscourseError {
    #[error("no binding site for {df} {filler} at {}", or_root(.path))]
    EccViolation { df: String, filler: String, path: String },
    #[error("control of {} needs {controller}, which is empty", or_root(.path))]
    ControlFailure { path: String, controller: String },
}

fn or_root(p: &str) -> &str {
    if p.is_empty() {
        "<root>"
    } else {
        p
    }
}

fn join(path: &str, attr: &str) -> String {
    if attr.is_empty() {
        path.to_string()
    } else if path.is_empty() {
        attr.to_string()
    } else {
        format!("{path}.{attr}")
    }
}

/// Fresh `sn` indices and PRED instances above anything already in use.
struct Fresh {
    sn: u32,
    instance: u32,
}

impl Fresh {
    fn scan(f: &FStructure) -> Fresh {
        let mut sn = 0;
        let mut instance = 0;
        f.walk(&mut |_, x| {
            if let Some(n) = x.index.as_deref().and_then(|i| i.strip_prefix("sn")) {
                sn = sn.max(n.parse().unwrap_or(0));
            }
            if let Some(p) = x.pred() {
                instance = instance.max(p.instance);
            }
        });
        Fresh { sn, instance }
    }

    fn index(&mut self) -> String {
        self.sn += 1;
        format!("sn{}", self.sn)
    }

    fn pred(&mut self, lemma: &str) -> Value {
        self.instance += 1;
        Value::Pred(Pred {
            lemma: lemma.into(),
            form: None,
            instance: self.instance,
        })
    }
}

fn classes(x: &FStructure) -> Option<Vec<String>> {
    let head = if x.has("sem_mark") { x.fs("ogg")? } else { x };
    let cat = head.atom("cat")?;
    Some(
        cat.trim_matches(|c| c == '[' || c == ']')
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect(),
    )
}

/// Selectional restrictions form a disjunction; an unclassified filler
/// satisfies any of them.
fn satisfies(restrictions: &[String], x: &FStructure) -> bool {
    if restrictions.is_empty() {
        return true;
    }
    let Some(cls) = classes(x) else {
        return true;
    };
    let has = |c: &str| cls.iter().any(|k| k == c);
    let animate = has("animato") || has("umano");
    restrictions.iter().any(|r| match r.as_str() {
        "+hum" => has("umano"),
        "-hum" => !has("umano"),
        "+ani" => animate,
        "-ani" => !animate,
        "+abst" => has("astratto"),
        "-abst" => !has("astratto"),
        c => has(c.trim_start_matches('+')),
    })
}

fn category_fits(arg: &ArgSpec, x: &FStructure) -> bool {
    let cat = x.atom("_cat").unwrap_or("np");
    let fits = match arg.category.as_str() {
        "np" | "sn" => cat == "np",
        "pp" | "sp" => cat == "pp",
        "ap" | "sa" => cat == "ap",
        "vinf" | "vp" => cat == "vinf",
        _ => false,
    };
    fits && match (&arg.marker, x.atom("sem_mark")) {
        (Some(m), Some(s)) => m == s,
        (Some(_), None) => cat != "pp",
        _ => true,
    }
}

fn subject_agrees(clause: &FStructure, x: &FStructure) -> bool {
    let pers_ok = clause.atom("_pers").is_none_or(|p| x.atom("pers").unwrap_or("3") == p);
    let num_ok = clause.atom("_num").is_none_or(|n| match x.atom("num") {
        None | Some("any") => true,
        Some(m) => m == n,
    });
    pers_ok && num_ok
}

fn gn_agrees(a: &FStructure, b: &FStructure) -> bool {
    ["gen", "num"].iter().all(|k| match (a.atom(k), b.atom(k)) {
        (Some(x), Some(y)) => x == y || x == "any" || y == "any",
        _ => true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Site {
    Gf {
        attr: &'static str,
        mode: BindMode,
        exempt: bool,
    },
    Pred,
    Mods(String),
    Adjunct,
    Variable,
}

const TOPIC_ORDER: [GfSlot; 6] = [
    GfSlot::Subj1,
    GfSlot::Obj1,
    GfSlot::Obl,
    GfSlot::Obj2,
    GfSlot::Ncomp,
    GfSlot::Vcomp,
];
const FOCUS_ORDER: [GfSlot; 6] = [
    GfSlot::Obj1,
    GfSlot::Obl,
    GfSlot::Obj2,
    GfSlot::Subj1,
    GfSlot::Ncomp,
    GfSlot::Vcomp,
];

/// Relative path to a structure in `f` whose `mods` already hold `x`,
/// looking only through non-discourse attributes.
fn linked_mods(f: &FStructure, x: &FStructure) -> Option<String> {
    let idx = x.index.as_ref()?;
    let holds = |y: &FStructure| y.set_items("mods").iter().any(|m| m.index.as_ref() == Some(idx));
    if holds(f) {
        return Some("mods".into());
    }
    for (k, v) in &f.attrs {
        if k == "focus" || k == "topic" {
            continue;
        }
        if let Value::Fs(y) = v {
            let mut found = None;
            if holds(y) {
                found = Some(join(k, "mods"));
            }
            y.walk(&mut |p, z| {
                if found.is_none() && !p.is_empty() && holds(z) {
                    found = Some(join(&join(k, p), "mods"));
                }
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

fn sites(f: &FStructure, df: &str, x: &Value) -> Vec<Site> {
    let x = match x {
        Value::Atom(a) => {
            return if f.lemma() == Some(a.as_str()) {
                vec![Site::Pred]
            } else {
                Vec::new()
            }
        }
        Value::Fs(x) => x,
        _ => return Vec::new(),
    };
    if x.has("_relpron") && x.atom("_cat") == Some("pp") {
        return vec![Site::Variable];
    }
    if let Some(p) = linked_mods(f, x) {
        return vec![Site::Mods(p)];
    }
    let mut out = Vec::new();
    if let Some(form) = f.form() {
        let order = if df == "topic" { TOPIC_ORDER } else { FOCUS_ORDER };
        for slot in order {
            let Some(arg) = form.arg(slot) else { continue };
            let attr = slot.attr();
            match f.fs(attr) {
                None => {
                    if !category_fits(arg, x) || !satisfies(&arg.restrictions, x) {
                        continue;
                    }
                    let mut exempt = false;
                    if slot == GfSlot::Subj1 && !subject_agrees(f, x) {
                        if !f.has("_hanging") {
                            continue;
                        }
                        exempt = true;
                    }
                    out.push(Site::Gf {
                        attr,
                        mode: BindMode::Functional,
                        exempt,
                    });
                }
                Some(c) if df == "topic" && c.has("_clitic") && gn_agrees(c, x) => out.push(Site::Gf {
                    attr,
                    mode: BindMode::Anaphoric,
                    exempt: false,
                }),
                Some(_) => {}
            }
        }
    }
    if out.is_empty() && x.atom("_cat") == Some("pp") {
        out.push(Site::Adjunct);
    }
    out
}

fn fillers(f: &FStructure) -> Vec<(String, Value)> {
    let mut out = Vec::new();
    for df in ["focus", "topic"] {
        match f.get(df) {
            Some(Value::Set(xs)) => out.extend(xs.iter().map(|x| (df.to_string(), Value::Fs(x.clone())))),
            Some(v) => out.push((df.to_string(), v.clone())),
            None => {}
        }
    }
    out
}

fn filler_name(v: &Value) -> String {
    match v {
        Value::Atom(a) => a.clone(),
        Value::Fs(x) => x
            .index
            .clone()
            .or_else(|| x.fs("ogg").and_then(|o| o.index.clone()))
            .or_else(|| x.lemma().map(str::to_string))
            .unwrap_or_default(),
        other => other.canonical(),
    }
}

/// Innermost clause along the VCOMP chain, with its relative path.
fn innermost(f: &mut FStructure) -> (&mut FStructure, String) {
    if f.fs("vcomp").is_some() {
        let (g, p) = innermost(f.fs_mut("vcomp").unwrap());
        (g, join("vcomp", &p))
    } else {
        (f, String::new())
    }
}

struct Binder {
    fresh: Fresh,
    bindings: Vec<Binding>,
}

impl Binder {
    fn visit(&mut self, f: &mut FStructure, path: &str) -> Result<(), DiscourseError> {
        let keys: Vec<String> = f.attrs.keys().cloned().collect();
        for k in keys {
            let here = join(path, &k);
            match f.attrs.get_mut(&k) {
                Some(Value::Fs(x)) => self.visit(x, &here)?,
                Some(Value::Set(xs)) => {
                    for (i, x) in xs.iter_mut().enumerate() {
                        self.visit(x, &join(&here, &i.to_string()))?;
                    }
                }
                _ => {}
            }
        }
        self.bind_here(f, path)
    }

    fn bind_here(&mut self, f: &mut FStructure, path: &str) -> Result<(), DiscourseError> {
        let items = fillers(f);
        if items.is_empty() {
            return Ok(());
        }
        let mut plans: Vec<(usize, Vec<Site>)> = items
            .iter()
            .enumerate()
            .map(|(i, (df, v))| (i, sites(f, df, v)))
            .collect();
        plans.sort_by_key(|(i, s)| (s.len(), *i));
        let mut taken: Vec<&'static str> = Vec::new();
        for (i, cands) in plans {
            let (df, v) = &items[i];
            let chosen = cands
                .into_iter()
                .find(|s| !matches!(s, Site::Gf { attr, .. } if taken.contains(attr)));
            let Some(site) = chosen else {
                return Err(DiscourseError::EccViolation {
                    df: df.clone(),
                    filler: filler_name(v),
                    path: path.to_string(),
                });
            };
            let (target, mode, exempt) = match site {
                Site::Gf { attr, mode, exempt } => {
                    taken.push(attr);
                    let x = v.as_fs().cloned().unwrap_or_default();
                    match mode {
                        BindMode::Functional => f.put(attr, Value::Fs(x)),
                        BindMode::Anaphoric => {
                            if let (Some(c), Some(i)) = (f.fs_mut(attr), x.index.clone()) {
                                c.put_atom("antecedente", i);
                            }
                        }
                    }
                    (join(path, attr), mode, exempt)
                }
                Site::Pred => (join(path, "pred"), BindMode::Functional, false),
                Site::Mods(p) => (join(path, &p), BindMode::Functional, false),
                Site::Adjunct => {
                    let mut x = v.as_fs().cloned().unwrap_or_default();
                    let role = crate::fstruct::prep_role(x.atom("sem_mark").unwrap_or(""));
                    x.put_atom("_role", role);
                    f.add_to_set("adjs", x);
                    (join(path, "adjs"), BindMode::Functional, false)
                }
                Site::Variable => {
                    let x = v.as_fs().cloned().unwrap_or_default();
                    let mut var = FStructure::with_index(self.fresh.index());
                    var.put("pred", self.fresh.pred("vbl"));
                    if let Some(c) = x.atom("cat") {
                        var.put_atom("cat", c);
                    }
                    if let Some(i) = &x.index {
                        var.put_atom("controllore", i.clone());
                    }
                    var.put_atom("_role", "locativo");
                    let (inner, rel) = innermost(f);
                    inner.add_to_set("adjs", var);
                    (join(&join(path, &rel), "adjs"), BindMode::Anaphoric, false)
                }
            };
            self.bindings.push(Binding {
                filler: filler_name(v),
                df: df.clone(),
                target,
                mode,
                agreement_exempt: exempt,
            });
        }
        Ok(())
    }
}

/// Binds every focus and topic to a governable function, a modifier slot,
/// the local PRED or an adjunct, innermost structures first.
pub fn bind_discourse_functions(f: &FStructure) -> Result<(FStructure, Vec<Binding>), DiscourseError> {
    let mut out = f.clone();
    let mut b = Binder {
        fresh: Fresh::scan(f),
        bindings: Vec::new(),
    };
    b.visit(&mut out, "")?;
    out.normalize();
    Ok((out, b.bindings))
}

fn pronoun(fresh: &mut Fresh, tab: TabRef) -> FStructure {
    let mut p = FStructure::with_index(fresh.index());
    p.put("pred", fresh.pred("pro"));
    p.put_atom("tab_ref", tab.to_string());
    p.put_atom("interpretazione", "definita");
    p.put_atom("_cat", "np");
    p
}

fn wants_subject(f: &FStructure) -> bool {
    !f.has("sogg") && f.form().is_some_and(|fm| fm.governs(GfSlot::Subj1))
}

/// Supplies a null pronominal subject to every finite clause lacking one.
pub fn insert_little_pro(f: &FStructure) -> FStructure {
    fn go(f: &mut FStructure, fresh: &mut Fresh) {
        for v in f.attrs.values_mut() {
            match v {
                Value::Fs(x) => go(x, fresh),
                Value::Set(xs) => xs.iter_mut().for_each(|x| go(x, fresh)),
                _ => {}
            }
        }
        if f.has("_finite") && wants_subject(f) {
            let mut p = pronoun(fresh, TabRef::LITTLE_PRO);
            for (src, dst) in [("_pers", "pers"), ("_num", "num")] {
                if let Some(a) = f.atom(src) {
                    p.put_atom(dst, a);
                }
            }
            p.put_atom("antecedente", "esterno");
            f.put("sogg", Value::Fs(p));
        }
    }
    let mut out = f.clone();
    let mut fresh = Fresh::scan(f);
    go(&mut out, &mut fresh);
    out.normalize();
    out
}

/// Gives every non-finite clause a PRO subject, controlled when the
/// governing form carries a control equation.
pub fn resolve_control(f: &FStructure) -> Result<FStructure, DiscourseError> {
    fn go(f: &mut FStructure, path: &str, fresh: &mut Fresh) -> Result<(), DiscourseError> {
        let equation = f.form().and_then(|fm| fm.arg(GfSlot::Vcomp)).and_then(|a| a.control);
        if let (Some(c), true) = (equation, f.has("vcomp")) {
            let attr = c.controller.attr();
            let Some(ctrl) = f.fs(attr).and_then(|x| x.index.clone()) else {
                return Err(DiscourseError::ControlFailure {
                    path: join(path, "vcomp"),
                    controller: attr.to_string(),
                });
            };
            let v = f.fs_mut("vcomp").unwrap();
            let slot = c.controlled.attr();
            if !v.has(slot) && v.form().is_some_and(|fm| fm.governs(c.controlled)) {
                let mut p = pronoun(fresh, TabRef::BIG_PRO);
                p.put_atom("controllore", ctrl.clone());
                p.put_atom("antecedente", ctrl);
                v.put(slot, Value::Fs(p));
            }
        }
        let keys: Vec<String> = f.attrs.keys().cloned().collect();
        for k in keys {
            let here = join(path, &k);
            match f.attrs.get_mut(&k) {
                Some(Value::Fs(x)) => go(x, &here, fresh)?,
                Some(Value::Set(xs)) => {
                    for (i, x) in xs.iter_mut().enumerate() {
                        go(x, &join(&here, &i.to_string()), fresh)?;
                    }
                }
                _ => {}
            }
        }
        if f.atom("_cat") == Some("vinf") && wants_subject(f) {
            let mut p = pronoun(fresh, TabRef::BIG_PRO);
            p.put_atom("antecedente", "esterno");
            f.put("sogg", Value::Fs(p));
        }
        Ok(())
    }
    let mut out = f.clone();
    let mut fresh = Fresh::scan(f);
    go(&mut out, "", &mut fresh)?;
    out.normalize();
    Ok(out)
}

/// Pronominal structures paired with their antecedent: an index, or
/// `esterno` when it lies outside the sentence.
pub fn pronoun_links(f: &FStructure) -> Vec<(String, String)> {
    let mut out = Vec::new();
    f.walk(&mut |_, x| {
        let pronominal = x.atom("tab_ref").is_some_and(|t| t.contains("+pro"));
        if let (true, Some(i)) = (pronominal, &x.index) {
            let ante = x.atom("antecedente").unwrap_or("esterno");
            if !out.iter().any(|(j, _): &(String, String)| j == i) {
                out.push((i.clone(), ante.to_string()));
            }
        }
    });
    out
}
