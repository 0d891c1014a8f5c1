//! Indented `attribute:value` rendering and GF/PRED skeletons.

use super::{FStructure, Value, GOVERNABLE};
use crate::lexicon::GfSlot;

const ORDER: [&str; 34] = [
    "cat",
    "pred",
    "lex_form",
    "voice",
    "modo",
    "tempo",
    "coord",
    "gen",
    "num",
    "pers",
    "spec",
    "caso",
    "tab_ref",
    "antecedente",
    "interpretazione",
    "controllore",
    "supporto",
    "pol",
    "sem_mark",
    "def",
    "sogg",
    "ogg",
    "ogg2",
    "focus",
    "topic",
    "obl",
    "ncomp",
    "vcomp",
    "poss",
    "mods",
    "adjs",
    "conj",
    "main",
    "adj",
];

/// Features kept in a skeleton besides structure and PRED.
const SKELETON_FEATURES: [&str; 7] = ["gen", "num", "pers", "spec", "modo", "tempo", "sem_mark"];

fn ordered(f: &FStructure) -> Vec<(&str, &Value)> {
    let rank = |k: &str| ORDER.iter().position(|o| *o == k).unwrap_or(ORDER.len());
    let mut v: Vec<(&str, &Value)> = f
        .attrs
        .iter()
        .filter(|(k, _)| !k.starts_with('_'))
        .map(|(k, v)| (k.as_str(), v))
        .collect();
    v.sort_by_key(|(k, _)| (rank(k), *k));
    v
}

fn df_items(v: &Value) -> Vec<&FStructure> {
    match v {
        Value::Fs(x) => vec![x],
        Value::Set(xs) => xs.iter().collect(),
        _ => Vec::new(),
    }
}

/// Governable functions of `f` that merely repeat a discourse filler,
/// paired with the filler's index.
fn shared_gfs(f: &FStructure) -> Vec<(&'static str, String)> {
    let mut out = Vec::new();
    let fillers: Vec<String> = ["focus", "topic"]
        .iter()
        .filter_map(|d| f.get(d))
        .flat_map(df_items)
        .filter_map(|x| x.index.clone())
        .collect();
    for gf in GOVERNABLE {
        if let Some(i) = f.fs(gf).and_then(|x| x.index.clone()) {
            if fillers.contains(&i) {
                out.push((gf, i));
            }
        }
    }
    out
}

fn gf_role(f: &FStructure, gf: &str) -> Option<String> {
    if gf == "ogg" && f.has("sem_mark") {
        return f.atom("_ogg_role").map(str::to_string);
    }
    let slot = GfSlot::from_attr(gf)?;
    f.form()?.arg(slot).map(|a| a.role.clone())
}

fn with_role(attr: &str, role: Option<String>) -> String {
    match role {
        Some(r) => format!("{attr}/{r}"),
        None => attr.to_string(),
    }
}

/// Header for an attribute holding a structure (or one set member).
fn label(parent: &FStructure, attr: &str, x: &FStructure) -> String {
    match attr {
        "focus" | "topic" => {
            if x.has("_relpron") {
                return format!("{attr}/relativo");
            }
            let bound = shared_gfs(parent)
                .into_iter()
                .find(|(_, i)| Some(i) == x.index.as_ref());
            with_role(attr, bound.and_then(|(gf, _)| gf_role(parent, gf)))
        }
        "poss" => "sogg/poss".to_string(),
        "main" | "sub" => format!("{attr}/prop"),
        "mods" => format!("mods:{}", x.atom("_role").unwrap_or("mod")),
        "adjs" => match x.atom("_role") {
            Some(r) => format!("adjs:adj/{r}"),
            None => "adjs:adj".to_string(),
        },
        a if GOVERNABLE.contains(&a) => with_role(a, gf_role(parent, a)),
        a => a.to_string(),
    }
}

fn content(f: &FStructure) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(i) = &f.index {
        out.push(format!("indice:{i}"));
    }
    let hidden: Vec<&str> = shared_gfs(f).into_iter().map(|(g, _)| g).collect();
    for (k, v) in ordered(f) {
        if hidden.contains(&k) {
            continue;
        }
        match v {
            Value::Atom(a) => out.push(format!("{k}:{a}")),
            Value::Pred(p) => {
                out.push(format!("{k}:{}", p.lemma));
                if let Some(form) = &p.form {
                    out.push(format!("lex_form:{form}"));
                }
            }
            Value::Fs(x) => nest(&mut out, &label(f, k, x), x),
            Value::Set(xs) => {
                for x in xs {
                    nest(&mut out, &label(f, k, x), x);
                }
            }
        }
    }
    if out.is_empty() {
        out.push("[]".to_string());
    }
    out
}

fn nest(out: &mut Vec<String>, header: &str, x: &FStructure) {
    let lines = content(x);
    out.push(format!("{header}:{}", lines[0]));
    out.extend(lines[1..].iter().map(|l| format!("  {l}")));
}

/// One attribute per line, nesting by two-space indentation.
pub fn serialize(f: &FStructure) -> String {
    let mut s = content(f).join("\n");
    s.push('\n');
    s
}

/// Sorted `path=value` lines over structure labels, PREDs and morphological
/// features; indices and referential bookkeeping are left out.
pub fn skeleton(f: &FStructure) -> Vec<String> {
    fn go(f: &FStructure, path: &str, out: &mut Vec<String>) {
        let at = |k: &str| {
            if path.is_empty() {
                k.to_string()
            } else {
                format!("{path}.{k}")
            }
        };
        let hidden: Vec<&str> = shared_gfs(f).into_iter().map(|(g, _)| g).collect();
        for (k, v) in ordered(f) {
            if hidden.contains(&k) {
                continue;
            }
            match v {
                Value::Pred(p) if k == "pred" => out.push(format!("{}={}", at(k), p.lemma)),
                Value::Atom(a) if SKELETON_FEATURES.contains(&k) || k == "focus" => out.push(format!("{}={a}", at(k))),
                Value::Fs(x) if k == "spec" => {
                    if let Some(d) = x.atom("def") {
                        out.push(format!("{}={d}", at(k)));
                    }
                }
                Value::Fs(x) => {
                    let p = at(&label(f, k, x));
                    if x.attrs.keys().all(|a| a.starts_with('_')) && x.index.is_none() {
                        out.push(format!("{p}=[]"));
                    }
                    go(x, &p, out);
                }
                Value::Set(xs) => {
                    for x in xs {
                        go(x, &at(&label(f, k, x)), out);
                    }
                }
                _ => {}
            }
        }
    }
    let mut out = Vec::new();
    go(f, "", &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fstruct::Pred;
    use crate::lexicon::SemanticForm;

    fn pred(lemma: &str, form: Option<&str>, instance: u32) -> Value {
        Value::Pred(Pred {
            lemma: lemma.into(),
            form: form.map(|s| SemanticForm::parse(lemma, s).unwrap()),
            instance,
        })
    }

    #[test]
    fn bound_focus_prints_with_role() {
        let mut f = FStructure::with_index("f1");
        f.put(
            "pred",
            pred("educare", Some("np/subj1/causer_emot/[],np/obj1/theme_emot/[]"), 1),
        );
        let mut lei = FStructure::with_index("sn2");
        lei.put("pred", pred("lei", None, 2));
        let mut spec = FStructure::new();
        spec.put_atom("def", "+");
        lei.put("spec", Value::Fs(spec));
        f.put("ogg", Value::Fs(lei.clone()));
        f.put("focus", Value::Fs(lei));
        let s = serialize(&f);
        assert_eq!(
            s,
            "indice:f1\npred:educare\nlex_form:[np/subj1/causer_emot/[],np/obj1/theme_emot/[]]\n\
             focus/theme_emot:indice:sn2\n  pred:lei\n  spec:def:+\n"
        );
        assert_eq!(
            skeleton(&f),
            vec!["focus/theme_emot.pred=lei", "focus/theme_emot.spec=+", "pred=educare"]
        );
    }

    #[test]
    fn empty_structure() {
        let mut f = FStructure::with_index("f10");
        f.put("main", Value::Fs(FStructure::new()));
        assert_eq!(serialize(&f), "indice:f10\nmain/prop:[]\n");
        assert_eq!(skeleton(&f), vec!["main/prop=[]"]);
    }
}
