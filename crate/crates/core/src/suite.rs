//! The bundled evaluation sentences.

use thiserror::Error;

pub const BUNDLED_SUITE: &str = include_str!("../data/suite.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    Verse,
    Written,
    Control,
}

impl Group {
    pub fn as_str(self) -> &'static str {
        match self {
            Group::Verse => "verse",
            Group::Written => "written",
            Group::Control => "control",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteSentence {
    pub id: String,
    pub group: Group,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("suite line {line}: {msg}")]
pub struct SuiteError {
    pub line: usize,
    pub msg: String,
}

/// Reads `id TAB group TAB text` lines; `#` starts a comment line.
pub fn parse_suite(text: &str) -> Result<Vec<SuiteSentence>, SuiteError> {
    let mut out: Vec<SuiteSentence> = Vec::new();
    for (i, l) in text.lines().enumerate() {
        if l.trim().is_empty() || l.starts_with('#') {
            continue;
        }
        let err = |msg: String| SuiteError { line: i + 1, msg };
        let [id, group, text] = l.split('\t').collect::<Vec<_>>()[..] else {
            return Err(err("expected id, group and text".into()));
        };
        let group = match group {
            "verse" => Group::Verse,
            "written" => Group::Written,
            "control" => Group::Control,
            g => return Err(err(format!("unknown group {g:?}"))),
        };
        if out.iter().any(|s| s.id == id) {
            return Err(err(format!("duplicate id {id}")));
        }
        out.push(SuiteSentence {
            id: id.to_string(),
            group,
            text: text.trim().to_string(),
        });
    }
    Ok(out)
}

pub fn bundled() -> Vec<SuiteSentence> {
    parse_suite(BUNDLED_SUITE).expect("bundled suite is well-formed")
}

/// The canonical control matched to sentence `id`, if one is listed.
pub fn control_for<'a>(suite: &'a [SuiteSentence], id: &str) -> Option<&'a SuiteSentence> {
    let want = format!("c-{id}");
    suite.iter().find(|s| s.group == Group::Control && s.id == want)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_groups() {
        let s = bundled();
        let n = |g| s.iter().filter(|x| x.group == g).count();
        assert_eq!((n(Group::Verse), n(Group::Written), n(Group::Control)), (12, 7, 10));
        assert_eq!(control_for(&s, "2a").unwrap().id, "c-2a");
    }

    #[test]
    fn malformed() {
        assert_eq!(parse_suite("a\tverse\n").unwrap_err().line, 1);
        assert!(parse_suite("a\tprose\tx\n").is_err());
        assert!(parse_suite("a\tverse\tx\na\tverse\ty\n").is_err());
    }
}
