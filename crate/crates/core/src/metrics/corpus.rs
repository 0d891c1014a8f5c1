//! Noncanonical-structure statistics over a labelled treebank.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("corpus line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError { line, msg: msg.into() }
}

/// Functional labels marking a noncanonical structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NcsLabel {
    Ldc,
    SDis,
    STop,
    SFoc,
    DiscMods,
}

impl NcsLabel {
    pub const ALL: [NcsLabel; 5] = [
        NcsLabel::Ldc,
        NcsLabel::SDis,
        NcsLabel::STop,
        NcsLabel::SFoc,
        NcsLabel::DiscMods,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NcsLabel::Ldc => "LDC",
            NcsLabel::SDis => "S_DIS",
            NcsLabel::STop => "S_TOP",
            NcsLabel::SFoc => "S_FOC",
            NcsLabel::DiscMods => "DiscMods",
        }
    }

    /// Label suffix used in bracketed trees, e.g. `NP-s_top`.
    pub fn suffix(self) -> &'static str {
        match self {
            NcsLabel::Ldc => "ldc",
            NcsLabel::SDis => "s_dis",
            NcsLabel::STop => "s_top",
            NcsLabel::SFoc => "s_foc",
            NcsLabel::DiscMods => "discmod",
        }
    }

    fn from_key(k: &str) -> Option<NcsLabel> {
        NcsLabel::ALL
            .into_iter()
            .find(|l| l.as_str().eq_ignore_ascii_case(k) || l.suffix() == k)
    }
}

/// Exact percentage `num/den`, kept as a pair of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn percent(self) -> Option<f64> {
        (self.den > 0).then(|| self.num as f64 * 100.0 / self.den as f64)
    }

    /// Percentage rounded half-up to `decimals` places, by integer arithmetic.
    pub fn format(self, decimals: u32) -> String {
        if self.den == 0 {
            return "undefined".into();
        }
        let scale = 10u128.pow(decimals);
        let n = self.num as u128 * 100 * scale * 2 + self.den as u128;
        let v = n / (2 * self.den as u128);
        if decimals == 0 {
            format!("{v}%")
        } else {
            format!("{}.{:0w$}%", v / scale, v % scale, w = decimals as usize)
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusStats {
    /// Counts in the order of [`NcsLabel::ALL`].
    pub counts: [u64; 5],
    pub total_constituents: u64,
    pub total_utts: u64,
    pub total_simple_sents: u64,
    pub unexpressed_subjects: u64,
}

impl CorpusStats {
    pub fn count(&self, l: NcsLabel) -> u64 {
        self.counts[l as usize]
    }

    pub fn total_ncs(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn nonprojective(&self) -> Ratio {
        Ratio {
            num: self.total_ncs(),
            den: self.total_constituents,
        }
    }

    pub fn ncs_per_tssen(&self) -> Ratio {
        Ratio {
            num: self.total_ncs(),
            den: self.total_simple_sents,
        }
    }

    pub fn pct_nonprojective(&self) -> Option<f64> {
        self.nonprojective().percent()
    }

    pub fn pct_ncs_per_tssen(&self) -> Option<f64> {
        self.ncs_per_tssen().percent()
    }

    /// Reads `key value` lines; `#` starts a comment. Keys are the five
    /// labels plus `constituents`, `utterances`, `simple_sentences` and
    /// `unexpressed_subjects`. Thousands separators are accepted.
    pub fn from_counts(text: &str) -> Result<CorpusStats, FormatError> {
        let mut s = CorpusStats::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let (Some(k), Some(v), None) = (it.next(), it.next(), it.next()) else {
                return Err(err(i + 1, "expected `key value`"));
            };
            let n: u64 = v
                .replace(',', "")
                .parse()
                .map_err(|_| err(i + 1, format!("bad count {v:?}")))?;
            match k {
                "constituents" => s.total_constituents = n,
                "utterances" => s.total_utts = n,
                "simple_sentences" => s.total_simple_sents = n,
                "unexpressed_subjects" => s.unexpressed_subjects = n,
                _ => match NcsLabel::from_key(k) {
                    Some(l) => s.counts[l as usize] = n,
                    None => return Err(err(i + 1, format!("unknown key {k:?}"))),
                },
            }
        }
        Ok(s)
    }
}

impl fmt::Display for CorpusStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut head = vec!["NCS/Types".to_string()];
        let mut row = vec!["Counts".to_string()];
        for l in NcsLabel::ALL {
            head.push(l.as_str().into());
            row.push(self.count(l).to_string());
        }
        head.extend(["Total".into(), "% Non Project.".into(), "% NCS/ TSSen".into()]);
        row.push(self.total_ncs().to_string());
        row.push(self.nonprojective().format(1));
        row.push(self.ncs_per_tssen().format(2));
        let widths: Vec<usize> = head.iter().zip(&row).map(|(a, b)| a.len().max(b.len())).collect();
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(f, "{}", line(&head))?;
        writeln!(f, "{}", line(&row))?;
        writeln!(
            f,
            "constituents {}  simple sentences {}  utterances {}  unexpressed subjects {}",
            self.total_constituents, self.total_simple_sents, self.total_utts, self.unexpressed_subjects
        )?;
        if self.total_constituents == 0 || self.total_simple_sents == 0 {
            writeln!(f, "note: percentages undefined for a zero denominator")?;
        }
        Ok(())
    }
}

const CLAUSE_LABELS: [&str; 4] = ["S", "F", "IP", "CP"];

/// Counts labels over bracketed trees, one sentence per blank-line
/// separated block. Every opening bracket is a constituent; a label such
/// as `NP-s_top` adds to its noncanonical count; `S`, `F`, `IP` and `CP`
/// count as simple sentences; a `*pro*` token is an unexpressed subject.
pub fn corpus_stats(text: &str) -> Result<CorpusStats, FormatError> {
    let mut s = CorpusStats::default();
    let mut depth = 0usize;
    let mut in_block = false;
    let mut opened_at = 0;
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        if line.trim().is_empty() {
            if depth > 0 {
                return Err(err(n, "blank line inside an open bracket"));
            }
            in_block = false;
            continue;
        }
        if line.trim_start().starts_with('#') && depth == 0 {
            continue;
        }
        if !in_block {
            s.total_utts += 1;
            in_block = true;
        }
        let mut chars = line.char_indices().peekable();
        while let Some((p, c)) = chars.next() {
            match c {
                '(' => {
                    if depth == 0 {
                        opened_at = n;
                    }
                    depth += 1;
                    let rest = &line[p + 1..];
                    let label: String = rest
                        .chars()
                        .take_while(|c| !c.is_whitespace() && *c != '(' && *c != ')')
                        .collect();
                    if label.is_empty() {
                        return Err(err(n, "bracket without a label"));
                    }
                    s.total_constituents += 1;
                    let mut parts = label.split('-');
                    let base = parts.next().unwrap_or("");
                    if CLAUSE_LABELS.contains(&base) {
                        s.total_simple_sents += 1;
                    }
                    for suffix in parts {
                        if let Some(l) = NcsLabel::ALL.into_iter().find(|l| l.suffix() == suffix) {
                            s.counts[l as usize] += 1;
                        }
                    }
                }
                ')' => {
                    depth = depth.checked_sub(1).ok_or_else(|| err(n, "unbalanced `)`"))?;
                }
                '*' if line[p..].starts_with("*pro*") => {
                    s.unexpressed_subjects += 1;
                    for _ in 0..4 {
                        chars.next();
                    }
                }
                _ => {}
            }
        }
    }
    if depth > 0 {
        return Err(err(opened_at, "unclosed bracket"));
    }
    Ok(s)
}

/// One published treebank cell: the printed percentage and the recomputed ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub treebank: &'static str,
    pub measure: &'static str,
    pub printed: &'static str,
    pub ratio: Ratio,
}

impl ComparisonRow {
    /// Whether the printed figure disagrees with the recomputation at two
    /// decimals.
    pub fn discrepant(&self) -> bool {
        self.ratio.format(2) != self.printed
    }
}

/// Treebank totals for VIT and the Penn Treebank as published, with each
/// percentage recomputed from its stated denominator.
pub fn treebank_comparison() -> Vec<ComparisonRow> {
    vec![
        ComparisonRow {
            treebank: "VIT",
            measure: "NCS/TUtt",
            printed: "27.43%",
            ratio: Ratio {
                num: 3_719,
                den: 10_200,
            },
        },
        ComparisonRow {
            treebank: "VIT",
            measure: "UnxSubj/TSSen",
            printed: "51.31%",
            ratio: Ratio {
                num: 9_800,
                den: 19_099,
            },
        },
        ComparisonRow {
            treebank: "PT",
            measure: "NCS/TUtt",
            printed: "13.16%",
            ratio: Ratio {
                num: 7_234,
                den: 55_600,
            },
        },
        ComparisonRow {
            treebank: "PT",
            measure: "UnxSubj/TSSen",
            printed: "0.26%",
            ratio: Ratio {
                num: 2_587,
                den: 99_002,
            },
        },
        ComparisonRow {
            treebank: "PT",
            measure: "NCS/constituents",
            printed: "0.01004%",
            ratio: Ratio {
                num: 7_234,
                den: 720_086,
            },
        },
    ]
}

pub fn treebank_report() -> String {
    let mut out = String::from("treebank  measure           printed  recomputed  flag\n");
    for r in treebank_comparison() {
        out.push_str(&format!(
            "{:<8}  {:<16}  {:>7}  {:>10}  {}\n",
            r.treebank,
            r.measure,
            r.printed,
            r.ratio.format(2),
            if r.discrepant() { "DISCREPANT" } else { "ok" }
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_exact() {
        let r = Ratio {
            num: 16_156,
            den: 19_099,
        };
        assert_eq!(r.format(2), "84.59%");
        assert_eq!(
            Ratio {
                num: 16_156,
                den: 230_629
            }
            .format(1),
            "7.0%"
        );
        assert_eq!(Ratio { num: 1, den: 8 }.format(1), "12.5%");
        assert_eq!(Ratio { num: 1, den: 0 }.format(2), "undefined");
    }

    #[test]
    fn counts_file() {
        let s = CorpusStats::from_counts("LDC 251\nS_DIS 1,037\nconstituents 10\n").unwrap();
        assert_eq!(s.total_ncs(), 1288);
        assert_eq!(CorpusStats::from_counts("LDC x").unwrap_err().line, 1);
        assert_eq!(CorpusStats::from_counts("\nfoo 1").unwrap_err().line, 2);
    }

    #[test]
    fn bracketed_block() {
        let s = corpus_stats("(S (NP-s_top Maria) (VP (V parte)))\n\n(F (SN *pro*) (VP (V dorme)))\n").unwrap();
        assert_eq!(s.total_utts, 2);
        assert_eq!(s.total_constituents, 8);
        assert_eq!(s.count(NcsLabel::STop), 1);
        assert_eq!(s.total_simple_sents, 2);
        assert_eq!(s.unexpressed_subjects, 1);
        assert_eq!(corpus_stats("(S (NP x)\n").unwrap_err().line, 1);
        assert_eq!(corpus_stats("(S x))").unwrap_err().line, 1);
    }
}
