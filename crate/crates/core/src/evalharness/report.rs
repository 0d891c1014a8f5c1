use std::fmt::Write;

use super::Summary;

/// A printed row of a parser-performance table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedCell {
    pub parser: &'static str,
    pub errors: u64,
    /// Percentage exactly as printed.
    pub pct: &'static str,
}

/// Noncanonical verse, 31 constituents.
pub const VERSE_REFERENCE: [PublishedCell; 4] = [
    PublishedCell {
        parser: "TXP",
        errors: 15,
        pct: "51.61",
    },
    PublishedCell {
        parser: "VSL",
        errors: 18,
        pct: "41.94",
    },
    PublishedCell {
        parser: "TNT",
        errors: 22,
        pct: "29.03",
    },
    PublishedCell {
        parser: "TLN",
        errors: 15,
        pct: "51.61",
    },
];

/// Noncanonical written text, 29 constituents.
pub const WRITTEN_REFERENCE: [PublishedCell; 4] = [
    PublishedCell {
        parser: "TXP",
        errors: 18,
        pct: "37.03",
    },
    PublishedCell {
        parser: "VSL",
        errors: 14,
        pct: "51.73",
    },
    PublishedCell {
        parser: "TNT",
        errors: 14,
        pct: "51.73",
    },
    PublishedCell {
        parser: "TLN",
        errors: 14,
        pct: "51.73",
    },
];

/// Tolerance in percentage points between printed and recomputed values.
pub const PCT_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub parser: String,
    pub summary: Summary,
    pub published: Option<PublishedCell>,
}

impl TableRow {
    pub fn new(parser: &str, summary: Summary, table: &[PublishedCell]) -> TableRow {
        TableRow {
            parser: parser.to_string(),
            summary,
            published: table.iter().find(|c| c.parser.eq_ignore_ascii_case(parser)).copied(),
        }
    }

    /// Recomputed percentage, two decimals, without the sign.
    pub fn pct(&self) -> String {
        self.summary.pct_correct().format(2).trim_end_matches('%').to_string()
    }

    /// Problems with the printed row, if any.
    pub fn discrepancies(&self) -> Vec<String> {
        let Some(p) = self.published else {
            return Vec::new();
        };
        let mut out = Vec::new();
        if p.errors != self.summary.errors {
            out.push(format!("printed {} errors", p.errors));
        }
        let printed: f64 = p.pct.parse().unwrap_or(f64::NAN);
        let close = |r: Summary| {
            let v: f64 = r
                .pct_correct()
                .format(2)
                .trim_end_matches('%')
                .parse()
                .unwrap_or(f64::NAN);
            (printed - v).abs() <= PCT_TOLERANCE + 1e-9
        };
        if self.summary.constituents > 0 && !close(self.summary) {
            out.push(format!("printed {}%", p.pct));
        }
        // A printed percentage must also follow from the printed error count.
        let implied = Summary {
            constituents: self.summary.constituents,
            errors: p.errors,
        };
        if implied.constituents > 0 && !close(implied) {
            out.push(format!(
                "{} errors over {} give {}",
                p.errors,
                implied.constituents,
                implied.pct_correct().format(2)
            ));
        }
        out
    }
}

/// Table of errors and percentage correct per parser, with printed values
/// alongside and disagreements flagged.
pub fn performance_table(title: &str, rows: &[TableRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{title}");
    let _ = writeln!(s, "Parser\tNo.Errs\t%correct\tprinted");
    for r in rows {
        let printed = r
            .published
            .map_or("-".to_string(), |p| format!("{}/{}", p.errors, p.pct));
        let _ = write!(s, "{}\t{}\t{}\t{}", r.parser, r.summary.errors, r.pct(), printed);
        let d = r.discrepancies();
        if !d.is_empty() {
            let _ = write!(s, "\tDISCREPANT: {}", d.join("; "));
        }
        s.push('\n');
    }
    s
}
