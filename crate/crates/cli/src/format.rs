//! The line-oriented algebra file format.
//!
//! ```text
//! # comment
//! pea
//! size 4
//! zero 0
//! top 3
//! table
//! 0 1 2 3
//! 1 - 3 -
//! 2 3 - -
//! 3 - - -
//! perm lambda 0
//! perm rho 0
//! ```
//!
//! Row `a` of the table lists `a + b` for every column `b`, `-` when the
//! sum is undefined. `labels` may follow the header with one token per
//! element. `perm` lines give `λ` or `ρ` as images: position `j` holds the
//! image of `j`.

use std::fmt::{self, Write as _};

use kitelab::algebra::{verify_gpea_axioms, verify_pea_axioms, Axiom, AxiomReport, Violation};
use kitelab::{Gpea, PartialTable, Pea, Permutation};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Gpea,
    Pea,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Gpea => "gpea",
            Kind::Pea => "pea",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{axiom} violated at {witness:?}")]
    Semantic { axiom: Axiom, witness: Vec<usize> },
    #[error("{0}")]
    Structure(String),
}

impl FormatError {
    fn from_violation(v: &Violation) -> Self {
        FormatError::Semantic { axiom: v.axiom, witness: v.witness.clone() }
    }
}

/// A parsed file, not yet checked against the axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub kind: Kind,
    pub table: PartialTable,
    pub zero: usize,
    pub top: Option<usize>,
    pub labels: Option<Vec<String>>,
    pub lambda: Option<Permutation>,
    pub rho: Option<Permutation>,
}

/// A checked algebra.
#[derive(Clone, Debug)]
pub enum Algebra {
    Gpea(Gpea),
    Pea(Pea),
}

impl Algebra {
    pub fn gpea(&self) -> &Gpea {
        match self {
            Algebra::Gpea(g) => g,
            Algebra::Pea(p) => p.gpea(),
        }
    }

    pub fn pea(&self) -> Option<&Pea> {
        match self {
            Algebra::Gpea(_) => None,
            Algebra::Pea(p) => Some(p),
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Algebra::Gpea(_) => Kind::Gpea,
            Algebra::Pea(_) => Kind::Pea,
        }
    }
}

impl AlgebraFile {
    pub fn from_gpea(g: &Gpea) -> Self {
        AlgebraFile {
            kind: Kind::Gpea,
            table: g.table().clone(),
            zero: g.zero(),
            top: None,
            labels: g.labels().map(<[String]>::to_vec),
            lambda: None,
            rho: None,
        }
    }

    pub fn from_pea(p: &Pea) -> Self {
        AlgebraFile { kind: Kind::Pea, top: Some(p.top()), ..Self::from_gpea(p.gpea()) }
    }

    pub fn with_perms(mut self, lambda: Permutation, rho: Permutation) -> Self {
        self.lambda = Some(lambda);
        self.rho = Some(rho);
        self
    }

    pub fn size(&self) -> usize {
        self.table.size()
    }

    /// Every axiom violation, GP1–GP5 first, then the PEA axioms when the
    /// GPEA part holds.
    pub fn verify(&self) -> AxiomReport {
        let mut report = verify_gpea_axioms(&self.table, self.zero).expect("ranges checked when parsed");
        if let (Kind::Pea, Some(top), true) = (self.kind, self.top, report.passed()) {
            let g = Gpea::new(self.table.clone(), self.zero).expect("axioms hold");
            report = verify_pea_axioms(&g, top).expect("ranges checked when parsed");
        }
        report
    }

    /// The checked algebra, or the first violated axiom.
    pub fn check(&self) -> Result<Algebra, FormatError> {
        let report = self.verify();
        if let Some(v) = report.violations.first() {
            return Err(FormatError::from_violation(v));
        }
        let mut g = Gpea::new(self.table.clone(), self.zero).map_err(|e| FormatError::Structure(e.to_string()))?;
        if let Some(labels) = &self.labels {
            g = g.with_labels(labels.clone()).map_err(|e| FormatError::Structure(e.to_string()))?;
        }
        Ok(match (self.kind, self.top) {
            (Kind::Pea, Some(top)) => {
                Algebra::Pea(Pea::new(g, top).map_err(|e| FormatError::Structure(e.to_string()))?)
            }
            _ => Algebra::Gpea(g),
        })
    }
}

/// Parses and checks in one step.
pub fn load(text: &str) -> Result<(AlgebraFile, Algebra), FormatError> {
    let file = parse_algebra(text)?;
    let algebra = file.check()?;
    Ok((file, algebra))
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in content.char_indices().chain([(content.len(), ' ')]) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token { text: &content[s..i], column: content[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    out
}

struct Parser {
    line: usize,
}

impl Parser {
    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T, FormatError> {
        Err(FormatError::Syntax { line: self.line, column, message: message.into() })
    }

    fn number(&self, t: &Token<'_>) -> Result<usize, FormatError> {
        match t.text.parse::<usize>() {
            Ok(v) => Ok(v),
            Err(_) => self.err(t.column, format!("expected a number, found `{}`", t.text)),
        }
    }

    fn single(&self, toks: &[Token<'_>]) -> Result<usize, FormatError> {
        match toks {
            [_, v] => self.number(v),
            [k] => self.err(k.column + k.text.len(), format!("`{}` needs a value", k.text)),
            [_, _, extra, ..] => self.err(extra.column, format!("unexpected `{}`", extra.text)),
            [] => unreachable!("keyword present"),
        }
    }

    fn in_range(&self, t: &Token<'_>, v: usize, size: usize) -> Result<usize, FormatError> {
        if v < size {
            Ok(v)
        } else {
            self.err(t.column, format!("{v} is out of range for size {size}"))
        }
    }
}

/// Parses the format without checking axioms ("unchecked" mode).
pub fn parse_algebra(text: &str) -> Result<AlgebraFile, FormatError> {
    let mut kind = None;
    let mut size = None;
    let mut zero = None;
    let mut top = None;
    let mut labels: Option<Vec<String>> = None;
    let mut rows: Option<Vec<Vec<Option<usize>>>> = None;
    let mut lambda = None;
    let mut rho = None;
    let mut in_table = false;
    let mut p = Parser { line: 0 };

    for (k, raw) in text.lines().enumerate() {
        p.line = k + 1;
        let toks = tokens(raw);
        let Some(head) = toks.first() else { continue };
        if in_table {
            let n = size.expect("size precedes table");
            let table = rows.as_mut().expect("table started");
            if table.len() < n {
                if toks.len() != n {
                    let column = toks.get(n).map_or(raw.len() + 1, |t| t.column);
                    return p.err(column, format!("row has {} entries, expected {n}", toks.len()));
                }
                let mut row = Vec::with_capacity(n);
                for t in &toks {
                    row.push(if t.text == "-" { None } else { Some(p.in_range(t, p.number(t)?, n)?) });
                }
                table.push(row);
                continue;
            }
            in_table = false;
        }
        let seen = |p: &Parser, present: bool| {
            if present {
                p.err(head.column, format!("duplicate `{}`", head.text))
            } else {
                Ok(())
            }
        };
        match head.text {
            "pea" | "gpea" => {
                seen(&p, kind.is_some())?;
                if let Some(extra) = toks.get(1) {
                    return p.err(extra.column, format!("unexpected `{}`", extra.text));
                }
                kind = Some(if head.text == "pea" { Kind::Pea } else { Kind::Gpea });
            }
            "size" => {
                seen(&p, size.is_some())?;
                let n = p.single(&toks)?;
                if n == 0 {
                    return p.err(toks[1].column, "size must be positive");
                }
                size = Some(n);
            }
            "zero" | "top" => {
                let slot = if head.text == "zero" { &mut zero } else { &mut top };
                seen(&p, slot.is_some())?;
                let Some(n) = size else {
                    return p.err(head.column, format!("`{}` before `size`", head.text));
                };
                let v = p.single(&toks)?;
                *slot = Some(p.in_range(&toks[1], v, n)?);
            }
            "labels" => {
                seen(&p, labels.is_some())?;
                let Some(n) = size else {
                    return p.err(head.column, "`labels` before `size`");
                };
                if toks.len() != n + 1 {
                    return p.err(head.column, format!("{} labels given, expected {n}", toks.len() - 1));
                }
                labels = Some(toks[1..].iter().map(|t| t.text.to_string()).collect());
            }
            "table" => {
                seen(&p, rows.is_some())?;
                if size.is_none() {
                    return p.err(head.column, "`table` before `size`");
                }
                if let Some(extra) = toks.get(1) {
                    return p.err(extra.column, format!("unexpected `{}`", extra.text));
                }
                rows = Some(Vec::new());
                in_table = true;
            }
            "perm" => {
                let Some(which) = toks.get(1) else {
                    return p.err(head.column + 4, "`perm` needs `lambda` or `rho`");
                };
                let slot = match which.text {
                    "lambda" => &mut lambda,
                    "rho" => &mut rho,
                    other => return p.err(which.column, format!("unknown permutation `{other}`")),
                };
                if slot.is_some() {
                    return p.err(which.column, format!("duplicate `perm {}`", which.text));
                }
                let mut image = Vec::new();
                for t in &toks[2..] {
                    image.push(p.number(t)?);
                }
                match Permutation::from_image(image) {
                    Ok(perm) => *slot = Some(perm),
                    Err(e) => return p.err(which.column, e.to_string()),
                }
            }
            other => return p.err(head.column, format!("unknown directive `{other}`")),
        }
    }
    p.line += 1;
    let Some(kind) = kind else { return p.err(1, "missing `pea` or `gpea`") };
    let Some(n) = size else { return p.err(1, "missing `size`") };
    let Some(zero) = zero else { return p.err(1, "missing `zero`") };
    let Some(rows) = rows else { return p.err(1, "missing `table`") };
    if rows.len() != n {
        return p.err(1, format!("table has {} rows, expected {n}", rows.len()));
    }
    match (kind, top) {
        (Kind::Pea, None) => return p.err(1, "missing `top` for a pea"),
        (Kind::Gpea, Some(_)) => return p.err(1, "`top` given for a gpea"),
        _ => {}
    }
    match (&lambda, &rho) {
        (Some(l), Some(r)) if l.len() != r.len() => {
            return p.err(1, format!("lambda has {} points, rho has {}", l.len(), r.len()));
        }
        (Some(_), None) | (None, Some(_)) => return p.err(1, "`perm lambda` and `perm rho` go together"),
        _ => {}
    }
    let table = PartialTable::from_rows(&rows).map_err(|e| FormatError::Structure(e.to_string()))?;
    Ok(AlgebraFile { kind, table, zero, top, labels, lambda, rho })
}

/// Canonical text for a file; `parse_algebra(emit_algebra(f)) == f`.
pub fn emit_algebra(file: &AlgebraFile) -> String {
    let n = file.size();
    let mut out = String::new();
    let _ = writeln!(out, "{}", file.kind);
    let _ = writeln!(out, "size {n}");
    let _ = writeln!(out, "zero {}", file.zero);
    if let Some(top) = file.top {
        let _ = writeln!(out, "top {top}");
    }
    if let Some(labels) = &file.labels {
        let _ = writeln!(out, "labels {}", labels.join(" "));
    }
    let width = n.saturating_sub(1).to_string().len();
    out.push_str("table\n");
    for a in 0..n {
        let row: Vec<String> = (0..n)
            .map(|b| match file.table.get(a, b) {
                Some(s) => format!("{s:>width$}"),
                None => format!("{:>width$}", "-"),
            })
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    for (name, perm) in [("lambda", &file.lambda), ("rho", &file.rho)] {
        if let Some(perm) = perm {
            let image: Vec<String> = perm.image().iter().map(usize::to_string).collect();
            let _ = writeln!(out, "perm {name} {}", image.join(" "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const C3: &str = "gpea\nsize 3\nzero 0\ntable\n0 1 2\n1 2 -\n2 - -\n";

    #[test]
    fn chain_of_three_parses_and_checks() {
        let (file, a) = load(C3).unwrap();
        assert_eq!(file.kind, Kind::Gpea);
        assert_eq!(a.gpea().add(1, 1), Some(2));
        assert_eq!(emit_algebra(&file), C3);
    }

    #[test]
    fn duplicate_zero_is_a_syntax_error() {
        let text = "gpea\nsize 3\nzero 0\nzero 0\ntable\n0 1 2\n1 2 -\n2 - -\n";
        assert_eq!(
            parse_algebra(text),
            Err(FormatError::Syntax { line: 4, column: 1, message: "duplicate `zero`".into() })
        );
    }

    #[test]
    fn bad_entry_reports_its_column() {
        let text = "gpea\nsize 2\nzero 0\ntable\n0 1\n1 x\n";
        let Err(FormatError::Syntax { line, column, .. }) = parse_algebra(text) else { panic!() };
        assert_eq!((line, column), (6, 3));
    }

    #[test]
    fn semantic_errors_cite_the_axiom() {
        let text = "gpea\nsize 2\nzero 0\ntable\n0 1\n1 0\n";
        let Err(FormatError::Semantic { axiom, .. }) = load(text) else { panic!() };
        assert_eq!(axiom, Axiom::Gp4);
        assert!(parse_algebra(text).is_ok());
    }

    #[test]
    fn comments_labels_and_perms_round_trip() {
        let text = "# two atoms\npea\nsize 4\nzero 0 # unit\ntop 3\nlabels 0 a b 1\ntable\n0 1 2 3\n1 - 3 -\n2 3 - -\n3 - - -\nperm lambda 1 0\nperm rho 1 0\n";
        let file = parse_algebra(text).unwrap();
        assert_eq!(file.labels.as_deref().unwrap()[1], "a");
        assert_eq!(parse_algebra(&emit_algebra(&file)).unwrap(), file);
        assert!(file.check().is_ok());
    }

    #[test]
    fn missing_pieces() {
        assert!(matches!(parse_algebra("gpea\nsize 1\ntable\n0\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_algebra("pea\nsize 1\nzero 0\ntable\n0\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(
            parse_algebra("gpea\nsize 2\nzero 0\ntable\n0 1\n"),
            Err(FormatError::Syntax { .. })
        ));
    }
}
