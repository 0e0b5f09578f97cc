//! Tabulated reference data and its parsers.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::forms::TernaryForm;
use crate::local::GenusLabel;
use crate::rational::Rational;

pub const TABLE2_TEXT: &str = include_str!("../../data/table2.txt");
pub const TABLE3_TEXT: &str = include_str!("../../data/table3.txt");
pub const APPENDIX_A_TEXT: &str = include_str!("../../data/appendix_a.txt");
pub const APPENDIX_B_TEXT: &str = include_str!("../../data/appendix_b.txt");
pub const ERRATA_TEXT: &str = include_str!("../../data/errata.txt");

/// Bound on coefficients, Hurwitz parameters and arguments in table text.
pub const TABLE_VALUE_LIMIT: i64 = 1_000_000;

fn parse_err(what: &str, s: &str) -> Error {
    let shown: String = s.chars().take(80).collect();
    Error::Parse(format!("{what}: {shown:?}"))
}

fn bounded(s: &str, what: &str) -> Result<i64> {
    if s.is_empty() || s.len() > 12 || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(what, s));
    }
    let v: i64 = s.parse().map_err(|_| parse_err(what, s))?;
    if v > TABLE_VALUE_LIMIT {
        return Err(parse_err(what, s));
    }
    Ok(v)
}

/// Splits a leading decimal coefficient off `s`; an absent one means 1.
fn leading_coefficient(s: &str) -> Result<(i64, &str)> {
    let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    if end == 0 {
        return Ok((1, s));
    }
    let c = bounded(&s[..end], "coefficient")?;
    if c == 0 {
        return Err(parse_err("zero coefficient", s));
    }
    Ok((c, &s[end..]))
}

/// `c·R_f(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: i64,
    pub form: TernaryForm,
}

/// `c·H^(N1,N2)(k n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HurwitzTerm {
    pub coefficient: i64,
    pub n1: i64,
    pub n2: i64,
    pub k: i64,
}

/// `Σ c_i R_{f_i}(n) = c H^(N1,N2)(k n)` for all `n ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Vec<Term>,
    pub rhs: HurwitzTerm,
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (left, right) = s.split_once('=').ok_or_else(|| parse_err("identity without '='", s))?;
        let mut lhs = Vec::new();
        for piece in left.split('+') {
            let (coefficient, rest) = leading_coefficient(piece)?;
            let inner = rest
                .strip_prefix("R(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| parse_err("expected R(a,b,c,r,s,t)", piece))?;
            let form: TernaryForm = inner.parse()?;
            lhs.push(Term { coefficient, form });
        }
        let (coefficient, rest) = leading_coefficient(right)?;
        let rest = rest.strip_prefix("H(").ok_or_else(|| parse_err("expected H(N1,N2)(kn)", right))?;
        let (params, arg) = rest.split_once(")(").ok_or_else(|| parse_err("expected H(N1,N2)(kn)", right))?;
        let (n1, n2) = params.split_once(',').ok_or_else(|| parse_err("expected N1,N2", right))?;
        let arg = arg.strip_suffix("n)").ok_or_else(|| parse_err("argument must be kn", right))?;
        let k = if arg.is_empty() { 1 } else { bounded(arg, "argument multiplier")? };
        let (n1, n2) = (bounded(n1, "N1")?, bounded(n2, "N2")?);
        if n1 == 0 || n2 == 0 || k == 0 {
            return Err(parse_err("zero Hurwitz parameter", right));
        }
        Ok(Identity { lhs, rhs: HurwitzTerm { coefficient, n1, n2, k } })
    }
}

fn coefficient_prefix(c: i64) -> String {
    if c == 1 {
        String::new()
    } else {
        c.to_string()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.lhs.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{}R({})", coefficient_prefix(t.coefficient), t.form)?;
        }
        let r = &self.rhs;
        let k = coefficient_prefix(r.k);
        write!(f, "={}H({},{})({k}n)", coefficient_prefix(r.coefficient), r.n1, r.n2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub genus: GenusLabel,
    pub identity: Identity,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Rows `<genus> <identity>`.
pub fn parse_identity_table(text: &str) -> Result<Vec<TableRow>> {
    content_lines(text)
        .map(|(no, line)| {
            let (genus, identity) =
                line.split_once(char::is_whitespace).ok_or_else(|| parse_err(&format!("line {no}"), line))?;
            Ok(TableRow { genus: genus.parse()?, identity: identity.trim().parse()? })
        })
        .collect()
}

/// Column of a modified Hurwitz table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    Plain,
    Modified { n1: i64, n2: i64 },
}

impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "H" {
            return Ok(Column::Plain);
        }
        let (a, b) = s.split_once(',').ok_or_else(|| parse_err("column", s))?;
        let (n1, n2) = (bounded(a, "N1")?, bounded(b, "N2")?);
        if n1 == 0 || n2 == 0 {
            return Err(parse_err("column", s));
        }
        Ok(Column::Modified { n1, n2 })
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Column::Plain => f.write_str("H"),
            Column::Modified { n1, n2 } => write!(f, "H({n1},{n2})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HurwitzTable {
    pub columns: Vec<Column>,
    /// `(D, values)` with one value per column.
    pub rows: Vec<(u64, Vec<Rational>)>,
}

fn table_rational(s: &str) -> Result<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let (neg, num) = match num.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, num),
    };
    let (n, d) = (bounded(num, "numerator")?, bounded(den, "denominator")?);
    if d == 0 {
        return Err(parse_err("zero denominator", s));
    }
    Ok(Rational::new(if neg { -n } else { n }, d))
}

/// Blocks introduced by `table`, a header `D <columns>` and value rows.
pub fn parse_hurwitz_tables(text: &str) -> Result<Vec<HurwitzTable>> {
    let mut tables: Vec<HurwitzTable> = Vec::new();
    let mut expect_header = false;
    for (no, line) in content_lines(text) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields == ["table"] {
            expect_header = true;
            continue;
        }
        if expect_header {
            if fields.first() != Some(&"D") || fields.len() < 2 {
                return Err(parse_err(&format!("line {no}: expected header"), line));
            }
            let columns = fields[1..].iter().map(|c| c.parse()).collect::<Result<Vec<Column>>>()?;
            tables.push(HurwitzTable { columns, rows: Vec::new() });
            expect_header = false;
            continue;
        }
        let table = tables.last_mut().ok_or_else(|| parse_err(&format!("line {no}: row before header"), line))?;
        if fields.len() != table.columns.len() + 1 {
            return Err(parse_err(&format!("line {no}: wrong number of fields"), line));
        }
        let d = bounded(fields[0], "D")? as u64;
        let values = fields[1..].iter().map(|v| table_rational(v)).collect::<Result<Vec<_>>>()?;
        table.rows.push((d, values));
    }
    if expect_header {
        return Err(Error::Parse("table without header".into()));
    }
    Ok(tables)
}

/// Rows `<4N> <|C(4N)|>`.
pub fn parse_class_numbers(text: &str) -> Result<Vec<(i64, u64)>> {
    content_lines(text)
        .map(|(no, line)| {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [level, count] = fields.as_slice() else {
                return Err(parse_err(&format!("line {no}"), line));
            };
            Ok((bounded(level, "level")?, bounded(count, "class number")? as u64))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityTable {
    Table2,
    Table3,
}

/// Evidence that a printed row is inconsistent on its own terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// A printed form is not in the printed genus.
    Label,
    /// The printed identity fails at `n = 0` against the tabulated `H(0)`.
    ZeroTerm,
    /// A cell contradicts a single-class identity at the given `n`.
    Row { genus: GenusLabel, n: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Erratum {
    Row { table: IdentityTable, genus: GenusLabel, corrected: Identity, certificate: Certificate },
    Cell { column: Column, d: u64, corrected: Rational, certificate: Certificate },
}

fn parse_certificate(s: &str) -> Result<Certificate> {
    let fields: Vec<&str> = s.split_whitespace().collect();
    match fields.as_slice() {
        ["label"] => Ok(Certificate::Label),
        ["n0"] => Ok(Certificate::ZeroTerm),
        ["row", genus, n] => Ok(Certificate::Row { genus: genus.parse()?, n: bounded(n, "n")? as u64 }),
        _ => Err(parse_err("certificate", s)),
    }
}

/// Lines `<table> | <key> | <corrected> | <certificate>`.
pub fn parse_errata(text: &str) -> Result<Vec<Erratum>> {
    content_lines(text)
        .map(|(no, line)| {
            let fields: Vec<&str> = line.split('|').map(str::trim).collect();
            let [table, key, corrected, certificate] = fields.as_slice() else {
                return Err(parse_err(&format!("line {no}"), line));
            };
            let certificate = parse_certificate(certificate)?;
            match *table {
                "table2" | "table3" => Ok(Erratum::Row {
                    table: if *table == "table2" { IdentityTable::Table2 } else { IdentityTable::Table3 },
                    genus: key.parse()?,
                    corrected: corrected.parse()?,
                    certificate,
                }),
                "appendixA" => {
                    let (column, d) = key.split_once(' ').ok_or_else(|| parse_err("cell key", key))?;
                    Ok(Erratum::Cell {
                        column: column.parse()?,
                        d: bounded(d, "D")? as u64,
                        corrected: table_rational(corrected)?,
                        certificate,
                    })
                }
                _ => Err(parse_err("unknown table", table)),
            }
        })
        .collect()
}

fn cached<T>(cell: &'static OnceLock<T>, init: impl FnOnce() -> Result<T>) -> &'static T {
    cell.get_or_init(|| init().expect("embedded table data parses"))
}

pub fn table2() -> &'static [TableRow] {
    static CELL: OnceLock<Vec<TableRow>> = OnceLock::new();
    cached(&CELL, || parse_identity_table(TABLE2_TEXT))
}

pub fn table3() -> &'static [TableRow] {
    static CELL: OnceLock<Vec<TableRow>> = OnceLock::new();
    cached(&CELL, || parse_identity_table(TABLE3_TEXT))
}

pub fn appendix_a() -> &'static [HurwitzTable] {
    static CELL: OnceLock<Vec<HurwitzTable>> = OnceLock::new();
    cached(&CELL, || parse_hurwitz_tables(APPENDIX_A_TEXT))
}

pub fn appendix_b() -> &'static [(i64, u64)] {
    static CELL: OnceLock<Vec<(i64, u64)>> = OnceLock::new();
    cached(&CELL, || parse_class_numbers(APPENDIX_B_TEXT))
}

pub fn errata() -> &'static [Erratum] {
    static CELL: OnceLock<Vec<Erratum>> = OnceLock::new();
    cached(&CELL, || parse_errata(ERRATA_TEXT))
}

/// Tabulated value of a column at `D`, if present.
pub fn tabulated(column: Column, d: u64) -> Option<&'static Rational> {
    appendix_a().iter().find_map(|t| {
        let j = t.columns.iter().position(|&c| c == column)?;
        t.rows.iter().find(|(dd, _)| *dd == d).map(|(_, v)| &v[j])
    })
}
