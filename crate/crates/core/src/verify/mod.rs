//! Verification suites: genus identities, golden tables, classical
//! identities and the Eisenstein rank check.

pub mod golden;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{divisors, gcd, is_prime, is_squarefree, omega};
use crate::clifford::{
    card_aut, dual_form, even_clifford, rho_count, trace_zero_form_o0, trace_zero_form_s0, QuaternionOrder,
};
use crate::error::{Error, Result};
use crate::forms::{automorphisms, is_equivalent, reduce, represent_count, theta_counts, TernaryForm};
use crate::genera::{genus_hurwitz_data, weighted_series, ClassInventory, InventoryStore};
use crate::hurwitz::{class_number_4n, class_number_from_type_numbers, hurwitz_h, modified_h, type_number};
use crate::local::{genus_shapes, label_any_level, odd_squarefree_quarter, GenusFamily, GenusLabel};
use crate::rational::Rational;
use crate::transforms::watson;

use golden::{Certificate, Column, Erratum, Identity, IdentityTable, TableRow};

/// Finite q-expansion with exact coefficients at `0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QSeries {
    pub coefficients: Vec<Rational>,
}

impl QSeries {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        QSeries { coefficients }
    }

    pub fn zero(n_max: usize) -> Self {
        QSeries { coefficients: vec![Rational::zero(); n_max + 1] }
    }

    pub fn n_max(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn coefficient(&self, n: usize) -> &Rational {
        &self.coefficients[n]
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        QSeries::new(self.coefficients.iter().map(|x| x.clone() * c).collect())
    }

    /// `f(z) ↦ f(lz)`, keeping the same `n_max`.
    pub fn dilated(&self, l: usize) -> Self {
        assert!(l > 0, "dilation by zero");
        let coefficients = (0..=self.n_max())
            .map(|m| if m % l == 0 { self.coefficients[m / l].clone() } else { Rational::zero() })
            .collect();
        QSeries::new(coefficients)
    }

    fn zip(&self, other: &QSeries, op: impl Fn(Rational, &Rational) -> Rational) -> QSeries {
        QSeries::new(self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| op(a.clone(), b)).collect())
    }
}

impl std::ops::Add for &QSeries {
    type Output = QSeries;
    fn add(self, other: &QSeries) -> QSeries {
        self.zip(other, |a, b| a + b)
    }
}

impl std::ops::Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, other: &QSeries) -> QSeries {
        self.zip(other, |a, b| a - b)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `θ_G = scale · Σ_n (Σ_{f∈G} R_f(n)/|Aut f|) qⁿ`, with the family's
/// power of two as `scale`.
pub fn theta_genus(inv: &ClassInventory, g: &GenusLabel, n_max: usize) -> Result<QSeries> {
    let (_, _, scale, _) = genus_hurwitz_data(g)?;
    Ok(QSeries::new(weighted_series(inv, g, n_max)?).scaled(&Rational::from_integer(scale)))
}

/// `θ_{d,2N/d}(lz) = Σ H^(d,2N/d)(4n) q^{ln}`.
pub fn theta_modified(d: i64, n: i64, l: i64, n_max: usize) -> Result<QSeries> {
    odd_squarefree_quarter(4 * n).map_err(|_| Error::InvalidParameter(format!("N={n} must be odd squarefree")))?;
    if d <= 1 || (2 * n) % d != 0 {
        return Err(Error::InvalidParameter(format!("d={d} must be a divisor of 2N={} other than 1", 2 * n)));
    }
    if l < 1 || n % l != 0 {
        return Err(Error::InvalidParameter(format!("l={l} must divide N={n}")));
    }
    let base: Vec<Rational> =
        (0..=n_max).map(|m| modified_h(d, 2 * n / d, 4 * m as u64)).collect::<Result<_>>()?;
    Ok(QSeries::new(base).dilated(l as usize))
}

fn integer_rows(rows: &[QSeries]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|s| {
            let lcm = s.coefficients.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            s.coefficients.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
        })
        .collect()
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank(rows: &[QSeries]) -> usize {
    let mut a = integer_rows(rows);
    let (m, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..m {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].abs();
        r += 1;
        if r == m {
            break;
        }
    }
    r
}

/// `2^{s+1} - 1`, the dimension of the weight 3/2 Eisenstein space.
pub fn eisenstein_dimension(n: i64) -> usize {
    (1usize << (omega(n) + 1)) - 1
}

/// Rank of `{θ_{d,2N/d}(lz) : d | 2N, d ≠ 1}` on coefficients `0..=n_max`.
/// A deficient rank below `n_max = 4·2^{s+1}` is reported as
/// [`Error::InsufficientPrecision`].
pub fn eisenstein_rank(n: i64, l: i64, n_max: usize) -> Result<usize> {
    let series: Vec<QSeries> = divisors(2 * n)
        .into_par_iter()
        .filter(|&d| d != 1)
        .map(|d| theta_modified(d, n, l, n_max))
        .collect::<Result<_>>()?;
    let found = rank(&series);
    let expected = eisenstein_dimension(n);
    let threshold = 4 * (expected + 1);
    if found < expected && n_max < threshold {
        return Err(Error::InsufficientPrecision { n_max, rank: found, expected });
    }
    Ok(found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    /// The computation disagrees with a tabulated value.
    CodeVsTable,
    /// A tabulated row contradicts itself or another table.
    TableInternal,
    /// An identity or expected value does not hold.
    Mismatch,
    /// The check could not be carried out.
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    /// The printed value is wrong, the certificate proves it, and the
    /// correction holds.
    Corrected { certificate: String },
    Fail { kind: FailureKind },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub lhs: Rational,
    pub rhs: Rational,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, lhs: Rational, rhs: Rational, detail: impl Into<String>) -> Check {
        let outcome = if lhs == rhs { Outcome::Pass } else { Outcome::Fail { kind: FailureKind::Mismatch } };
        Check { name: name.into(), outcome, lhs, rhs, detail: detail.into() }
    }

    fn failed(name: impl Into<String>, kind: FailureKind, lhs: Rational, rhs: Rational, detail: impl Into<String>) -> Check {
        Check { name: name.into(), outcome: Outcome::Fail { kind }, lhs, rhs, detail: detail.into() }
    }

    fn error(name: impl Into<String>, e: &Error) -> Check {
        Check::failed(name, FailureKind::Error, Rational::zero(), Rational::zero(), e.to_string())
    }

    pub fn passed(&self) -> bool {
        !matches!(self.outcome, Outcome::Fail { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    /// Wall time; left out of JSON so that output is reproducible.
    #[serde(skip)]
    pub runtime_ms: u128,
}

impl VerificationReport {
    fn run(suite: &str, parameters: &[(&str, String)], body: impl FnOnce() -> Vec<Check>) -> Self {
        let start = Instant::now();
        let checks = body();
        VerificationReport {
            suite: suite.to_string(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            checks,
            runtime_ms: start.elapsed().as_millis(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn corrections(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| matches!(c.outcome, Outcome::Corrected { .. }))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Concatenates reports in order. Check names are prefixed by the
    /// sub-suite, or by its parameters when it runs under the same name;
    /// repeated parameters become `;`-separated lists.
    pub fn merge(suite: &str, reports: Vec<VerificationReport>) -> Self {
        let mut parameters: BTreeMap<String, String> = BTreeMap::new();
        let mut checks = Vec::new();
        let mut runtime_ms = 0;
        for r in reports {
            let prefix = if r.suite == suite {
                r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
            } else {
                r.suite.clone()
            };
            for (k, v) in r.parameters {
                let key = if r.suite == suite { k } else { format!("{}.{k}", r.suite) };
                parameters.entry(key).and_modify(|acc| *acc = format!("{acc};{v}")).or_insert(v);
            }
            checks.extend(r.checks.into_iter().map(|mut c| {
                c.name = format!("{prefix}: {}", c.name);
                c
            }));
            runtime_ms += r.runtime_ms;
        }
        VerificationReport { suite: suite.to_string(), parameters, checks, runtime_ms }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(f, "suite {} ({})", self.suite, params.join(", "))?;
        for c in &self.checks {
            match &c.outcome {
                Outcome::Pass => writeln!(f, "  ok    {}", c.name)?,
                Outcome::Corrected { certificate } => {
                    writeln!(f, "  fixed {}: {certificate}", c.name)?;
                }
                Outcome::Fail { kind } => {
                    writeln!(f, "  FAIL  {} [{kind:?}]: {} != {} {}", c.name, c.lhs, c.rhs, c.detail)?;
                }
            }
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} checks, {} failed, {} corrected, {} ms",
            self.checks.len(),
            failed,
            self.corrections().count(),
            self.runtime_ms
        )
    }
}

/// Suites reachable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    AppendixA,
    AppendixB,
    Table2,
    Table3,
    Genera,
    Shapes,
    TypeNumbers,
    BerkovichJagy,
    Du,
    Eisenstein,
    Clifford,
    Enumeration,
    HurwitzRelations,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::AppendixA,
        Suite::AppendixB,
        Suite::Table2,
        Suite::Table3,
        Suite::Genera,
        Suite::Shapes,
        Suite::TypeNumbers,
        Suite::BerkovichJagy,
        Suite::Du,
        Suite::Eisenstein,
        Suite::Clifford,
        Suite::Enumeration,
        Suite::HurwitzRelations,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::AppendixA => "appendixA",
            Suite::AppendixB => "appendixB",
            Suite::Table2 => "table2",
            Suite::Table3 => "table3",
            Suite::Genera => "genera",
            Suite::Shapes => "shapes",
            Suite::TypeNumbers => "typenumbers",
            Suite::BerkovichJagy => "berkovich-jagy",
            Suite::Du => "du",
            Suite::Eisenstein => "eisenstein",
            Suite::Clifford => "clifford",
            Suite::Enumeration => "enumeration",
            Suite::HurwitzRelations => "hurwitz-relations",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every tabulated modified Hurwitz value against the computed one.
pub fn check_appendix_a() -> VerificationReport {
    VerificationReport::run("appendixA", &[], || {
        let cells: Vec<(Column, u64, Rational)> = golden::appendix_a()
            .iter()
            .flat_map(|t| {
                t.columns.iter().enumerate().flat_map(move |(j, &col)| {
                    t.rows.iter().map(move |(d, vals)| (col, *d, vals[j].clone()))
                })
            })
            .collect();
        cells
            .par_iter()
            .map(|(col, d, printed)| {
                let name = format!("{col}({d})");
                let computed = match col {
                    Column::Plain => hurwitz_h(*d),
                    Column::Modified { n1, n2 } => match modified_h(*n1, *n2, *d) {
                        Ok(v) => v,
                        Err(e) => return Check::error(name, &e),
                    },
                };
                if &computed == printed {
                    return Check::new(name, computed, printed.clone(), "");
                }
                match cell_erratum(*col, *d, printed) {
                    Ok((corrected, certificate)) if corrected == computed => Check {
                        name,
                        outcome: Outcome::Corrected { certificate },
                        lhs: computed,
                        rhs: printed.clone(),
                        detail: format!("corrected value {corrected}"),
                    },
                    Ok((corrected, _)) => Check::failed(
                        name,
                        FailureKind::CodeVsTable,
                        computed,
                        printed.clone(),
                        format!("certified correction {corrected} also disagrees"),
                    ),
                    Err(why) => Check::failed(name, FailureKind::CodeVsTable, computed, printed.clone(), why),
                }
            })
            .collect()
    })
}

/// Looks up and certifies an erratum for a Hurwitz table cell.
fn cell_erratum(col: Column, d: u64, printed: &Rational) -> std::result::Result<(Rational, String), String> {
    let (corrected, certificate) = golden::errata()
        .iter()
        .find_map(|e| match e {
            Erratum::Cell { column, d: dd, corrected, certificate } if *column == col && *dd == d => {
                Some((corrected.clone(), certificate.clone()))
            }
            _ => None,
        })
        .ok_or_else(|| "no erratum recorded".to_string())?;
    let Certificate::Row { genus, n } = &certificate else {
        return Err("cell errata need a row certificate".into());
    };
    let row = golden::table2()
        .iter()
        .find(|r| &r.genus == genus)
        .ok_or_else(|| format!("certificate row {genus} not found"))?;
    let rhs = &row.identity.rhs;
    if (Column::Modified { n1: rhs.n1, n2: rhs.n2 }) != col || rhs.k as u64 * n != d {
        return Err(format!("row {genus} at n={n} does not evaluate {col}({d})"));
    }
    let lhs = identity_lhs(&row.identity, *n).map_err(|e| e.to_string())?;
    let implied = lhs / rhs.coefficient;
    if implied != corrected || &implied == printed {
        return Err(format!("row {genus} at n={n} implies {implied}"));
    }
    Ok((corrected, format!("{genus} at n={n} gives {implied}")))
}

fn identity_lhs(id: &Identity, n: u64) -> Result<Rational> {
    let mut total = 0i64;
    for t in &id.lhs {
        total += t.coefficient * represent_count(&t.form, n as i64)? as i64;
    }
    Ok(Rational::from_integer(total))
}

/// Both sides of an identity at `0..=n_max`.
fn identity_sides(id: &Identity, n_max: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let mut lhs = vec![0i64; n_max + 1];
    for t in &id.lhs {
        for (n, r) in theta_counts(&t.form, n_max)?.into_iter().enumerate() {
            lhs[n] += t.coefficient * r as i64;
        }
    }
    let r = &id.rhs;
    let rhs = (0..=n_max)
        .map(|n| Ok(modified_h(r.n1, r.n2, (r.k as u64) * n as u64)? * r.coefficient))
        .collect::<Result<Vec<_>>>()?;
    Ok((lhs.into_iter().map(Rational::from_integer).collect(), rhs))
}

enum RowFault {
    Internal(String),
    Identity { n: usize, lhs: Rational, rhs: Rational },
    Classes(String),
    Failed(Error),
}

/// Checks one identity row: forms in the stated genus, the listed forms
/// are exactly the genus' classes, and the identity up to `n_max`.
fn check_row(genus: &GenusLabel, id: &Identity, n_max: usize, store: &InventoryStore) -> std::result::Result<(Rational, Rational), RowFault> {
    for t in &id.lhs {
        if !t.form.is_positive_definite() || !t.form.is_primitive() {
            return Err(RowFault::Internal(format!("{} is not primitive positive definite", t.form)));
        }
        let label = label_any_level(&t.form).map_err(RowFault::Failed)?;
        if &label != genus {
            return Err(RowFault::Internal(format!("{} lies in {label}", t.form)));
        }
    }
    let n = odd_squarefree_quarter(genus.level).map_err(RowFault::Failed)?;
    let inv = store.get(n).map_err(RowFault::Failed)?;
    let listed: BTreeSet<TernaryForm> =
        id.lhs.iter().map(|t| reduce(&t.form)).collect::<Result<_>>().map_err(RowFault::Failed)?;
    let classes: BTreeSet<TernaryForm> = inv.genus(genus).map_err(RowFault::Failed)?.iter().map(|c| c.form).collect();
    if listed != classes || listed.len() != id.lhs.len() {
        let shown: Vec<String> = classes.iter().map(|f| f.to_string()).collect();
        return Err(RowFault::Classes(format!("genus classes are [{}]", shown.join("; "))));
    }
    let (lhs, rhs) = identity_sides(id, n_max).map_err(RowFault::Failed)?;
    for n in 0..=n_max {
        if lhs[n] != rhs[n] {
            return Err(RowFault::Identity { n, lhs: lhs[n].clone(), rhs: rhs[n].clone() });
        }
    }
    Ok((lhs[n_max].clone(), rhs[n_max].clone()))
}

fn certify_row(cert: &Certificate, genus: &GenusLabel, id: &Identity) -> std::result::Result<String, String> {
    match cert {
        Certificate::Label => {
            for t in &id.lhs {
                let label = label_any_level(&t.form).map_err(|e| e.to_string())?;
                if &label != genus {
                    return Ok(format!("printed form {} lies in {label}", t.form));
                }
            }
            Err("every printed form lies in the printed genus".into())
        }
        Certificate::ZeroTerm => {
            let r = &id.rhs;
            let h0 = golden::tabulated(Column::Modified { n1: r.n1, n2: r.n2 }, 0)
                .ok_or_else(|| format!("H({},{})(0) is not tabulated", r.n1, r.n2))?;
            let lhs: i64 = id.lhs.iter().map(|t| t.coefficient).sum();
            let rhs = h0.clone() * r.coefficient;
            if rhs == Rational::from_integer(lhs) {
                return Err("printed identity holds at n = 0".into());
            }
            Ok(format!("at n = 0 the printed identity reads {lhs} = {rhs}"))
        }
        Certificate::Row { .. } => Err("row errata need a label or n0 certificate".into()),
    }
}

fn check_identity_row(which: IdentityTable, row: &TableRow, n_max: usize, store: &InventoryStore) -> Check {
    let name = format!("{} {}", row.genus, row.identity);
    let fault = match check_row(&row.genus, &row.identity, n_max, store) {
        Ok((lhs, rhs)) => return Check::new(name, lhs, rhs, format!("n <= {n_max}")),
        Err(f) => f,
    };
    let (kind, lhs, rhs, detail) = match fault {
        RowFault::Internal(why) => (FailureKind::TableInternal, Rational::zero(), Rational::zero(), why),
        RowFault::Classes(why) => (FailureKind::CodeVsTable, Rational::zero(), Rational::zero(), why),
        RowFault::Identity { n, lhs, rhs } => (FailureKind::CodeVsTable, lhs, rhs, format!("first failure at n = {n}")),
        RowFault::Failed(e) => return Check::error(name, &e),
    };
    let erratum = golden::errata().iter().find_map(|e| match e {
        Erratum::Row { table, genus, corrected, certificate } if *table == which && genus == &row.genus => {
            Some((corrected, certificate))
        }
        _ => None,
    });
    let Some((corrected, certificate)) = erratum else {
        return Check::failed(name, kind, lhs, rhs, detail);
    };
    let certified = match certify_row(certificate, &row.genus, &row.identity) {
        Ok(c) => c,
        Err(why) => return Check::failed(name, kind, lhs, rhs, format!("{detail}; certificate rejected: {why}")),
    };
    match check_row(&row.genus, corrected, n_max, store) {
        Ok((l, r)) => Check {
            name,
            outcome: Outcome::Corrected { certificate: format!("{certified}; corrected to {corrected}") },
            lhs: l,
            rhs: r,
            detail: format!("n <= {n_max}"),
        },
        Err(_) => Check::failed(name, kind, lhs, rhs, format!("{detail}; correction {corrected} fails too")),
    }
}

/// Single-class identities (`Table2`) or the level-140 weighted
/// identities (`Table3`), each for `n ≤ n_max`.
pub fn check_identity_table(which: IdentityTable, n_max: usize, store: &InventoryStore) -> VerificationReport {
    let (suite, rows) = match which {
        IdentityTable::Table2 => ("table2", golden::table2()),
        IdentityTable::Table3 => ("table3", golden::table3()),
    };
    VerificationReport::run(suite, &[("n_max", n_max.to_string())], || {
        rows.par_iter().map(|row| check_identity_row(which, row, n_max, store)).collect()
    })
}

/// `|C(4N)|` from the closed formula and from type numbers, against the
/// tabulated values with `4N ≤ max_level`.
pub fn check_appendix_b(max_level: i64) -> VerificationReport {
    VerificationReport::run("appendixB", &[("max_level", max_level.to_string())], || {
        golden::appendix_b()
            .par_iter()
            .filter(|(level, _)| *level <= max_level)
            .map(|&(level, printed)| {
                let name = format!("|C({level})|");
                let n = level / 4;
                let values = class_number_4n(n).and_then(|a| Ok((a, class_number_from_type_numbers(n)?)));
                match values {
                    Err(e) => Check::error(name, &e),
                    Ok((a, b)) if a != b => Check::failed(
                        name,
                        FailureKind::Mismatch,
                        Rational::from_integer(a as i64),
                        Rational::from_integer(b as i64),
                        "closed formula and type-number sum disagree",
                    ),
                    Ok((a, _)) if a != printed => Check::failed(
                        name,
                        FailureKind::CodeVsTable,
                        Rational::from_integer(a as i64),
                        Rational::from_integer(printed as i64),
                        "",
                    ),
                    Ok((a, _)) => Check::new(name, Rational::from_integer(a as i64), Rational::from_integer(printed as i64), ""),
                }
            })
            .collect()
    })
}

/// Number of classes found by enumeration against `|C(4N)|`.
pub fn check_enumeration(ns: &[i64], store: &InventoryStore) -> VerificationReport {
    let shown: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
    VerificationReport::run("enumeration", &[("N", shown.join(","))], || {
        ns.iter()
            .map(|&n| {
                let name = format!("level {}", 4 * n);
                match store.get(n).and_then(|inv| Ok((inv.len() as i64, class_number_4n(n)? as i64))) {
                    Ok((found, formula)) => {
                        Check::new(name, Rational::from_integer(found), Rational::from_integer(formula), "")
                    }
                    Err(e) => Check::error(name, &e),
                }
            })
            .collect()
    })
}

/// For each genus at level 4N, the weighted representation numbers
/// against the modified Hurwitz values for `n ≤ n_max`.
pub fn check_genus_identities(n: i64, n_max: usize, store: &InventoryStore) -> VerificationReport {
    VerificationReport::run("genera", &[("N", n.to_string()), ("n_max", n_max.to_string())], || {
        let inv = match store.get(n) {
            Ok(inv) => inv,
            Err(e) => return vec![Check::error(format!("level {}", 4 * n), &e)],
        };
        let genera: Vec<&GenusLabel> = inv.genera().collect();
        genera
            .par_iter()
            .map(|g| {
                let name = g.to_string();
                let run = || -> Result<Check> {
                    let (n1, n2, scale, k) = genus_hurwitz_data(g)?;
                    let lhs = weighted_series(&inv, g, n_max)?;
                    for (m, value) in lhs.iter().enumerate() {
                        let expected = modified_h(n1, n2, (k * m as i64) as u64)? / scale;
                        if value != &expected {
                            return Ok(Check::new(name.clone(), value.clone(), expected, format!("n = {m}")));
                        }
                    }
                    let expected = modified_h(n1, n2, (k * n_max as i64) as u64)? / scale;
                    Ok(Check::new(name.clone(), lhs[n_max].clone(), expected, format!("H({n1},{n2})({k}n)/{scale}, n <= {n_max}")))
                };
                run().unwrap_or_else(|e| Check::error(name.clone(), &e))
            })
            .collect()
    })
}

/// The genus partition at level 4N has the predicted number of cells
/// with the predicted labels.
pub fn check_genus_shapes(n: i64, store: &InventoryStore) -> VerificationReport {
    VerificationReport::run("shapes", &[("N", n.to_string())], || {
        let level = 4 * n;
        let run = || -> Result<Vec<Check>> {
            let inv = store.get(n)?;
            let found: BTreeSet<GenusLabel> = inv.genera().cloned().collect();
            let predicted: BTreeSet<GenusLabel> = genus_shapes(n)?.into_iter().collect();
            let s = omega(n);
            let count = if s == 0 { 1 } else { 1i64 << (2 * s + 1) };
            let mut checks = vec![Check::new(
                format!("level {level} genus count"),
                Rational::from_integer(found.len() as i64),
                Rational::from_integer(count),
                "",
            )];
            let missing: Vec<String> = predicted.symmetric_difference(&found).map(|g| g.to_string()).collect();
            checks.push(Check::new(
                format!("level {level} genus labels"),
                Rational::from_integer(missing.len() as i64),
                Rational::zero(),
                missing.join(" "),
            ));
            Ok(checks)
        };
        run().unwrap_or_else(|e| vec![Check::error(format!("level {level}"), &e)])
    })
}

/// Levels `(N, F)` whose type number is 1.
pub const TYPE_NUMBER_ONE: [(i64, i64); 20] = [
    (2, 1),
    (3, 1),
    (5, 1),
    (7, 1),
    (13, 1),
    (30, 1),
    (42, 1),
    (70, 1),
    (78, 1),
    (2, 3),
    (2, 5),
    (2, 7),
    (2, 11),
    (2, 15),
    (2, 23),
    (3, 2),
    (3, 5),
    (3, 11),
    (5, 2),
    (7, 3),
];

/// The listed type numbers equal 1, and `T_{N,F}` is a positive integer
/// for every admissible `(N, F)` with `NF ≤ max_product`.
pub fn check_type_numbers(max_product: i64) -> VerificationReport {
    VerificationReport::run("typenumbers", &[("max_product", max_product.to_string())], || {
        let mut pairs: Vec<(i64, i64, bool)> = TYPE_NUMBER_ONE.iter().map(|&(n, f)| (n, f, true)).collect();
        for n in 2..=max_product {
            if !is_squarefree(n) || omega(n) % 2 == 0 {
                continue;
            }
            for f in 1..=max_product / n {
                if is_squarefree(f) && gcd(n, f) == 1 {
                    pairs.push((n, f, false));
                }
            }
        }
        pairs
            .par_iter()
            .map(|&(n, f, listed)| {
                let name = format!("T({n},{f})");
                match type_number(n, f) {
                    Ok(t) if listed => Check::new(name, Rational::from_integer(t as i64), Rational::one(), "listed"),
                    Ok(t) => Check::new(name, Rational::one(), Rational::one(), format!("T = {t}")),
                    Err(e) => Check::error(name, &e),
                }
            })
            .collect()
    })
}

/// `r₃(p²n) - p r₃(n) = 48 Σ_{G_{4p,p²,p}} R/|Aut| - 96 Σ_{G_{4p,16p²,p}} R/|Aut|`.
pub fn check_berkovich_jagy(p: i64, n_max: usize, store: &InventoryStore) -> VerificationReport {
    VerificationReport::run("berkovich-jagy", &[("p", p.to_string()), ("n_max", n_max.to_string())], || {
        let run = || -> Result<Vec<Check>> {
            if !is_prime(p) || p == 2 {
                return Err(Error::InvalidParameter(format!("p={p} must be an odd prime")));
            }
            let inv = store.get(p)?;
            let g1 = GenusLabel::new(4 * p, p * p, vec![p])?;
            let g2 = GenusLabel::new(4 * p, 16 * p * p, vec![p])?;
            let s1 = weighted_series(&inv, &g1, n_max)?;
            let s2 = weighted_series(&inv, &g2, n_max)?;
            let r3 = theta_counts(&TernaryForm::new(1, 1, 1, 0, 0, 0), (p * p) as usize * n_max)?;
            Ok((0..=n_max)
                .map(|n| {
                    let lhs = r3[(p * p) as usize * n] as i64 - p * r3[n] as i64;
                    let rhs = s1[n].clone() * 48 - s2[n].clone() * 96;
                    Check::new(format!("p={p} n={n}"), Rational::from_integer(lhs), rhs, "")
                })
                .collect())
        };
        run().unwrap_or_else(|e| vec![Check::error(format!("p={p}"), &e)])
    })
}

/// `r_{D',N'}(m) = H^(D',N')(4m) / H^(D',N')(0)`.
fn genus_average(d: i64, n: i64, m: u64) -> Result<Rational> {
    Ok(modified_h(d, n, 4 * m)? / &modified_h(d, n, 0)?)
}

/// `-2/(q-1) r_{Dp,N}(m) + (q+1)/(q-1) r_{Dp,Nq}(m)` equals the same
/// expression with p and q exchanged, for `1 ≤ m ≤ m_max`.
pub fn check_du(d: i64, p: i64, q: i64, n: i64, m_max: u64) -> VerificationReport {
    let params = [("D", d.to_string()), ("p", p.to_string()), ("q", q.to_string()), ("N", n.to_string()), ("m_max", m_max.to_string())];
    VerificationReport::run("du", &params, || {
        let run = || -> Result<Vec<Check>> {
            let bad = |why: &str| Err(Error::InvalidParameter(format!("(D,p,q,N)=({d},{p},{q},{n}): {why}")));
            if d < 1 || !is_squarefree(d) || omega(d) % 2 != 0 {
                return bad("D must be squarefree with an even number of prime factors");
            }
            if !is_prime(p) || !is_prime(q) || p == q || d % p == 0 || d % q == 0 {
                return bad("p, q must be distinct primes not dividing D");
            }
            if n < 1 || gcd(n, d * p * q) != 1 || !is_squarefree(n) {
                return bad("N must be squarefree and prime to Dpq");
            }
            let side = |p: i64, q: i64, m: u64| -> Result<Rational> {
                let a = genus_average(d * p, n, m)? * Rational::new(-2, q - 1);
                let b = genus_average(d * p, n * q, m)? * Rational::new(q + 1, q - 1);
                Ok(a + b)
            };
            (1..=m_max)
                .into_par_iter()
                .map(|m| Ok(Check::new(format!("m={m}"), side(p, q, m)?, side(q, p, m)?, "")))
                .collect()
        };
        run().unwrap_or_else(|e| vec![Check::error("parameters", &e)])
    })
}

/// `eisenstein_rank(N, l, n_max)` against `2^{s+1} - 1`.
pub fn check_eisenstein(n: i64, l: i64, n_max: usize) -> VerificationReport {
    let params = [("N", n.to_string()), ("l", l.to_string()), ("n_max", n_max.to_string())];
    VerificationReport::run("eisenstein", &params, || {
        let name = "rank";
        let expected = Rational::from_integer(eisenstein_dimension(n) as i64);
        match eisenstein_rank(n, l, n_max) {
            Ok(r) => vec![Check::new(name, Rational::from_integer(r as i64), expected, "")],
            Err(Error::InsufficientPrecision { rank, .. }) => vec![Check::failed(
                name,
                FailureKind::Mismatch,
                Rational::from_integer(rank as i64),
                expected,
                format!("rank deficient and n_max = {n_max} is below the certification threshold"),
            )],
            Err(e) => vec![Check::error(name, &e)],
        }
    })
}

/// `H^(p,1)(16n) - 2H^(p,1)(4n) = H^(2p,1)(4n)` and
/// `H^(p,1)(4n) - 2H^(p,1)(n) = H^(2p,1)(4n)` for `n ≤ n_max`.
pub fn check_hurwitz_relations(p: i64, n_max: u64) -> VerificationReport {
    VerificationReport::run("hurwitz-relations", &[("p", p.to_string()), ("n_max", n_max.to_string())], || {
        (0..=n_max)
            .into_par_iter()
            .flat_map_iter(|n| {
                let run = || -> Result<Vec<Check>> {
                    let h = |a: i64, d: u64| modified_h(a, 1, d);
                    let target = h(2 * p, 4 * n)?;
                    Ok(vec![
                        Check::new(format!("p={p} n={n} (16n)"), h(p, 16 * n)? - h(p, 4 * n)? * 2, target.clone(), ""),
                        Check::new(format!("p={p} n={n} (n)"), h(p, 4 * n)? - h(p, n)? * 2, target, ""),
                    ])
                };
                run().unwrap_or_else(|e| vec![Check::error(format!("p={p} n={n}"), &e)])
            })
            .collect()
    })
}

/// Canonical representatives of all primitive positive definite forms
/// with `d ≤ max_d`.
pub fn reduced_forms(max_d: i64) -> Result<BTreeSet<TernaryForm>> {
    let mut all = BTreeSet::new();
    let top = max_d.max(1);
    for a in 1..=top {
        if 4 * a * a * a > 2 * top {
            break;
        }
        for b in a..=top {
            if 4 * a * b * b > 2 * top {
                break;
            }
            for c in b..=top {
                if a * b * c > top {
                    break;
                }
                for r in -b..=b {
                    for s in -a..=a {
                        for t in -a..=a {
                            let f = TernaryForm::new(a, b, c, r, s, t);
                            if f.is_primitive() && f.is_positive_definite() && f.discriminant_i128() <= max_d as i128 {
                                all.insert(reduce(&f)?);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(all)
}

/// `count` forms spread evenly over [`reduced_forms`].
pub fn sample_forms(max_d: i64, count: usize) -> Result<Vec<TernaryForm>> {
    let all: Vec<TernaryForm> = reduced_forms(max_d)?.into_iter().collect();
    if all.len() <= count {
        return Ok(all);
    }
    Ok((0..count).map(|i| all[i * all.len() / count]).collect())
}

fn equivalent(f: &TernaryForm, g: &TernaryForm) -> Result<bool> {
    Ok(is_equivalent(f, g)?.is_some())
}

/// Trace-zero relations for `O = C₀(g)`, up to `n_max`.
fn order_checks(name: &str, o: &QuaternionOrder, n_max: i64) -> Result<Vec<Check>> {
    let o0 = trace_zero_form_o0(o)?;
    let s0 = trace_zero_form_s0(o)?;
    let mut checks = Vec::new();
    let lambda = watson(&s0, 4)?;
    checks.push(Check::new(
        format!("{name}: lambda_4(f_S0) ~ f_O0"),
        Rational::from_integer(equivalent(&lambda.form, &o0)? as i64),
        Rational::one(),
        format!("f_S0 = {s0}, f_O0 = {o0}"),
    ));
    let aut_o = Rational::from_integer(2 * card_aut(o)? as i64);
    let aut = |f: &TernaryForm| -> Result<Rational> { Ok(Rational::from_integer(automorphisms(f)?.len() as i64)) };
    checks.push(Check::new(format!("{name}: 2 card Aut(O) = |Aut f_O0|"), aut_o.clone(), aut(&o0)?, ""));
    checks.push(Check::new(format!("{name}: 2 card Aut(O) = |Aut f_S0|"), aut_o, aut(&s0)?, ""));
    let rs = theta_counts(&s0, n_max as usize)?;
    let ro = theta_counts(&o0, n_max as usize / 4)?;
    for n in 0..=n_max {
        let expected = match n % 4 {
            0 => ro[(n / 4) as usize],
            3 => rho_count(o, (n + 1) / 4, -1)?,
            _ => 0,
        };
        if rs[n as usize] != expected {
            checks.push(Check::new(
                format!("{name}: R_S0({n})"),
                Rational::from_integer(rs[n as usize] as i64),
                Rational::from_integer(expected as i64),
                "",
            ));
            return Ok(checks);
        }
    }
    checks.push(Check::new(format!("{name}: R_S0 trichotomy"), Rational::one(), Rational::one(), format!("n <= {n_max}")));
    Ok(checks)
}

/// For a single-class genus of the form `f_{O⁰}` or `f_{S⁰}`, an order
/// `C₀(g)` realizing the row's form, searched over `d_g = N1 N2`.
fn order_for_row(row: &TableRow) -> Result<Option<(TernaryForm, QuaternionOrder)>> {
    let f = row.identity.lhs[0].form;
    let sixteen = match row.genus.family()? {
        GenusFamily::SixteenSquare { n_r: 1, .. } => true,
        GenusFamily::Square { n_r: 1, .. } | GenusFamily::FourSquareOdd { n_r: 1, .. } | GenusFamily::FourSquareEven { n_r: 1, .. } => false,
        _ => return Ok(None),
    };
    let (n1, n2, _, _) = genus_hurwitz_data(&row.genus)?;
    let d = n1 * n2;
    for g in reduced_forms(d)?.into_iter().filter(|g| g.discriminant_i128() == d as i128) {
        let o = even_clifford(&g)?;
        let image = if sixteen { trace_zero_form_s0(&o)? } else { trace_zero_form_o0(&o)? };
        if equivalent(&image, &f)? {
            return Ok(Some((g, o)));
        }
    }
    Err(Error::OrderInvariant(format!("no order of discriminant {d} has trace-zero form {f}")))
}

/// Round trip `f ↦ C₀(f) ↦ f_O` on sampled forms, and the trace-zero
/// relations for the orders behind the single-class genera with level at
/// most `max_level`.
pub fn check_clifford(samples: usize, max_d: i64, max_level: i64, n_max: i64) -> VerificationReport {
    let params = [
        ("samples", samples.to_string()),
        ("max_d", max_d.to_string()),
        ("max_level", max_level.to_string()),
        ("n_max", n_max.to_string()),
    ];
    VerificationReport::run("clifford", &params, || {
        let mut checks = match sample_forms(max_d, samples) {
            Ok(forms) => forms
                .par_iter()
                .map(|f| {
                    let name = format!("{f}: f_O ~ f, discrd = d");
                    let run = || -> Result<Check> {
                        let o = even_clifford(f)?;
                        let back = dual_form(&o)?;
                        let ok = equivalent(&back, f)? && o.discrd()? == f.discriminant()?;
                        Ok(Check::new(name.clone(), Rational::from_integer(ok as i64), Rational::one(), format!("f_O = {back}")))
                    };
                    run().unwrap_or_else(|e| Check::error(name.clone(), &e))
                })
                .collect(),
            Err(e) => vec![Check::error("sampling", &e)],
        };
        let rows: Vec<&TableRow> = golden::table2().iter().filter(|r| r.genus.level <= max_level).collect();
        let more: Vec<Vec<Check>> = rows
            .par_iter()
            .map(|r| {
                let name = r.genus.to_string();
                match order_for_row(r) {
                    Ok(Some((g, o))) => order_checks(&format!("{name} via C0({g})"), &o, n_max)
                        .unwrap_or_else(|e| vec![Check::error(name, &e)]),
                    Ok(None) => Vec::new(),
                    Err(e) => vec![Check::error(name, &e)],
                }
            })
            .collect();
        checks.extend(more.into_iter().flatten());
        checks
    })
}
