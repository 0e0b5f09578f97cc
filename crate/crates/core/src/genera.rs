//! Class enumeration at level 4N, genus partition and weighted
//! representation numbers.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, omega};
use crate::error::{Error, Result};
use crate::forms::{automorphisms, reduce, theta_counts, TernaryForm};
use crate::hurwitz::modified_h;
use crate::local::{genus_label, odd_squarefree_quarter, GenusFamily, GenusLabel};
use crate::rational::Rational;

/// Default cap on the number of `(a, b, c, r, s, t)` candidates examined.
pub const DEFAULT_CANDIDATE_BOUND: u64 = 20_000_000_000;

/// One class of the inventory; also the cache line format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub level: i64,
    pub form: TernaryForm,
    pub d: i64,
    pub aut: u64,
    pub genus: GenusLabel,
}

/// Every class of primitive positive definite forms of level 4N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInventory {
    pub n: i64,
    pub level: i64,
    /// Sorted by discriminant, then canonical form.
    pub classes: Vec<ClassRecord>,
    pub partition: BTreeMap<GenusLabel, Vec<usize>>,
}

impl ClassInventory {
    fn from_records(n: i64, mut classes: Vec<ClassRecord>) -> Self {
        classes.sort_by(|x, y| (x.d, x.form).cmp(&(y.d, y.form)));
        let mut partition: BTreeMap<GenusLabel, Vec<usize>> = BTreeMap::new();
        for (i, c) in classes.iter().enumerate() {
            partition.entry(c.genus.clone()).or_default().push(i);
        }
        ClassInventory { n, level: 4 * n, classes, partition }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn genera(&self) -> impl Iterator<Item = &GenusLabel> {
        self.partition.keys()
    }

    pub fn genus(&self, g: &GenusLabel) -> Result<Vec<&ClassRecord>> {
        let idx = self.partition.get(g).ok_or_else(|| Error::UnknownGenus(g.to_string()))?;
        Ok(idx.iter().map(|&i| &self.classes[i]).collect())
    }

    /// Writes one JSON record per line.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for c in &self.classes {
            let line = serde_json::to_string(c).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    /// Reads an inventory written by [`ClassInventory::write_jsonl`],
    /// checking every record against its form.
    pub fn read_jsonl<R: BufRead>(n: i64, r: R) -> Result<Self> {
        let level = 4 * odd_squarefree_quarter(4 * n)?;
        let mut classes = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec = parse_record(&line).map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            if rec.level != level {
                return Err(Error::Parse(format!("line {}: level {} in a level-{level} file", lineno + 1, rec.level)));
            }
            classes.push(rec);
        }
        Ok(ClassInventory::from_records(n, classes))
    }
}

/// Parses and validates a single cache line. The automorphism count is
/// trusted beyond being a positive even number.
pub fn parse_record(line: &str) -> Result<ClassRecord> {
    let rec: ClassRecord = serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))?;
    let f = rec.form;
    f.check_positive_definite()?;
    if f.discriminant()? != rec.d {
        return Err(Error::Parse(format!("discriminant {} does not match {f}", rec.d)));
    }
    if rec.aut == 0 || rec.aut % 2 != 0 {
        return Err(Error::Parse(format!("automorphism count {} is not positive and even", rec.aut)));
    }
    let label = genus_label(&f)?;
    if label != rec.genus || label.level != rec.level {
        return Err(Error::Parse(format!("genus {} does not match {f} ({label})", rec.genus)));
    }
    Ok(rec)
}

/// The discriminants `k N²/N_r` (k = 1, 4, 16) that occur at level 4N.
pub fn admissible_discriminants(n: i64) -> Result<Vec<i64>> {
    odd_squarefree_quarter(4 * n)?;
    let mut out = BTreeSet::new();
    for n_r in divisors(n) {
        for k in [1, 4, 16] {
            out.insert(k * n * n / n_r);
        }
    }
    Ok(out.into_iter().collect())
}

fn icbrt(n: i64) -> i64 {
    let mut x = 0;
    while (x + 1) * (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// `(d, a, b)` search cells, with a candidate-count estimate.
fn cells(n: i64) -> Result<(Vec<(i64, i64, i64)>, u64)> {
    let mut out = Vec::new();
    let mut estimate = 0u64;
    for d in admissible_discriminants(n)? {
        let half = d / 2;
        for a in 1..=icbrt(half) {
            let mut b = a;
            while a * b * b <= half {
                out.push((d, a, b));
                estimate += ((a + 1) * (a + 1) * (2 * b + 1)) as u64;
                b += 1;
            }
        }
    }
    Ok((out, estimate))
}

/// Estimated number of candidates [`enumerate_classes`] would examine.
pub fn candidate_estimate(n: i64) -> Result<u64> {
    cells(n).map(|(_, e)| e)
}

/// Eisenstein-reduced candidates of discriminant d with the given a, b
/// that are primitive of level `level`.
fn cell_candidates(d: i64, a: i64, b: i64, level: i64) -> Vec<TernaryForm> {
    let mut out = Vec::new();
    let half = d / 2;
    for sign in [1i64, -1] {
        for t0 in 0..=a {
            for s0 in 0..=a {
                for r0 in 0..=b {
                    if sign == -1 && (r0 == 0 && s0 == 0 && t0 == 0) {
                        continue;
                    }
                    let (r, s, t) = (sign * r0, sign * s0, sign * t0);
                    let den = 4 * a * b - t * t;
                    let num = d - r * s * t + a * r * r + b * s * s;
                    if num <= 0 || num % den != 0 {
                        continue;
                    }
                    let c = num / den;
                    if c < b || a * b * c > half {
                        continue;
                    }
                    let f = TernaryForm::new(a, b, c, r, s, t);
                    if f.is_primitive() && f.level().ok() == Some(level) {
                        out.push(f);
                    }
                }
            }
        }
    }
    out
}

/// All classes of primitive positive definite forms of level 4N.
///
/// Fails with [`Error::ResourceBound`] when the candidate estimate
/// exceeds `bound`.
pub fn enumerate_classes_bounded(n: i64, bound: u64) -> Result<ClassInventory> {
    let level = 4 * odd_squarefree_quarter(4 * n)?;
    let (cells, estimate) = cells(n)?;
    if estimate > bound {
        return Err(Error::ResourceBound(format!("level {level}: about {estimate} candidates, bound {bound}")));
    }
    let mut candidates: Vec<TernaryForm> = cells
        .par_iter()
        .flat_map_iter(|&(d, a, b)| cell_candidates(d, a, b, level))
        .collect();
    candidates.sort();
    candidates.dedup();
    let reps: BTreeSet<TernaryForm> = candidates.par_iter().map(reduce).collect::<Result<_>>()?;
    let reps: Vec<TernaryForm> = reps.into_iter().collect();
    let classes = reps
        .par_iter()
        .map(|f| {
            Ok(ClassRecord {
                level,
                form: *f,
                d: f.discriminant()?,
                aut: automorphisms(f)?.len() as u64,
                genus: genus_label(f)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassInventory::from_records(n, classes))
}

pub fn enumerate_classes(n: i64) -> Result<ClassInventory> {
    enumerate_classes_bounded(n, DEFAULT_CANDIDATE_BOUND)
}

/// `<dir>/level-<4N>.jsonl`.
pub fn cache_path(dir: &Path, n: i64) -> PathBuf {
    dir.join(format!("level-{}.jsonl", 4 * n))
}

/// Reads the cached inventory when present, otherwise enumerates and
/// writes the cache. A corrupt cache file is rebuilt.
pub fn load_or_enumerate(n: i64, cache_dir: Option<&Path>, bound: u64) -> Result<ClassInventory> {
    let Some(dir) = cache_dir else {
        return enumerate_classes_bounded(n, bound);
    };
    let path = cache_path(dir, n);
    if let Ok(file) = std::fs::File::open(&path) {
        if let Ok(inv) = ClassInventory::read_jsonl(n, std::io::BufReader::new(file)) {
            if !inv.is_empty() {
                return Ok(inv);
            }
        }
    }
    let inv = enumerate_classes_bounded(n, bound)?;
    std::fs::create_dir_all(dir)?;
    let tmp = path.with_extension("jsonl.tmp");
    {
        let mut w = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
        inv.write_jsonl(&mut w)?;
        w.flush()?;
    }
    std::fs::rename(&tmp, &path)?;
    Ok(inv)
}

/// Inventories keyed by N, computed at most once per store.
pub struct InventoryStore {
    cache_dir: Option<PathBuf>,
    bound: u64,
    memo: Mutex<HashMap<i64, Arc<OnceLock<std::result::Result<Arc<ClassInventory>, Error>>>>>,
}

impl InventoryStore {
    pub fn new(cache_dir: Option<PathBuf>, bound: u64) -> Self {
        InventoryStore { cache_dir, bound, memo: Mutex::new(HashMap::new()) }
    }

    /// Enumerates in memory with the default bound.
    pub fn in_memory() -> Self {
        Self::new(None, DEFAULT_CANDIDATE_BOUND)
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    pub fn get(&self, n: i64) -> Result<Arc<ClassInventory>> {
        let slot = self.memo.lock().expect("inventory store lock").entry(n).or_default().clone();
        slot.get_or_init(|| load_or_enumerate(n, self.cache_dir.as_deref(), self.bound).map(Arc::new)).clone()
    }
}

/// `Σ 1/|Aut(f)|` over the classes of a genus.
pub fn genus_mass(inv: &ClassInventory, g: &GenusLabel) -> Result<Rational> {
    Ok(inv.genus(g)?.iter().map(|c| Rational::new(1, c.aut as i64)).sum())
}

/// `Σ R_f(n)/|Aut(f)|` over the classes of a genus.
pub fn weighted_representation(inv: &ClassInventory, g: &GenusLabel, n: u64) -> Result<Rational> {
    Ok(weighted_series(inv, g, n as usize)?.pop().expect("nonempty"))
}

/// `Σ R_f(k)/|Aut(f)|` for `k = 0..=n_max`.
pub fn weighted_series(inv: &ClassInventory, g: &GenusLabel, n_max: usize) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); n_max + 1];
    for c in inv.genus(g)? {
        let counts = theta_counts(&c.form, n_max)?;
        for (k, &r) in counts.iter().enumerate() {
            if r != 0 {
                out[k] += Rational::new(r as i64, c.aut as i64);
            }
        }
    }
    Ok(out)
}

/// The modified class number whose values the genus' weighted counts
/// follow: returns `(N1, N2, scale, k)` with
/// `Σ R_f(n)/|Aut f| = H^(N1,N2)(k n) / scale`.
pub fn genus_hurwitz_data(g: &GenusLabel) -> Result<(i64, i64, i64, i64)> {
    let n = odd_squarefree_quarter(g.level)?;
    let s = omega(n);
    let (n1, n2, scale_exp, k) = match g.family()? {
        GenusFamily::Square { n_r, n_o } => (n_o, n / n_o, s + 1, 4 * n_r),
        GenusFamily::FourSquareOdd { n_r, n_o } => (n_o, 2 * n / n_o, s + 2, 4 * n_r),
        GenusFamily::FourSquareEven { n_r, n_e } => (2 * n_e, n / n_e, s + 2, 4 * n_r),
        GenusFamily::SixteenSquare { n_r, n_o } => (n_o, n / n_o, s + 1, n_r),
    };
    Ok((n1, n2, 1i64 << scale_exp, k))
}

/// Closed-form value of the weighted representation number of a genus.
pub fn expected_weighted_representation(g: &GenusLabel, n: u64) -> Result<Rational> {
    let (n1, n2, scale, k) = genus_hurwitz_data(g)?;
    Ok(modified_h(n1, n2, k as u64 * n)? / scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_four_and_twelve() {
        let inv = enumerate_classes(1).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(inv.classes[0].form, TernaryForm::new(1, 1, 1, 0, 0, 0));
        assert_eq!(inv.classes[0].aut, 48);

        let inv = enumerate_classes(3).unwrap();
        assert_eq!(inv.len(), 8);
        assert_eq!(inv.partition.len(), 8);
        let labels: Vec<String> = inv.genera().map(|g| g.to_string()).collect();
        for l in ["G_{12,9,3}", "G_{12,3,3}", "G_{12,144,3}", "G_{12,48,3}", "G_{12,36,2}", "G_{12,12,2}", "G_{12,36,3}", "G_{12,12,3}"] {
            assert!(labels.contains(&l.to_string()), "{l}");
        }
    }

    #[test]
    fn masses() {
        let inv = enumerate_classes(1).unwrap();
        let g: GenusLabel = "G_{4,4,2}".parse().unwrap();
        assert_eq!(genus_mass(&inv, &g).unwrap(), Rational::new(1, 48));
        assert_eq!(weighted_representation(&inv, &g, 1).unwrap(), Rational::new(1, 8));
        let inv = enumerate_classes(3).unwrap();
        let g: GenusLabel = "G_{12,9,3}".parse().unwrap();
        assert_eq!(genus_mass(&inv, &g).unwrap(), Rational::new(1, 24));
        let g: GenusLabel = "G_{12,144,3}".parse().unwrap();
        assert_eq!(weighted_representation(&inv, &g, 3).unwrap(), Rational::new(1, 12));
        assert!(genus_mass(&inv, &"G_{12,9,7}".parse().unwrap()).is_err());
    }

    #[test]
    fn jsonl_roundtrip() {
        let inv = enumerate_classes(3).unwrap();
        let mut buf = Vec::new();
        inv.write_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.lines().next().unwrap().starts_with("{\"level\":12,\"form\":\""));
        let back = ClassInventory::read_jsonl(3, buf.as_slice()).unwrap();
        assert_eq!(back, inv);
        let bad = text.replacen("\"aut\":", "\"aut\":-", 1);
        assert!(ClassInventory::read_jsonl(3, bad.as_bytes()).is_err());
    }

    #[test]
    fn resource_guard() {
        assert!(matches!(enumerate_classes_bounded(35, 10), Err(Error::ResourceBound(_))));
    }
}
