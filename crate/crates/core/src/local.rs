//! Local invariants: rational diagonalization, Hilbert symbols, Hasse
//! invariants, anisotropic primes and genus labels at level 4N.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{divisors, is_prime, is_squarefree, jacobi, mod_inverse, omega, prime_factors};
use crate::error::{Error, Result};
use crate::forms::TernaryForm;
use crate::rational::Rational;

/// Diagonal form `a x² + b y² + c z²` rationally equivalent to some `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalForm {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl DiagonalForm {
    pub fn entries(&self) -> [&Rational; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn product(&self) -> Rational {
        self.a.clone() * &self.b * &self.c
    }
}

type RatMat = [[Rational; 3]; 3];

fn rat_identity() -> RatMat {
    std::array::from_fn(|i| std::array::from_fn(|j| Rational::from_integer((i == j) as i64)))
}

/// Column `j += m * column i` on `p`, and the matching congruence on `a`.
fn add_multiple(a: &mut RatMat, p: &mut RatMat, j: usize, i: usize, m: &Rational) {
    for row in p.iter_mut() {
        let add = row[i].clone() * m;
        row[j] = row[j].clone() + add;
    }
    for row in a.iter_mut() {
        let add = row[i].clone() * m;
        row[j] = row[j].clone() + add;
    }
    for k in 0..3 {
        let add = a[i][k].clone() * m;
        a[j][k] = a[j][k].clone() + add;
    }
}

fn swap(a: &mut RatMat, p: &mut RatMat, i: usize, j: usize) {
    for row in p.iter_mut() {
        row.swap(i, j);
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    a.swap(i, j);
}

/// Diagonalization together with a rational `P` such that
/// `Pᵀ (M/2) P = diag(a, b, c)`.
pub fn diagonalize_with_basis(f: &TernaryForm) -> Result<(DiagonalForm, RatMat)> {
    if f.discriminant_i128() == 0 {
        return Err(Error::Degenerate);
    }
    let [a, b, c, r, s, t] = f.to_array();
    let mut m: RatMat = [
        [Rational::from_integer(a), Rational::new(t, 2), Rational::new(s, 2)],
        [Rational::new(t, 2), Rational::from_integer(b), Rational::new(r, 2)],
        [Rational::new(s, 2), Rational::new(r, 2), Rational::from_integer(c)],
    ];
    let mut p = rat_identity();
    for i in 0..3 {
        if m[i][i].is_zero() {
            if let Some(j) = (i + 1..3).find(|&j| !m[j][j].is_zero()) {
                swap(&mut m, &mut p, i, j);
            } else if let Some(j) = (i + 1..3).find(|&j| !m[i][j].is_zero()) {
                add_multiple(&mut m, &mut p, i, j, &Rational::one());
            }
        }
        if m[i][i].is_zero() {
            return Err(Error::Degenerate);
        }
        for j in i + 1..3 {
            let q = -(m[i][j].clone() / &m[i][i]);
            if !q.is_zero() {
                add_multiple(&mut m, &mut p, j, i, &q);
            }
        }
    }
    let [d0, d1, d2] = [m[0][0].clone(), m[1][1].clone(), m[2][2].clone()];
    Ok((DiagonalForm { a: d0, b: d1, c: d2 }, p))
}

/// Rationally equivalent diagonal form, by successive completion of squares.
pub fn diagonalize(f: &TernaryForm) -> Result<DiagonalForm> {
    diagonalize_with_basis(f).map(|(d, _)| d)
}

fn check_prime(p: i64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    Ok(())
}

/// `x = p^v · u` with `p ∤ u`, for a nonzero integer `x`.
fn split(x: &BigInt, p: i64) -> (u32, BigInt) {
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return (v, x);
        }
        x = q;
        v += 1;
    }
}

fn residue(x: &BigInt, m: i64) -> i64 {
    x.mod_floor(&BigInt::from(m)).to_i64().expect("residue fits")
}

/// Hilbert symbol `(u, v)_p` for nonzero rationals.
pub fn hilbert_symbol(u: &Rational, v: &Rational, p: i64) -> Result<i32> {
    check_prime(p)?;
    if u.is_zero() || v.is_zero() {
        return Err(Error::InvalidParameter("Hilbert symbol of zero".into()));
    }
    // u and u·den² share a square class
    let u = u.numer() * u.denom();
    let v = v.numer() * v.denom();
    let (alpha, u) = split(&u, p);
    let (beta, v) = split(&v, p);
    if p != 2 {
        let mut sign = 1;
        if (alpha * beta) % 2 == 1 && p % 4 == 3 {
            sign = -sign;
        }
        if beta % 2 == 1 {
            sign *= jacobi(residue(&u, p), p);
        }
        if alpha % 2 == 1 {
            sign *= jacobi(residue(&v, p), p);
        }
        return Ok(sign);
    }
    let (u8, v8) = (residue(&u, 8), residue(&v, 8));
    let eps = |x: i64| ((x - 1) / 2) % 2;
    let omega2 = |x: i64| ((x * x - 1) / 8) % 2;
    let e = eps(u8) * eps(v8) + alpha as i64 * omega2(v8) + beta as i64 * omega2(u8);
    Ok(if e % 2 == 0 { 1 } else { -1 })
}

/// `S_p(f) = (a,-1)(b,-1)(c,-1)(a,b)(b,c)(c,a)` over a rational diagonalization.
pub fn hasse_invariant(f: &TernaryForm, p: i64) -> Result<i32> {
    let d = diagonalize(f)?;
    hasse_of_diagonal(&d, p)
}

pub fn hasse_of_diagonal(d: &DiagonalForm, p: i64) -> Result<i32> {
    let m1 = Rational::from_integer(-1);
    let h = |x: &Rational, y: &Rational| hilbert_symbol(x, y, p);
    Ok(h(&d.a, &m1)? * h(&d.b, &m1)? * h(&d.c, &m1)? * h(&d.a, &d.b)? * h(&d.b, &d.c)? * h(&d.c, &d.a)?)
}

/// `S*_p(f)`, equal to `S_p(f)` at odd p and `-S_p(f)` at 2; `-1` exactly
/// when f is anisotropic at p.
pub fn s_star(f: &TernaryForm, p: i64) -> Result<i32> {
    let s = hasse_invariant(f, p)?;
    Ok(if p == 2 { -s } else { s })
}

pub fn is_anisotropic(f: &TernaryForm, p: i64) -> Result<bool> {
    Ok(s_star(f, p)? == -1)
}

/// Primes with `S*_p(f) = -1`, ascending. Only divisors of `2d` are tested.
pub fn anisotropic_primes(f: &TernaryForm) -> Result<Vec<i64>> {
    f.check_positive_definite()?;
    let d = f.discriminant()?;
    let mut out = Vec::new();
    for p in prime_factors(2 * d) {
        if s_star(f, p)? == -1 {
            out.push(p);
        }
    }
    Ok(out)
}

/// Genus label `G_{level,d,t}`, with t the product of anisotropic primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenusLabel {
    pub level: i64,
    pub discriminant: i64,
    pub anisotropic_primes: Vec<i64>,
}

/// Upper bound on each field accepted by the label parser.
pub const LABEL_LIMIT: i64 = 1_000_000_000_000;

impl GenusLabel {
    pub fn new(level: i64, discriminant: i64, mut primes: Vec<i64>) -> Result<Self> {
        if level < 1 || discriminant < 1 {
            return Err(Error::InvalidParameter(format!("label fields must be positive: {level}, {discriminant}")));
        }
        primes.sort_unstable();
        primes.dedup();
        if primes.iter().any(|&p| !is_prime(p)) {
            return Err(Error::InvalidParameter(format!("{primes:?} contains a non-prime")));
        }
        if primes.len() % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "anisotropic set {primes:?} must have odd cardinality"
            )));
        }
        Ok(GenusLabel { level, discriminant, anisotropic_primes: primes })
    }

    /// Product of the anisotropic primes, the label's third entry.
    pub fn anisotropic_product(&self) -> i64 {
        self.anisotropic_primes.iter().product()
    }

    /// Which of the four families of level-4N genera this label is.
    pub fn family(&self) -> Result<GenusFamily> {
        let unknown = || Error::UnknownGenus(self.to_string());
        let n = odd_squarefree_quarter(self.level)?;
        let t = self.anisotropic_product();
        let odd_count_divisor = |x: i64| n % x == 0 && omega(x) % 2 == 1;
        let even_count_divisor = |x: i64| n % x == 0 && omega(x) % 2 == 0;
        for k in [1i64, 4, 16] {
            let top = k * n * n;
            if top % self.discriminant != 0 {
                continue;
            }
            let n_r = top / self.discriminant;
            if n % n_r != 0 {
                continue;
            }
            return match k {
                1 if odd_count_divisor(t) => Ok(GenusFamily::Square { n_r, n_o: t }),
                16 if odd_count_divisor(t) => Ok(GenusFamily::SixteenSquare { n_r, n_o: t }),
                4 if t % 2 == 0 && even_count_divisor(t / 2) => {
                    Ok(GenusFamily::FourSquareEven { n_r, n_e: t / 2 })
                }
                4 if odd_count_divisor(t) => Ok(GenusFamily::FourSquareOdd { n_r, n_o: t }),
                _ => Err(unknown()),
            };
        }
        Err(unknown())
    }
}

impl fmt::Display for GenusLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G_{{{},{},{}}}", self.level, self.discriminant, self.anisotropic_product())
    }
}

fn parse_label_field(s: &str) -> Option<i64> {
    if s.is_empty() || s.len() > 13 || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok().filter(|&v| (1..=LABEL_LIMIT).contains(&v))
}

/// Parses `G_{level,d,t}`; t must be squarefree with an odd number of
/// prime factors. Fields above [`LABEL_LIMIT`] are rejected.
impl FromStr for GenusLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid genus label {s:?}"));
        let body = s.strip_prefix("G_{").and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
        let fields: Vec<&str> = body.split(',').collect();
        let [l, d, t] = fields.as_slice() else {
            return Err(bad());
        };
        let (l, d, t) = (
            parse_label_field(l).ok_or_else(bad)?,
            parse_label_field(d).ok_or_else(bad)?,
            parse_label_field(t).ok_or_else(bad)?,
        );
        if !is_squarefree(t) {
            return Err(bad());
        }
        GenusLabel::new(l, d, prime_factors(t)).map_err(|_| bad())
    }
}

impl Serialize for GenusLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GenusLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The four families of genera at level 4N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenusFamily {
    /// `G_{4N, N²/N_r, N_o}`
    Square { n_r: i64, n_o: i64 },
    /// `G_{4N, 4N²/N_r, N_o}`
    FourSquareOdd { n_r: i64, n_o: i64 },
    /// `G_{4N, 4N²/N_r, 2N_e}`
    FourSquareEven { n_r: i64, n_e: i64 },
    /// `G_{4N, 16N²/N_r, N_o}`
    SixteenSquare { n_r: i64, n_o: i64 },
}

impl GenusFamily {
    pub fn n_r(&self) -> i64 {
        match *self {
            GenusFamily::Square { n_r, .. }
            | GenusFamily::FourSquareOdd { n_r, .. }
            | GenusFamily::FourSquareEven { n_r, .. }
            | GenusFamily::SixteenSquare { n_r, .. } => n_r,
        }
    }

    /// Odd primes at which the genus is anisotropic.
    pub fn odd_anisotropic_part(&self) -> i64 {
        match *self {
            GenusFamily::Square { n_o, .. }
            | GenusFamily::FourSquareOdd { n_o, .. }
            | GenusFamily::SixteenSquare { n_o, .. } => n_o,
            GenusFamily::FourSquareEven { n_e, .. } => n_e,
        }
    }
}

/// N from a level 4N with N odd squarefree.
pub fn odd_squarefree_quarter(level: i64) -> Result<i64> {
    if level < 4 || level % 4 != 0 {
        return Err(Error::UnsupportedLevel(level));
    }
    let n = level / 4;
    if n % 2 == 0 || !is_squarefree(n) {
        return Err(Error::UnsupportedLevel(level));
    }
    Ok(n)
}

/// `(level, d, anisotropic primes)` for any positive definite form; no
/// claim that it determines the genus outside level 4N.
pub fn label_any_level(f: &TernaryForm) -> Result<GenusLabel> {
    let level = f.level()?;
    let d = f.discriminant()?;
    GenusLabel::new(level, d, anisotropic_primes(f)?)
}

/// Genus label of a primitive positive definite form of level 4N, N odd
/// squarefree.
pub fn genus_label(f: &TernaryForm) -> Result<GenusLabel> {
    f.check_positive_definite()?;
    if !f.is_primitive() {
        return Err(Error::InvalidParameter(format!("{f} is not primitive")));
    }
    odd_squarefree_quarter(f.level()?)?;
    label_any_level(f)
}

/// Every genus label at level 4N: `2^{2s+1}` of them for s ≥ 1 and the
/// single `G_{4,4,2}` for N = 1. Sorted.
pub fn genus_shapes(n: i64) -> Result<Vec<GenusLabel>> {
    let level = 4 * n;
    odd_squarefree_quarter(level)?;
    let divs = divisors(n);
    let mut out = Vec::new();
    for &n_r in &divs {
        for &x in &divs {
            let primes = prime_factors(x);
            if omega(x) % 2 == 1 {
                for k in [1, 4, 16] {
                    out.push(GenusLabel::new(level, k * n * n / n_r, primes.clone())?);
                }
            } else {
                let mut with_two = vec![2];
                with_two.extend(primes);
                out.push(GenusLabel::new(level, 4 * n * n / n_r, with_two)?);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Integer of the same p-adic valuation and unit square class as `q`.
fn p_adic_integer(q: &Rational, p: i64) -> i64 {
    let (vn, un) = split(q.numer(), p);
    let (vd, ud) = split(q.denom(), p);
    assert!(vn >= vd, "coefficient is not p-integral");
    let modulus = if p == 2 { 8 } else { p * p * p };
    let unit = residue(&un, modulus) as i128 * mod_inverse(residue(&ud, modulus) as i128, modulus as i128).unwrap();
    let unit = unit.rem_euclid(modulus as i128) as i64;
    p.pow(vn - vd) * unit
}

fn least_nonresidue(p: i64) -> i64 {
    (2..p).find(|&u| jacobi(u, p) == -1).expect("odd primes have non-residues")
}

/// Integral form equivalent over `Z_p` to the tabulated local shape of the
/// genus at `p`, for `p | 2N`.
///
/// At 2 the shapes are `-N_r x² - k yz` (k = 1, 2, 4 for the odd families)
/// and `N_r⁻¹x² + N_r⁻¹y² + N_r z²`; at primes of the anisotropic part
/// `u p N_r⁻¹x² - p N_r⁻¹y² - u N_r z²` with u a non-residue; elsewhere
/// `-N_r x² - q N_r⁻¹ yz`.
pub fn local_shape(label: &GenusLabel, p: i64) -> Result<TernaryForm> {
    check_prime(p)?;
    let family = label.family()?;
    let n = label.level / 4;
    if p != 2 && n % p != 0 {
        return Err(Error::PrimeDoesNotDivideLevel { p, level: label.level });
    }
    let n_r = family.n_r();
    let z = |q: Rational| p_adic_integer(&q, p);
    let inv_nr = Rational::new(1, n_r);
    if p == 2 {
        let k = match family {
            GenusFamily::Square { .. } => 1,
            GenusFamily::FourSquareOdd { .. } => 2,
            GenusFamily::SixteenSquare { .. } => 4,
            GenusFamily::FourSquareEven { .. } => {
                let a = z(inv_nr.clone());
                return Ok(TernaryForm::new(a, a, z(Rational::from_integer(n_r)), 0, 0, 0));
            }
        };
        return Ok(TernaryForm::new(z(Rational::from_integer(-n_r)), 0, 0, -k, 0, 0));
    }
    if family.odd_anisotropic_part() % p == 0 {
        let u = least_nonresidue(p);
        let pr = Rational::from_integer(p) * &inv_nr;
        Ok(TernaryForm::new(
            z(pr.clone() * u),
            z(-pr),
            z(Rational::from_integer(-u * n_r)),
            0,
            0,
            0,
        ))
    } else {
        let q = Rational::from_integer(-p) * &inv_nr;
        Ok(TernaryForm::new(z(Rational::from_integer(-n_r)), 0, 0, z(q), 0, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn diagonal_examples() {
        let d = diagonalize(&TernaryForm::new(1, 1, 3, 0, 0, -1)).unwrap();
        assert_eq!(d, DiagonalForm { a: q(1, 1), b: q(3, 4), c: q(3, 1) });
        let d = diagonalize(&TernaryForm::new(1, 1, 2, 1, 1, 1)).unwrap();
        assert_eq!(d, DiagonalForm { a: q(1, 1), b: q(3, 4), c: q(5, 3) });
    }

    #[test]
    fn diagonalizes_hyperbolic_plane() {
        let f = TernaryForm::new(0, 0, 1, 0, 0, 1);
        let (d, _) = diagonalize_with_basis(&f).unwrap();
        assert!(d.entries().iter().all(|x| !x.is_zero()));
        assert!(diagonalize(&TernaryForm::new(1, 0, 0, 0, 0, 0)).is_err());
    }

    #[test]
    fn hilbert_examples() {
        let one = q(1, 1);
        for p in [2, 3, 5, 7] {
            for v in [-7, -2, 3, 10] {
                assert_eq!(hilbert_symbol(&one, &q(v, 1), p).unwrap(), 1);
            }
        }
        assert_eq!(hilbert_symbol(&q(-1, 1), &q(-1, 1), 2).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(2, 1), &q(3, 1), 3).unwrap(), -1);
        assert!(hilbert_symbol(&q(0, 1), &one, 3).is_err());
        assert!(hilbert_symbol(&one, &one, 4).is_err());
    }

    #[test]
    fn hasse_examples() {
        let sq = TernaryForm::new(1, 1, 1, 0, 0, 0);
        assert_eq!(hasse_invariant(&sq, 2).unwrap(), 1);
        assert_eq!(s_star(&sq, 2).unwrap(), -1);
        assert_eq!(s_star(&sq, 3).unwrap(), 1);
        assert_eq!(s_star(&TernaryForm::new(1, 1, 3, 0, 0, -1), 3).unwrap(), -1);
    }

    #[test]
    fn labels() {
        let l = genus_label(&TernaryForm::new(1, 1, 1, 0, 0, 0)).unwrap();
        assert_eq!(l.to_string(), "G_{4,4,2}");
        let l = genus_label(&TernaryForm::new(2, 18, 35, 0, 0, -2)).unwrap();
        assert_eq!(l.to_string(), "G_{140,4900,70}");
        assert_eq!(l.anisotropic_primes, vec![2, 5, 7]);
        let l = genus_label(&TernaryForm::new(1, 9, 35, 0, 0, -1)).unwrap();
        assert_eq!(l.to_string(), "G_{140,1225,7}");
        assert!(matches!(
            genus_label(&TernaryForm::new(1, 1, 2, 0, 0, 0)),
            Err(Error::UnsupportedLevel(8))
        ));
    }

    #[test]
    fn label_roundtrip() {
        let l: GenusLabel = "G_{60,60,30}".parse().unwrap();
        assert_eq!(l.anisotropic_primes, vec![2, 3, 5]);
        assert_eq!(l.to_string(), "G_{60,60,30}");
        for bad in ["G_{60,60,6}", "G_{60,60,12}", "G_{60,60}", "G{60,60,3}", "G_{+60,60,3}", "G_{60,60,3} "] {
            assert!(bad.parse::<GenusLabel>().is_err(), "{bad}");
        }
    }

    #[test]
    fn families() {
        let fam = |s: &str| s.parse::<GenusLabel>().unwrap().family().unwrap();
        assert_eq!(fam("G_{12,9,3}"), GenusFamily::Square { n_r: 1, n_o: 3 });
        assert_eq!(fam("G_{12,144,3}"), GenusFamily::SixteenSquare { n_r: 1, n_o: 3 });
        assert_eq!(fam("G_{12,12,2}"), GenusFamily::FourSquareEven { n_r: 3, n_e: 1 });
        assert_eq!(fam("G_{12,12,3}"), GenusFamily::FourSquareOdd { n_r: 3, n_o: 3 });
        assert!("G_{12,9,2}".parse::<GenusLabel>().unwrap().family().is_err());
    }

    #[test]
    fn shape_counts() {
        assert_eq!(genus_shapes(1).unwrap().len(), 1);
        assert_eq!(genus_shapes(3).unwrap().len(), 8);
        assert_eq!(genus_shapes(35).unwrap().len(), 32);
        assert_eq!(genus_shapes(105).unwrap().len(), 128);
        assert!(genus_shapes(9).is_err());
    }
}
