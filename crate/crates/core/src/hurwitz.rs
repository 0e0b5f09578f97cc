//! Hurwitz class numbers and their level-modified variants.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, gcd, is_squarefree, kronecker, omega, prime_factors};
use crate::error::{Error, Result};
use crate::rational::Rational;

fn memo() -> &'static RwLock<HashMap<u64, Rational>> {
    static MEMO: OnceLock<RwLock<HashMap<u64, Rational>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Weighted count of reduced positive binary forms of discriminant `-d`,
/// with `H(0) = -1/12`.
pub fn hurwitz_h(d: u64) -> Rational {
    if d == 0 {
        return Rational::new(-1, 12);
    }
    if matches!(d % 4, 1 | 2) {
        return Rational::zero();
    }
    if let Some(v) = memo().read().expect("memo poisoned").get(&d) {
        return v.clone();
    }
    let value = count_reduced_forms(d);
    memo().write().expect("memo poisoned").entry(d).or_insert(value).clone()
}

/// Sum of weights in sixths: 6 per form, 3 for a(x²+y²), 2 for a(x²+xy+y²).
fn count_reduced_forms(d: u64) -> Rational {
    let d = d as i64;
    let mut sixths = 0i64;
    let mut a = 1i64;
    while 3 * a * a <= d {
        for b in (-a + 1)..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b + d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            sixths += if b == 0 && a == c {
                3
            } else if b == a && a == c {
                2
            } else {
                6
            };
        }
        a += 1;
    }
    Rational::new(sixths, 6)
}

/// Parameters of a modified class number `H^(N1,N2)(D)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModifiedHurwitzKey {
    pub n1: i64,
    pub n2: i64,
    pub d: u64,
}

impl ModifiedHurwitzKey {
    pub fn new(n1: i64, n2: i64, d: u64) -> Result<Self> {
        if n1 < 1 || n2 < 1 || !is_squarefree(n1) || !is_squarefree(n2) {
            return Err(Error::InvalidParameter(format!("N1={n1}, N2={n2} must be positive squarefree")));
        }
        if gcd(n1, n2) != 1 {
            return Err(Error::InvalidParameter(format!("N1={n1}, N2={n2} are not coprime")));
        }
        Ok(ModifiedHurwitzKey { n1, n2, d })
    }

    pub fn value(&self) -> Rational {
        modified_h_unchecked(self.n1, self.n2, self.d)
    }
}

/// Largest `f` built from `primes` with `f² | d` and `d/f² ≡ 0, 3 (mod 4)`.
pub fn conductor_part(primes: &[i64], d: u64) -> u64 {
    fn walk(primes: &[i64], d: u64, f: u64, best: &mut u64) {
        match primes.split_first() {
            None => {
                let q = d / (f * f);
                if matches!(q % 4, 0 | 3) && f > *best {
                    *best = f;
                }
            }
            Some((&p, rest)) => {
                let p = p as u64;
                let mut g = f;
                while d % (g * g) == 0 {
                    walk(rest, d, g, best);
                    g *= p;
                }
            }
        }
    }
    let mut best = 1;
    walk(primes, d, 1, &mut best);
    best
}

/// `H^(N1,N2)(D)`.
pub fn modified_h(n1: i64, n2: i64, d: u64) -> Result<Rational> {
    ModifiedHurwitzKey::new(n1, n2, d).map(|k| k.value())
}

fn modified_h_unchecked(n1: i64, n2: i64, d: u64) -> Rational {
    if d == 0 {
        let mut v = Rational::new(-1, 12);
        for p in prime_factors(n1) {
            v = v * (1 - p);
        }
        for p in prime_factors(n2) {
            v = v * (1 + p);
        }
        return v;
    }
    if matches!(d % 4, 1 | 2) {
        return Rational::zero();
    }
    let primes = prime_factors(n1 * n2);
    let f = conductor_part(&primes, d);
    let core = d / (f * f);
    let disc = -(core as i64);
    let mut v = hurwitz_h(core);
    for p in prime_factors(n1) {
        v = v * (1 - kronecker(disc, p) as i64);
        if v.is_zero() {
            return v;
        }
    }
    for p in prime_factors(n2) {
        let mut fp = 1i64;
        while f % ((fp * p) as u64) == 0 {
            fp *= p;
        }
        let chi = kronecker(disc, p) as i64;
        let num = 2 * p * fp - p - 1 - chi * (2 * fp - p - 1);
        v = v * Rational::new(num, p - 1);
    }
    v
}

/// Number of distinct prime factors, written `e(n)`.
fn e(n: i64) -> i32 {
    omega(n) as i32
}

/// Type number `T_{N,F}` of Eichler orders of level F in the definite
/// algebra ramified at the primes of N.
pub fn type_number(n: i64, f: i64) -> Result<u64> {
    if n < 1 || f < 1 || !is_squarefree(n) || !is_squarefree(f) || gcd(n, f) != 1 {
        return Err(Error::InvalidParameter(format!("(N,F)=({n},{f}) must be coprime squarefree")));
    }
    if omega(n) % 2 == 0 {
        return Err(Error::InvalidParameter(format!("N={n} needs an odd number of prime factors")));
    }
    let nf = n * f;
    let mut total = Rational::zero();
    for m in divisors(nf) {
        let kmax = crate::arith::isqrt((4 * m) as i128) as i64 / m;
        for k in -kmax..=kmax {
            let r = k * m;
            total += modified_h_unchecked(n, f, (4 * m - r * r) as u64);
        }
    }
    let value = total * Rational::pow2(-e(nf) - 1);
    match value.to_i64() {
        Some(v) if v > 0 => Ok(v as u64),
        _ => Err(Error::InvalidParameter(format!("type number for ({n},{f}) evaluated to {value}"))),
    }
}

fn check_odd_squarefree(n: i64) -> Result<()> {
    if n < 1 || n % 2 == 0 || !is_squarefree(n) {
        return Err(Error::InvalidParameter(format!("N={n} must be odd squarefree")));
    }
    Ok(())
}

/// `|C(4N)|`, the number of classes of primitive positive definite forms
/// of level 4N, from the closed formula.
pub fn class_number_4n(n: i64) -> Result<u64> {
    check_odd_squarefree(n)?;
    let s = omega(n) as i32;
    let k = |a: i64, b: i64| kronecker(a, b) as i64;
    let mut inner = Rational::new(n, 6) + Rational::new(5, 4)
        - Rational::new(k(-4, n), 4)
        - Rational::new(k(-3, n), 6)
        + Rational::new(1 - k(n, 3) * k(n, 3), 2);
    for d in divisors(n).into_iter().filter(|&d| d != 1) {
        let term = hurwitz_h(4 * d as u64) * 3 + hurwitz_h(8 * d as u64);
        inner += term * Rational::new(1, 4);
    }
    let value = inner * Rational::pow2(s);
    value
        .to_i64()
        .map(|v| v as u64)
        .ok_or_else(|| Error::InvalidParameter(format!("class number formula gave {value}")))
}

/// `|C(4N)|` assembled from type numbers:
/// `2^s (2 Σ T_{No,N/No} + Σ T_{No,2N/No} + Σ T_{2Ne,N/Ne})`.
pub fn class_number_from_type_numbers(n: i64) -> Result<u64> {
    check_odd_squarefree(n)?;
    let s = omega(n);
    let mut sum = 0u64;
    for d in divisors(n) {
        if omega(d) % 2 == 1 {
            sum += 2 * type_number(d, n / d)?;
            sum += type_number(d, 2 * n / d)?;
        } else {
            sum += type_number(2 * d, n / d)?;
        }
    }
    Ok(sum << s)
}
