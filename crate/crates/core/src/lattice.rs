//! Integer lattices of small rank: Hermite bases and exact short-vector
//! enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::isqrt;
use crate::error::{Error, Result};
use crate::rational::Rational;

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Upper-triangular Hermite basis, built by inserting generators one at
/// a time. Row `k` has its pivot in column `k`.
#[derive(Debug, Clone)]
pub struct Hermite {
    rows: Vec<Option<Vec<i128>>>,
}

impl Hermite {
    pub fn new(dim: usize) -> Self {
        Hermite { rows: vec![None; dim] }
    }

    pub fn insert(&mut self, v: &[i128]) {
        let dim = self.rows.len();
        let mut v = v.to_vec();
        for k in 0..dim {
            if v[k] == 0 {
                continue;
            }
            match self.rows[k].take() {
                None => {
                    if v[k] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.rows[k] = Some(v);
                    self.normalize();
                    return;
                }
                Some(b) => {
                    let (g, x, y) = ext_gcd(b[k], v[k]);
                    let (bk, vk) = (b[k] / g, v[k] / g);
                    let combined: Vec<i128> = (0..dim).map(|i| x * b[i] + y * v[i]).collect();
                    let rest: Vec<i128> = (0..dim).map(|i| bk * v[i] - vk * b[i]).collect();
                    self.rows[k] = Some(combined);
                    v = rest;
                }
            }
        }
        self.normalize();
    }

    /// Reduces entries above each pivot into `[0, pivot)`.
    fn normalize(&mut self) {
        let dim = self.rows.len();
        for j in (0..dim).rev() {
            let Some(pj) = self.rows[j].clone() else { continue };
            for k in 0..j {
                if let Some(row) = self.rows[k].as_mut() {
                    let q = row[j].div_euclid(pj[j]);
                    if q != 0 {
                        for i in 0..dim {
                            row[i] -= q * pj[i];
                        }
                    }
                }
            }
        }
    }

    /// Basis rows, or an error when the generators do not span full rank.
    pub fn basis(&self) -> Result<Vec<Vec<i128>>> {
        self.rows
            .iter()
            .map(|r| r.clone().ok_or_else(|| Error::InvalidParameter("lattice is not of full rank".into())))
            .collect()
    }
}

/// Exact `x ↦ ½ xᵀGx` enumeration for a positive definite even Gram `G`.
pub struct ShortVectors {
    gram: Vec<Vec<i64>>,
    d: Vec<Rational>,
    mu: Vec<Vec<Rational>>,
}

impl ShortVectors {
    pub fn new(gram: &[Vec<i64>]) -> Result<Self> {
        let k = gram.len();
        if gram.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidParameter("Gram matrix is not square".into()));
        }
        for i in 0..k {
            if gram[i][i] % 2 != 0 {
                return Err(Error::InvalidParameter("Gram diagonal must be even".into()));
            }
            for j in 0..k {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidParameter("Gram matrix is not symmetric".into()));
                }
            }
        }
        let mut q: Vec<Vec<Rational>> =
            gram.iter().map(|row| row.iter().map(|&x| Rational::new(x, 2)).collect()).collect();
        for i in 0..k {
            if q[i][i].is_negative() || q[i][i].is_zero() {
                return Err(Error::NotPositiveDefinite(format!("{gram:?}")));
            }
            for j in i + 1..k {
                q[j][i] = q[i][j].clone();
                q[i][j] = q[i][j].clone() / &q[i][i];
            }
            for l in i + 1..k {
                for m in l..k {
                    let sub = q[l][i].clone() * &q[i][m];
                    q[l][m] = q[l][m].clone() - sub;
                }
            }
        }
        let d = (0..k).map(|i| q[i][i].clone()).collect();
        let mu = (0..k).map(|i| (0..k).map(|j| if j > i { q[i][j].clone() } else { Rational::zero() }).collect()).collect();
        Ok(ShortVectors { gram: gram.to_vec(), d, mu })
    }

    pub fn value(&self, x: &[i64]) -> i128 {
        let k = x.len();
        let mut sum = 0i128;
        for i in 0..k {
            for j in 0..k {
                sum += self.gram[i][j] as i128 * x[i] as i128 * x[j] as i128;
            }
        }
        sum / 2
    }

    /// Calls `visit(x, value)` for every `x` with value at most `bound`.
    pub fn for_each<F: FnMut(&[i64], i64)>(&self, bound: i64, mut visit: F) {
        if bound < 0 {
            return;
        }
        let k = self.d.len();
        let mut x = vec![0i64; k];
        self.descend(k, Rational::from_integer(bound), &mut x, &mut visit);
    }

    fn descend<F: FnMut(&[i64], i64)>(&self, level: usize, remaining: Rational, x: &mut Vec<i64>, visit: &mut F) {
        if level == 0 {
            let v = self.value(x);
            visit(x, v as i64);
            return;
        }
        let i = level - 1;
        let mut center = Rational::zero();
        for j in level..x.len() {
            center = center - self.mu[i][j].clone() * x[j];
        }
        // (x_i - center)² <= remaining / d_i
        let t = remaining.clone() / &self.d[i];
        let (lo, hi) = integer_window(&center, &t);
        for xi in lo..=hi {
            let diff = Rational::from_integer(xi) - &center;
            let used = self.d[i].clone() * &(&diff * &diff);
            let rest = remaining.clone() - used;
            if rest.is_negative() {
                continue;
            }
            x[i] = xi;
            self.descend(i, rest, x, visit);
        }
        x[i] = 0;
    }
}

/// Integers x with `(x - c)² <= t`, as an inclusive range.
fn integer_window(c: &Rational, t: &Rational) -> (i64, i64) {
    let (cn, cd) = (c.numer().clone(), c.denom().clone());
    // (x·cd - cn)² <= t·cd²
    let cap: BigInt = (t.numer() * &cd * &cd).div_floor(t.denom());
    let cap = cap.to_i128().expect("enumeration bound fits in i128");
    let s = BigInt::from(isqrt(cap.max(0)));
    let lo = (&cn - &s).div_ceil(&cd);
    let hi = (&cn + &s).div_floor(&cd);
    if lo > hi || t.is_negative() {
        return (1, 0);
    }
    (lo.to_i64().expect("coordinate fits"), hi.to_i64().expect("coordinate fits"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_of_index_two_sublattice() {
        let mut h = Hermite::new(3);
        for v in [[4, 0, 0], [0, 4, 0], [0, 0, 4], [1, 1, 0], [2, 0, 0], [0, 0, 2]] {
            h.insert(&v);
        }
        let b = h.basis().unwrap();
        assert_eq!(b, vec![vec![1, 1, 0], vec![0, 2, 0], vec![0, 0, 2]]);
    }

    #[test]
    fn hermite_reports_rank_deficiency() {
        let mut h = Hermite::new(3);
        h.insert(&[1, 2, 3]);
        h.insert(&[2, 4, 6]);
        assert!(h.basis().is_err());
    }

    #[test]
    fn four_squares() {
        let g: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| if i == j { 2 } else { 0 }).collect()).collect();
        let sv = ShortVectors::new(&g).unwrap();
        let mut counts = [0u32; 4];
        sv.for_each(3, |_, v| counts[v as usize] += 1);
        assert_eq!(counts, [1, 8, 24, 32]);
    }

    #[test]
    fn skewed_binary() {
        // x² + xy + y²
        let g = vec![vec![2, 1], vec![1, 2]];
        let sv = ShortVectors::new(&g).unwrap();
        let mut counts = [0u32; 4];
        sv.for_each(3, |_, v| counts[v as usize] += 1);
        assert_eq!(counts, [1, 6, 0, 6]);
    }
}
