//! Greedy reduction and the canonical class representative.

use super::matrix::{self, Mat3, IDENTITY};
use super::{for_each_vector, TernaryForm};
use crate::error::Result;

/// Pairwise size reduction until no basis vector can be shortened by a
/// neighbour. Returns `(g, U)` with `g = f.transform(U)` and `a <= b <= c`.
pub fn greedy_reduce(f: &TernaryForm) -> Result<(TernaryForm, Mat3)> {
    f.check_positive_definite()?;
    let mut u = IDENTITY;
    let mut cur = *f;
    loop {
        let norms = [cur.a, cur.b, cur.c];
        let mut order = [0usize, 1, 2];
        order.sort_by_key(|&i| norms[i]);
        if order != [0, 1, 2] {
            let mut p = [[0i64; 3]; 3];
            for (j, &i) in order.iter().enumerate() {
                p[i][j] = 1;
            }
            u = matrix::mul(&u, &p);
            cur = f.transform(&u)?;
            continue;
        }

        let mut step: Option<Mat3> = None;
        'pairs: for j in 1..3 {
            for i in 0..j {
                let norm_i = 2 * norms[i] as i128;
                let b = cur.gram()[i][j] as i128;
                // nearest integer to b / norm_i
                let q = num_integer::Integer::div_floor(&(2 * b + norm_i), &(2 * norm_i));
                if q != 0 {
                    let new_norm = norms[j] as i128 - q * b + q * q * norms[i] as i128;
                    if new_norm < norms[j] as i128 {
                        let mut e = IDENTITY;
                        e[i][j] = -(q as i64);
                        step = Some(e);
                        break 'pairs;
                    }
                }
            }
        }
        if step.is_none() {
            'signs: for s1 in [-1i64, 1] {
                for s2 in [-1i64, 1] {
                    let v = [s1, s2, 1];
                    if cur.eval(v) < cur.c as i128 {
                        let mut e = IDENTITY;
                        e[0][2] = s1;
                        e[1][2] = s2;
                        step = Some(e);
                        break 'signs;
                    }
                }
            }
        }
        match step {
            Some(e) => {
                u = matrix::mul(&u, &e);
                cur = f.transform(&u)?;
            }
            None => return Ok((cur, u)),
        }
    }
}

/// Canonical representative of the class of `f` with the transform that
/// produces it.
///
/// Among all bases whose vectors realize the successive minima and whose
/// off-diagonal coefficients are all `>= 0` or all `<= 0`, the one with
/// the lexicographically smallest sextuple wins.
pub fn canonical(f: &TernaryForm) -> Result<(TernaryForm, Mat3)> {
    let (g, u0) = greedy_reduce(f)?;
    let bound = g.a.max(g.b).max(g.c);
    let mut vecs: Vec<([i64; 3], i64)> = Vec::new();
    for_each_vector(&g, bound, |v, val| {
        if val > 0 {
            vecs.push((v, val));
        }
    })?;
    vecs.sort();
    vecs.sort_by_key(|&(_, val)| val);

    let mut minima = Vec::with_capacity(3);
    let mut chosen: Vec<[i64; 3]> = Vec::with_capacity(3);
    for &(v, val) in &vecs {
        let independent = match chosen.len() {
            0 => true,
            1 => matrix::cross(chosen[0], v) != [0, 0, 0],
            _ => matrix::det_columns(chosen[0], chosen[1], v) != 0,
        };
        if independent {
            chosen.push(v);
            minima.push(val);
            if chosen.len() == 3 {
                break;
            }
        }
    }
    debug_assert_eq!(minima.len(), 3);

    let with_norm = |n: i64| -> Vec<[i64; 3]> {
        vecs.iter().filter(|&&(_, val)| val == n).map(|&(v, _)| v).collect()
    };
    let (s1, s2, s3) = (with_norm(minima[0]), with_norm(minima[1]), with_norm(minima[2]));

    let mut best: Option<(TernaryForm, Mat3)> = None;
    for &u1 in &s1 {
        for &u2 in &s2 {
            let t = g.bilinear(u1, u2);
            if matrix::cross(u1, u2) == [0, 0, 0] {
                continue;
            }
            for &u3 in &s3 {
                let det = matrix::det_columns(u1, u2, u3);
                if det != 1 && det != -1 {
                    continue;
                }
                let r = g.bilinear(u2, u3);
                let s = g.bilinear(u1, u3);
                let all_nonneg = r >= 0 && s >= 0 && t >= 0;
                let all_nonpos = r <= 0 && s <= 0 && t <= 0;
                if !(all_nonneg || all_nonpos) {
                    continue;
                }
                let cand = TernaryForm::new(minima[0], minima[1], minima[2], r as i64, s as i64, t as i64);
                if best.as_ref().is_none_or(|(b, _)| cand < *b) {
                    let w = matrix::from_columns([u1, u2, u3]);
                    best = Some((cand, matrix::mul(&u0, &w)));
                }
            }
        }
    }
    let (form, u) = best.expect("successive minima are realized by a basis in rank 3");
    debug_assert_eq!(f.transform(&u)?, form);
    Ok((form, u))
}

/// Canonical representative: `reduce(f) == reduce(g)` iff `f ~ g`.
pub fn reduce(f: &TernaryForm) -> Result<TernaryForm> {
    canonical(f).map(|(g, _)| g)
}
