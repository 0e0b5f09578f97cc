#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use tqf_core::arith::{isqrt, valuation};
use tqf_core::forms::{self, matrix, Mat3};
use tqf_core::local;
use tqf_core::{Rational, TernaryForm};

/// Forms used by the oracle suites: diagonal, skewed, non-reduced and
/// single-class genus representatives.
pub const SAMPLE_FORMS: [TernaryForm; 20] = [
    TernaryForm::new(1, 1, 1, 0, 0, 0),
    TernaryForm::new(1, 1, 3, 0, 0, -1),
    TernaryForm::new(1, 1, 1, 0, 0, -1),
    TernaryForm::new(1, 1, 2, 1, 1, 1),
    TernaryForm::new(1, 2, 5, 1, 1, 1),
    TernaryForm::new(1, 2, 2, -1, 0, -1),
    TernaryForm::new(1, 1, 2, 0, -1, 0),
    TernaryForm::new(2, 2, 5, 0, 0, -2),
    TernaryForm::new(3, 4, 4, -4, 0, 0),
    TernaryForm::new(1, 3, 3, 0, 0, 0),
    TernaryForm::new(2, 3, 7, 0, -2, 0),
    TernaryForm::new(1, 9, 35, 0, 0, -1),
    TernaryForm::new(2, 18, 35, 0, 0, -2),
    TernaryForm::new(3, 1, 1, -1, 0, 0),
    TernaryForm::new(5, 3, 2, 1, 1, 2),
    TernaryForm::new(7, 5, 3, -2, 3, 4),
    TernaryForm::new(10, 10, 10, 7, -3, 5),
    TernaryForm::new(4, 9, 13, 5, 1, -3),
    TernaryForm::new(1, 5, 17, 3, 0, 1),
    TernaryForm::new(6, 6, 35, 0, 0, -2),
];

/// `R_f(n)` for `n ≤ n_max` by scanning the box
/// `|x_i| ≤ ⌈sqrt(2n (M⁻¹)_ii)⌉` of the largest n.
pub fn naive_counts(f: &TernaryForm, n_max: usize) -> Vec<u64> {
    let d = f.discriminant_i128();
    let cof = f.cofactors();
    let bound = |i: usize| (isqrt(n_max as i128 * cof[i] / d) + 1) as i64;
    let (bx, by, bz) = (bound(0), bound(1), bound(2));
    let mut counts = vec![0u64; n_max + 1];
    for x in -bx..=bx {
        for y in -by..=by {
            for z in -bz..=bz {
                let v = f.eval([x, y, z]);
                if v <= n_max as i128 {
                    counts[v as usize] += 1;
                }
            }
        }
    }
    counts
}

/// Whether `ux² + vy² = z²` has a solution mod `p^k` with `x, y, z` not
/// all divisible by p, where `k = v_p(4uv) + 3`.
pub fn hilbert_oracle(u: i64, v: i64, p: i64) -> i32 {
    let k = valuation(4 * u as i128 * v as i128, p) + 3;
    let m = p.pow(k);
    let mut square = vec![false; m as usize];
    for z in 0..m {
        square[(z * z % m) as usize] = true;
    }
    let values = |w: i64| -> (BTreeSet<i64>, BTreeSet<i64>) {
        let mut unit = BTreeSet::new();
        let mut all = BTreeSet::new();
        for x in 0..m {
            let val = (w * x % m * x).rem_euclid(m);
            if x % p != 0 {
                unit.insert(val);
            }
            all.insert(val);
        }
        (unit, all)
    };
    let (u_unit, u_all) = values(u);
    let (v_unit, v_all) = values(v);
    let hit = |xs: &BTreeSet<i64>, ys: &BTreeSet<i64>| xs.iter().any(|a| ys.iter().any(|b| square[((a + b) % m) as usize]));
    if hit(&u_unit, &v_all) || hit(&u_all, &v_unit) {
        1
    } else {
        -1
    }
}

pub const HILBERT_GRID: [i64; 12] = [1, -1, 2, -2, 3, -3, 5, -5, 7, -7, 10, -10];
pub const HILBERT_PRIMES: [i64; 5] = [2, 3, 5, 7, 11];

/// Every `(u, v, p)` of the grid where the symbol and the oracle differ.
pub fn hilbert_grid_mismatches() -> Vec<(i64, i64, i64, i32, i32)> {
    let mut out = Vec::new();
    for &p in &HILBERT_PRIMES {
        for &u in &HILBERT_GRID {
            for &v in &HILBERT_GRID {
                let got = local::hilbert_symbol(&Rational::from_integer(u), &Rational::from_integer(v), p).unwrap();
                let want = hilbert_oracle(u, v, p);
                if got != want {
                    out.push((u, v, p, got, want));
                }
            }
        }
    }
    out
}

/// Closure under products and inverses, and every element an isometry.
pub fn is_automorphism_group(f: &TernaryForm) -> bool {
    let group: BTreeSet<Mat3> = forms::automorphisms(f).unwrap().into_iter().map(|w| w.matrix).collect();
    group.contains(&matrix::IDENTITY)
        && group.iter().all(|u| f.transform(u).unwrap() == *f)
        && group.iter().all(|u| matrix::unimodular_inverse(u).is_some_and(|v| group.contains(&v)))
        && group.iter().all(|u| group.iter().all(|v| group.contains(&matrix::mul(u, v))))
}

pub fn elementary() -> impl Strategy<Value = Mat3> {
    (0usize..3, 1usize..3, prop::bool::ANY, 0u8..4).prop_map(|(i, shift, neg, kind)| {
        let j = (i + shift) % 3;
        let mut m = matrix::IDENTITY;
        match kind {
            0 | 1 => m[i][j] = if neg { -1 } else { 1 },
            2 => {
                m[i][i] = 0;
                m[j][j] = 0;
                m[i][j] = 1;
                m[j][i] = 1;
            }
            _ => m[i][i] = -1,
        }
        m
    })
}

/// Products of up to `len` elementary matrices.
pub fn unimodular(len: usize) -> impl Strategy<Value = Mat3> {
    prop::collection::vec(elementary(), 1..=len)
        .prop_map(|ms| ms.iter().fold(matrix::IDENTITY, |acc, m| matrix::mul(&acc, m)))
}

pub fn sample_form() -> impl Strategy<Value = TernaryForm> {
    prop::sample::select(SAMPLE_FORMS.to_vec())
}

/// Random positive definite primitive forms with small coefficients.
pub fn positive_form() -> impl Strategy<Value = TernaryForm> {
    (1i64..30, 1i64..30, 1i64..30, -20i64..=20, -20i64..=20, -20i64..=20)
        .prop_map(|(a, b, c, r, s, t)| TernaryForm::new(a, b, c, r, s, t))
        .prop_filter("positive definite and primitive", |f| f.is_positive_definite() && f.is_primitive())
}

/// Odd squarefree N up to `max`.
pub fn odd_squarefree(max: i64) -> Vec<i64> {
    (1..=max).step_by(2).filter(|&n| tqf_core::arith::is_squarefree(n)).collect()
}
