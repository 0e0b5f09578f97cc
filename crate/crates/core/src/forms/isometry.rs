//! Backtracking isometry search between reduced forms.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::matrix::{self, Mat3};
use super::{for_each_vector, greedy_reduce, TernaryForm};
use crate::error::Result;

/// A unimodular `U` with `Uᵀ M_g U = M_f` for the pair it was produced for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsometryWitness {
    pub matrix: Mat3,
}

impl IsometryWitness {
    pub fn det(&self) -> i64 {
        matrix::det(&self.matrix)
    }

    /// True when `Uᵀ M_g U = M_f`.
    pub fn maps(&self, g: &TernaryForm, f: &TernaryForm) -> bool {
        g.transform(&self.matrix).map(|h| h == *f).unwrap_or(false)
    }
}

/// All `W` with `Wᵀ M_space W = M_pattern`, or only the first when
/// `first_only` is set.
///
/// Images of the pattern's basis vectors are drawn from short vectors of
/// `space` bucketed by norm.
pub fn isometries(pattern: &TernaryForm, space: &TernaryForm, first_only: bool) -> Result<Vec<Mat3>> {
    pattern.check_positive_definite()?;
    space.check_positive_definite()?;
    if pattern.discriminant_i128() != space.discriminant_i128() {
        return Ok(Vec::new());
    }
    let bound = pattern.a.max(pattern.b).max(pattern.c);
    let mut buckets: HashMap<i64, Vec<[i64; 3]>> = HashMap::new();
    for_each_vector(space, bound, |v, val| {
        if val > 0 {
            buckets.entry(val).or_default().push(v);
        }
    })?;
    for list in buckets.values_mut() {
        list.sort();
    }
    let empty = Vec::new();
    let first = buckets.get(&pattern.a).unwrap_or(&empty);
    let second = buckets.get(&pattern.b).unwrap_or(&empty);
    let third = buckets.get(&pattern.c).unwrap_or(&empty);

    let mut out = Vec::new();
    for &w1 in first {
        for &w2 in second {
            if space.bilinear(w1, w2) != pattern.t as i128 {
                continue;
            }
            for &w3 in third {
                if space.bilinear(w1, w3) != pattern.s as i128 || space.bilinear(w2, w3) != pattern.r as i128 {
                    continue;
                }
                let w = matrix::from_columns([w1, w2, w3]);
                debug_assert!(matrix::det(&w).abs() == 1);
                out.push(w);
                if first_only {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// Witness `U` with `Uᵀ M_g U = M_f` when `f ~ g`.
pub fn is_equivalent(f: &TernaryForm, g: &TernaryForm) -> Result<Option<IsometryWitness>> {
    f.check_positive_definite()?;
    g.check_positive_definite()?;
    if f.discriminant_i128() != g.discriminant_i128() {
        return Ok(None);
    }
    if f == g {
        return Ok(Some(IsometryWitness { matrix: matrix::IDENTITY }));
    }
    let (rf, uf) = greedy_reduce(f)?;
    let (rg, ug) = greedy_reduce(g)?;
    let found = isometries(&rf, &rg, true)?;
    let Some(w) = found.first() else {
        return Ok(None);
    };
    let uf_inv = matrix::unimodular_inverse(&uf).expect("reduction transform is unimodular");
    let u = matrix::mul(&matrix::mul(&ug, w), &uf_inv);
    Ok(Some(IsometryWitness { matrix: u }))
}

/// The full automorphism group `{U : Uᵀ M_f U = M_f}`, sorted.
pub fn automorphisms(f: &TernaryForm) -> Result<Vec<IsometryWitness>> {
    let (g, u) = greedy_reduce(f)?;
    let u_inv = matrix::unimodular_inverse(&u).expect("reduction transform is unimodular");
    let mut group: Vec<IsometryWitness> = isometries(&g, &g, false)?
        .iter()
        .map(|w| IsometryWitness { matrix: matrix::mul(&matrix::mul(&u, w), &u_inv) })
        .collect();
    group.sort();
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aut_orders() {
        assert_eq!(automorphisms(&TernaryForm::new(1, 1, 1, 0, 0, 0)).unwrap().len(), 48);
        assert_eq!(automorphisms(&TernaryForm::new(1, 1, 3, 0, 0, -1)).unwrap().len(), 24);
    }

    #[test]
    fn equivalence_examples() {
        let f = TernaryForm::new(1, 1, 3, 0, 0, -1);
        let w = is_equivalent(&f, &f).unwrap().unwrap();
        assert!(w.maps(&f, &f));
        let g = TernaryForm::new(3, 1, 1, -1, 0, 0);
        let w = is_equivalent(&f, &g).unwrap().unwrap();
        assert!(w.maps(&g, &f));
        assert!(is_equivalent(&f, &TernaryForm::new(1, 1, 1, 0, 0, -1)).unwrap().is_none());
    }
}
