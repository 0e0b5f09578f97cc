mod common;

use std::collections::BTreeSet;

use common::{sample_form, unimodular};
use proptest::prelude::*;
use tqf_core::arith::{prime_factors, valuation};
use tqf_core::genera::InventoryStore;
use tqf_core::local::{self, GenusLabel};
use tqf_core::{Error, Rational, TernaryForm};

#[test]
fn hilbert_symbol_matches_solvability_oracle() {
    assert_eq!(common::hilbert_grid_mismatches(), vec![]);
}

#[test]
fn hilbert_symbol_is_symmetric_and_multiplicative() {
    let q = Rational::from_integer;
    for &p in &common::HILBERT_PRIMES {
        for &u in &common::HILBERT_GRID {
            for &v in &common::HILBERT_GRID {
                let uv = local::hilbert_symbol(&q(u), &q(v), p).unwrap();
                assert_eq!(uv, local::hilbert_symbol(&q(v), &q(u), p).unwrap());
                for &w in &common::HILBERT_GRID {
                    let lhs = local::hilbert_symbol(&q(u), &q(v * w), p).unwrap();
                    assert_eq!(lhs, uv * local::hilbert_symbol(&q(u), &q(w), p).unwrap(), "({u},{v}{w})_{p}");
                }
            }
        }
    }
    assert!(local::hilbert_symbol(&Rational::zero(), &q(3), 3).is_err());
}

fn primes_of(x: &Rational) -> Vec<i64> {
    let mut out = Vec::new();
    for part in [x.numer(), x.denom()] {
        let v: i64 = part.try_into().unwrap_or(1);
        out.extend(prime_factors(v.abs()));
    }
    out
}

/// `∏_p S_p(f) = 1` over every prime where a diagonalization or `2d` is
/// not a unit.
fn reciprocity_holds(f: &TernaryForm) -> bool {
    let diag = local::diagonalize(f).unwrap();
    let mut primes: BTreeSet<i64> = prime_factors(2 * f.discriminant().unwrap()).into_iter().collect();
    for x in diag.entries() {
        primes.extend(primes_of(x));
    }
    primes.iter().map(|&p| local::hasse_invariant(f, p).unwrap()).product::<i32>() == 1
}

#[test]
fn hilbert_reciprocity_on_inventories() {
    let store = InventoryStore::in_memory();
    for n in common::odd_squarefree(105) {
        let inv = store.get(n).unwrap();
        for c in &inv.classes {
            assert!(reciprocity_holds(&c.form), "level {}: {}", 4 * n, c.form);
            assert_eq!(local::anisotropic_primes(&c.form).unwrap().len() % 2, 1);
        }
    }
}

#[test]
fn local_shapes_match_representatives() {
    let store = InventoryStore::in_memory();
    for n in [3, 5, 15] {
        let inv = store.get(n).unwrap();
        for g in inv.genera() {
            let f = inv.genus(g).unwrap()[0].form;
            for p in prime_factors(2 * n) {
                let shape = local::local_shape(g, p).unwrap();
                let here = format!("{g} at {p}: {f} vs {shape}");
                assert_eq!(local::s_star(&f, p).unwrap(), local::s_star(&shape, p).unwrap(), "{here}");
                assert_eq!(
                    valuation(f.discriminant_i128(), p),
                    valuation(shape.discriminant_i128(), p),
                    "{here}"
                );
                assert_eq!(
                    valuation(f.divisor().unwrap() as i128, p),
                    valuation(shape.divisor().unwrap() as i128, p),
                    "{here}"
                );
            }
        }
    }
}

#[test]
fn diagonalization_examples() {
    let cases = [
        ((1, 1, 1, 0, 0, 0), [(1, 1), (1, 1), (1, 1)]),
        ((1, 1, 3, 0, 0, -1), [(1, 1), (3, 4), (3, 1)]),
        ((1, 1, 2, 1, 1, 1), [(1, 1), (3, 4), (5, 3)]),
    ];
    for ((a, b, c, r, s, t), want) in cases {
        let d = local::diagonalize(&TernaryForm::new(a, b, c, r, s, t)).unwrap();
        let got: Vec<Rational> = d.entries().into_iter().cloned().collect();
        let want: Vec<Rational> = want.iter().map(|&(n, m)| Rational::new(n, m)).collect();
        assert_eq!(got, want);
    }
}

#[test]
fn genus_labels_of_table_rows() {
    let cases = [
        ((1, 1, 1, 0, 0, 0), "G_{4,4,2}"),
        ((1, 1, 3, 0, 0, -1), "G_{12,9,3}"),
        ((2, 2, 5, 0, 0, -2), "G_{60,60,30}"),
        ((2, 18, 35, 0, 0, -2), "G_{140,4900,70}"),
        ((1, 9, 35, 0, 0, -1), "G_{140,1225,7}"),
    ];
    for ((a, b, c, r, s, t), label) in cases {
        let f = TernaryForm::new(a, b, c, r, s, t);
        assert_eq!(local::genus_label(&f).unwrap(), label.parse::<GenusLabel>().unwrap());
    }
}

#[test]
fn genus_label_rejects_other_levels() {
    let f = TernaryForm::new(1, 1, 2, 0, 0, 0);
    assert_eq!(f.level().unwrap(), 8);
    assert!(matches!(local::genus_label(&f), Err(Error::UnsupportedLevel(8))));
    assert!(local::label_any_level(&f).is_ok());
}

#[test]
fn hasse_invariant_examples() {
    let f = TernaryForm::new(1, 1, 1, 0, 0, 0);
    assert_eq!(local::hasse_invariant(&f, 2).unwrap(), 1);
    assert_eq!(local::s_star(&f, 2).unwrap(), -1);
    assert_eq!(local::s_star(&f, 3).unwrap(), 1);
    assert_eq!(local::s_star(&TernaryForm::new(1, 1, 3, 0, 0, -1), 3).unwrap(), -1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hasse_invariant_ignores_variable_order(f in sample_form(), u in unimodular(6)) {
        let g = f.transform(&u).unwrap();
        for p in [2, 3, 5, 7, 11, 13] {
            prop_assert_eq!(local::hasse_invariant(&f, p).unwrap(), local::hasse_invariant(&g, p).unwrap());
        }
        prop_assert_eq!(local::anisotropic_primes(&f).unwrap(), local::anisotropic_primes(&g).unwrap());
    }

    #[test]
    fn diagonal_product_has_square_class_of_d(f in sample_form()) {
        let diag = local::diagonalize(&f).unwrap();
        let ratio = diag.product() * Rational::from_integer(4) / Rational::from_integer(f.discriminant().unwrap());
        let (n, d) = (ratio.numer().clone(), ratio.denom().clone());
        let square = |x: &num_bigint::BigInt| x.sqrt().pow(2) == *x;
        prop_assert!(square(&n) && square(&d), "{}", ratio);
    }
}
