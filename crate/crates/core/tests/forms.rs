mod common;

use common::{naive_counts, positive_form, sample_form, unimodular, SAMPLE_FORMS};
use proptest::prelude::*;
use tqf_core::forms::{self, matrix};
use tqf_core::local;
use tqf_core::TernaryForm;

#[test]
fn represent_count_matches_box_scan() {
    for f in SAMPLE_FORMS {
        assert_eq!(forms::theta_counts(&f, 100).unwrap(), naive_counts(&f, 100), "{f}");
    }
}

#[test]
fn sample_forms_are_positive_definite() {
    for f in SAMPLE_FORMS {
        assert!(f.is_positive_definite(), "{f}");
    }
}

#[test]
fn automorphism_groups_are_groups() {
    for f in SAMPLE_FORMS {
        assert!(common::is_automorphism_group(&f), "{f}");
    }
}

#[test]
fn automorphism_group_orders() {
    let cases = [((1, 1, 1, 0, 0, 0), 48), ((1, 1, 3, 0, 0, -1), 24), ((1, 2, 5, 1, 1, 1), 4), ((4, 9, 13, 5, 1, -3), 2)];
    for ((a, b, c, r, s, t), order) in cases {
        assert_eq!(forms::automorphisms(&TernaryForm::new(a, b, c, r, s, t)).unwrap().len(), order);
    }
}

#[test]
fn permuted_form_reduces_to_table_representative() {
    let f = TernaryForm::new(1, 1, 3, 0, 0, -1);
    let g = TernaryForm::new(3, 1, 1, -1, 0, 0);
    assert_eq!(forms::reduce(&g).unwrap(), f);
    let w = forms::is_equivalent(&f, &g).unwrap().expect("equivalent");
    assert!(w.maps(&g, &f));

    let other = TernaryForm::new(3, 1, 1, 0, -1, 0);
    assert_eq!(other.discriminant().unwrap(), 11);
    assert!(forms::is_equivalent(&f, &other).unwrap().is_none());
    assert_ne!(forms::reduce(&other).unwrap(), f);
}

#[test]
fn reduce_fixes_reduced_forms() {
    let f = TernaryForm::new(1, 1, 1, 0, 0, 0);
    assert_eq!(forms::reduce(&f).unwrap(), f);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn level_times_divisor_is_four_d(f in positive_form()) {
        let inv = f.invariants().unwrap();
        prop_assert_eq!(inv.level as i128 * inv.divisor as i128, 4 * inv.discriminant as i128);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invariants_are_class_invariants(f in sample_form(), u in unimodular(6)) {
        let g = f.transform(&u).unwrap();
        let (fi, gi) = (f.invariants().unwrap(), g.invariants().unwrap());
        prop_assert_eq!(fi.discriminant, gi.discriminant);
        prop_assert_eq!(fi.divisor, gi.divisor);
        prop_assert_eq!(fi.level, gi.level);
        prop_assert_eq!(fi.aut_count, gi.aut_count);
        prop_assert_eq!(forms::theta_counts(&f, 50).unwrap(), forms::theta_counts(&g, 50).unwrap());
        prop_assert_eq!(local::label_any_level(&f).unwrap(), local::label_any_level(&g).unwrap());
    }

    #[test]
    fn reduce_is_idempotent_and_class_invariant(f in sample_form(), u in unimodular(6)) {
        let g = f.transform(&u).unwrap();
        let rf = forms::reduce(&f).unwrap();
        prop_assert_eq!(forms::reduce(&g).unwrap(), rf);
        prop_assert_eq!(forms::reduce(&rf).unwrap(), rf);
        let [_, _, _, r, s, t] = rf.to_array();
        prop_assert!(rf.a <= rf.b && rf.b <= rf.c);
        prop_assert!((r >= 0 && s >= 0 && t >= 0) || (r <= 0 && s <= 0 && t <= 0));
    }

    #[test]
    fn canonical_transform_is_a_witness(f in sample_form(), u in unimodular(6)) {
        let g = f.transform(&u).unwrap();
        let (h, w) = forms::canonical(&g).unwrap();
        prop_assert_eq!(matrix::det(&w).abs(), 1);
        prop_assert_eq!(g.transform(&w).unwrap(), h);
    }

    #[test]
    fn equivalence_witness_maps(f in sample_form(), u in unimodular(6)) {
        let g = f.transform(&u).unwrap();
        let w = forms::is_equivalent(&f, &g).unwrap();
        prop_assert!(w.is_some_and(|w| w.maps(&g, &f)));
    }

    #[test]
    fn form_encoding_roundtrips(a in 1i64..1000, b in 1i64..1000, c in 1i64..1000, r in -999i64..1000, s in -999i64..1000, t in -999i64..1000) {
        let f = TernaryForm::new(a, b, c, r, s, t);
        prop_assert_eq!(f.to_string().parse::<TernaryForm>().unwrap(), f);
    }
}
