mod common;

use std::collections::BTreeSet;

use tqf_core::arith::{prime_factors, valuation};
use tqf_core::forms::{self, represent_count};
use tqf_core::genera::{ClassInventory, InventoryStore};
use tqf_core::local;
use tqf_core::transforms::{self, LehmanNormalForm};
use tqf_core::TernaryForm;

use common::{sample_form, unimodular};
use proptest::prelude::*;

const LEVELS: [i64; 5] = [3, 5, 15, 21, 35];

fn inventories() -> Vec<std::sync::Arc<ClassInventory>> {
    let store = InventoryStore::in_memory();
    LEVELS.iter().map(|&n| store.get(n).unwrap()).collect()
}

fn aut(f: &TernaryForm) -> usize {
    forms::automorphisms(f).unwrap().len()
}

#[test]
fn lehman_normal_forms_have_the_pattern() {
    for inv in inventories() {
        for c in &inv.classes {
            for p in prime_factors(inv.n) {
                let nf = transforms::lehman_normal_form(&c.form, p).unwrap();
                assert_eq!(c.form.transform(&nf.transform).unwrap(), nf.form);
                assert!(LehmanNormalForm::has_pattern(&nf.form, p, nf.g, nf.h), "{} at {p}", c.form);
                assert_eq!(nf.g, valuation(c.level as i128, p));
                assert_eq!(nf.h, valuation(c.d as i128, p));
            }
        }
    }
}

#[test]
fn lehman_rejects_primes_off_the_level() {
    assert!(transforms::lehman_normal_form(&TernaryForm::new(1, 1, 3, 0, 0, -1), 5).is_err());
}

#[test]
fn phi_p_is_a_class_bijection() {
    for inv in inventories() {
        let classes: BTreeSet<TernaryForm> = inv.classes.iter().map(|c| c.form).collect();
        for p in prime_factors(inv.n) {
            let mut images = BTreeSet::new();
            for c in &inv.classes {
                let g = transforms::phi_p(&c.form, p).unwrap();
                let (gv, hv) = (valuation(c.level as i128, p) as i32, valuation(c.d as i128, p) as i32);
                let image = forms::reduce(&g).unwrap();
                assert_eq!(g.level().unwrap(), c.level);
                let pp = |e: i32| (p as i128).pow(e as u32);
                assert_eq!(g.discriminant_i128() * pp(2 * hv), c.d as i128 * pp(3 * gv), "d(φ_p) = p^(3g-2h) d");
                assert_eq!(aut(&g), c.aut as usize);
                assert_eq!(local::anisotropic_primes(&g).unwrap(), local::anisotropic_primes(&c.form).unwrap());
                assert!(classes.contains(&image), "{} ↦ {image}", c.form);
                let back = forms::reduce(&transforms::phi_p(&g, p).unwrap()).unwrap();
                assert_eq!(back, c.form, "φ_{p} twice on {}", c.form);
                images.insert(image);
            }
            assert_eq!(images, classes, "level {} at {p}", inv.level);
        }
    }
}

#[test]
fn phi_two_and_watson_are_inverse_bijections() {
    for inv in inventories() {
        let n = inv.n;
        let source: BTreeSet<TernaryForm> =
            inv.classes.iter().filter(|c| (n * n) % c.d == 0).map(|c| c.form).collect();
        let target: BTreeSet<TernaryForm> =
            inv.classes.iter().filter(|c| c.d % 16 == 0).map(|c| c.form).collect();
        let mut images = BTreeSet::new();
        for f in &source {
            let g = transforms::phi_2(f).unwrap();
            assert_eq!(g.level().unwrap(), inv.level);
            assert_eq!(g.discriminant().unwrap(), 16 * f.discriminant().unwrap());
            assert_eq!(aut(&g), aut(f));
            assert_eq!(local::anisotropic_primes(&g).unwrap(), local::anisotropic_primes(f).unwrap());
            let w = transforms::watson(&g, 4).unwrap();
            assert!(!w.experimental);
            assert_eq!(forms::reduce(&w.form).unwrap(), *f, "λ₄ ∘ φ₂ on {f}");
            images.insert(forms::reduce(&g).unwrap());
        }
        assert_eq!(images, target, "level {}", inv.level);
        for g in &target {
            let w = transforms::watson(g, 4).unwrap();
            assert_eq!(aut(&w.form), aut(g));
            assert_eq!(local::anisotropic_primes(&w.form).unwrap(), local::anisotropic_primes(g).unwrap());
            assert!(source.contains(&forms::reduce(&w.form).unwrap()));
        }
    }
}

#[test]
fn representation_transfer_under_phi_p() {
    for inv in inventories() {
        for p in prime_factors(inv.n) {
            for c in inv.classes.iter().filter(|c| valuation(c.d as i128, p) == 2) {
                let g = transforms::phi_p(&c.form, p).unwrap();
                for n in 0..=50 {
                    assert_eq!(
                        represent_count(&c.form, p * n).unwrap(),
                        represent_count(&g, n).unwrap(),
                        "{} at {p}, n = {n}",
                        c.form
                    );
                }
            }
        }
    }
}

#[test]
fn phi_examples_at_level_twelve() {
    let f = TernaryForm::new(1, 1, 3, 0, 0, -1);
    let g = transforms::phi_p(&f, 3).unwrap();
    assert!(forms::is_equivalent(&g, &TernaryForm::new(1, 1, 1, 0, 0, -1)).unwrap().is_some());
    let h = transforms::phi_2(&f).unwrap();
    assert!(forms::is_equivalent(&h, &TernaryForm::new(3, 4, 4, -4, 0, 0)).unwrap().is_some());
    let w = transforms::watson(&TernaryForm::new(3, 4, 4, -4, 0, 0), 4).unwrap();
    assert!(forms::is_equivalent(&w.form, &f).unwrap().is_some());
}

#[test]
fn watson_examples() {
    let f = TernaryForm::new(8, 16, 3, 8, 8, 8);
    let w = transforms::watson(&f, 4).unwrap();
    assert!(forms::is_equivalent(&w.form, &TernaryForm::new(2, 4, 3, 4, 4, 2)).unwrap().is_some());
    let g = TernaryForm::new(1, 1, 1, 0, 0, 0);
    assert_eq!(transforms::watson(&g, 1).unwrap().form, g);
    assert!(transforms::watson(&g, 3).unwrap().experimental);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normal_form_of_any_basis(f in sample_form(), u in unimodular(8)) {
        let g = f.transform(&u).unwrap();
        for p in prime_factors(f.level().unwrap()).into_iter().filter(|&p| p != 2 && p < 250) {
            let nf = transforms::lehman_normal_form(&g, p).unwrap();
            prop_assert_eq!(g.transform(&nf.transform).unwrap(), nf.form);
            prop_assert!(LehmanNormalForm::has_pattern(&nf.form, p, nf.g, nf.h));
            let image = forms::reduce(&transforms::phi_p(&g, p).unwrap()).unwrap();
            prop_assert_eq!(image, forms::reduce(&transforms::phi_p(&f, p).unwrap()).unwrap());
        }
    }
}
