mod common;

use std::collections::BTreeSet;

use tqf_core::arith::{divisors, omega};
use tqf_core::genera::{self, ClassInventory, InventoryStore};
use tqf_core::hurwitz::{class_number_4n, modified_h};
use tqf_core::local::{self, GenusLabel};
use tqf_core::{forms, Rational, TernaryForm};

fn label(s: &str) -> GenusLabel {
    s.parse().unwrap()
}

#[test]
fn counts_match_the_class_number_formula() {
    let store = InventoryStore::in_memory();
    for n in [1, 3, 5, 7, 11, 13, 15, 21, 33, 35, 105] {
        let inv = store.get(n).unwrap();
        assert_eq!(inv.len() as u64, class_number_4n(n).unwrap(), "N={n}");
        let genera = if n == 1 { 1 } else { 1 << (2 * omega(n) + 1) };
        assert_eq!(inv.partition.len(), genera, "genera at N={n}");
    }
}

#[test]
fn inventories_are_canonical_and_distinct() {
    let store = InventoryStore::in_memory();
    for n in [15, 21, 35] {
        let inv = store.get(n).unwrap();
        let forms: BTreeSet<TernaryForm> = inv.classes.iter().map(|c| c.form).collect();
        assert_eq!(forms.len(), inv.len());
        for c in &inv.classes {
            assert_eq!(forms::reduce(&c.form).unwrap(), c.form);
            assert_eq!(c.form.level().unwrap(), inv.level);
            assert!(c.form.is_primitive());
            assert_eq!(c.d, c.form.discriminant().unwrap());
            assert_eq!(c.aut as usize, forms::automorphisms(&c.form).unwrap().len());
            assert_eq!(c.genus, local::genus_label(&c.form).unwrap());
        }
    }
}

#[test]
fn discriminants_lie_in_the_three_families() {
    let store = InventoryStore::in_memory();
    for n in common::odd_squarefree(105).into_iter().skip(1) {
        let inv = store.get(n).unwrap();
        let allowed: BTreeSet<i64> = divisors(n)
            .into_iter()
            .flat_map(|n_r| [1, 4, 16].map(|k| k * n * n / n_r))
            .collect();
        for c in &inv.classes {
            assert!(allowed.contains(&c.d), "level {}: d = {}", inv.level, c.d);
        }
        let ds: BTreeSet<i64> = inv.classes.iter().map(|c| c.d).collect();
        assert_eq!(ds, allowed, "level {}", inv.level);
    }
}

#[test]
fn genus_shapes_partition_the_inventory() {
    let store = InventoryStore::in_memory();
    for n in [1, 3, 5, 15, 35, 105] {
        let inv = store.get(n).unwrap();
        let shapes: BTreeSet<GenusLabel> = local::genus_shapes(n).unwrap().into_iter().collect();
        let present: BTreeSet<GenusLabel> = inv.genera().cloned().collect();
        assert_eq!(shapes, present, "N={n}");
    }
}

fn mass_certificate(inv: &ClassInventory) {
    for g in inv.genera() {
        let mass = genera::genus_mass(inv, g).unwrap();
        let (n1, n2, scale, _) = genera::genus_hurwitz_data(g).unwrap();
        let want = modified_h(n1, n2, 0).unwrap().abs() / scale;
        assert_eq!(mass, want, "{g}");
    }
}

#[test]
fn masses_certify_completeness() {
    let store = InventoryStore::in_memory();
    for n in common::odd_squarefree(105) {
        mass_certificate(&store.get(n).unwrap());
    }
}

#[test]
fn weighted_representations_follow_modified_class_numbers() {
    let store = InventoryStore::in_memory();
    for n in [1, 3, 5, 7, 13, 15, 21, 35, 39] {
        let inv = store.get(n).unwrap();
        for g in inv.genera() {
            let series = genera::weighted_series(&inv, g, 100).unwrap();
            for (k, value) in series.iter().enumerate().skip(1) {
                assert_eq!(*value, genera::expected_weighted_representation(g, k as u64).unwrap(), "{g} at n={k}");
            }
        }
    }
}

#[test]
fn mass_and_representation_examples() {
    let store = InventoryStore::in_memory();
    let cases = [
        (1, "G_{4,4,2}", 0, Rational::new(1, 48)),
        (3, "G_{12,9,3}", 0, Rational::new(1, 24)),
        (35, "G_{140,1225,7}", 0, Rational::new(3, 8)),
        (1, "G_{4,4,2}", 1, Rational::new(1, 8)),
        (3, "G_{12,144,3}", 3, Rational::new(1, 12)),
        (35, "G_{140,1225,5}", 1, Rational::zero()),
    ];
    for (n, g, k, want) in cases {
        let inv = store.get(n).unwrap();
        let got = if k == 0 {
            genera::genus_mass(&inv, &label(g)).unwrap()
        } else {
            genera::weighted_representation(&inv, &label(g), k).unwrap()
        };
        assert_eq!(got, want, "{g} at n={k}");
    }
}

#[test]
fn inventory_examples() {
    let store = InventoryStore::in_memory();
    let one = store.get(1).unwrap();
    assert_eq!(one.classes.iter().map(|c| c.form).collect::<Vec<_>>(), [TernaryForm::new(1, 1, 1, 0, 0, 0)]);
    let inv = store.get(35).unwrap();
    assert_eq!((inv.len(), inv.partition.len()), (76, 32));
    assert!(inv.genus(&label("G_{140,1225,3}")).is_err());
}

#[test]
fn cache_roundtrip_and_reuse() {
    let dir = tempfile::tempdir().unwrap();
    let store = InventoryStore::new(Some(dir.path().to_path_buf()), genera::DEFAULT_CANDIDATE_BOUND);
    let first = store.get(15).unwrap();
    let path = genera::cache_path(dir.path(), 15);
    assert!(path.exists());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), first.len());
    for line in text.lines() {
        let record = genera::parse_record(line).unwrap();
        assert_eq!(record.level, 60);
    }
    let reread = ClassInventory::read_jsonl(15, text.as_bytes()).unwrap();
    assert_eq!(reread, *first);
    let again = genera::load_or_enumerate(15, Some(dir.path()), 1).unwrap();
    assert_eq!(again, *first);
}

#[test]
fn candidate_guard_refuses_large_searches() {
    assert!(genera::enumerate_classes_bounded(105, 10).is_err());
    assert!(genera::enumerate_classes(9).is_err());
    assert!(genera::enumerate_classes(6).is_err());
}
