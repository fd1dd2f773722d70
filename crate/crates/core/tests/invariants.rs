//! Structural invariants checked on randomly generated one-block codes,
//! plus horizon-stability and recoding checks on the fixture corpus.

mod common;

use common::oracle as o;
use common::*;
use proptest::prelude::*;
use shiftlab_core::classdeg::{class_degree, class_degree_bounded};
use shiftlab_core::codes::higher_block_triple;
use shiftlab_core::degree::{d_of_word, magic_search, symbol_set_at};
use shiftlab_core::fibers::{class_restriction, periodic_classes, periodic_words, reversed_classes};
use shiftlab_core::monoid::Exactness;
use shiftlab_core::structure::{magic_partition, symbol_class_table, tau_permutation, PartitionVerdict};
use shiftlab_core::{BitSet, FactorTriple, YSym};
use std::collections::BTreeMap;

const CAP: usize = 1_000_000;
const LETTERS: [&str; 3] = ["0", "1", "2"];

fn arb_triple() -> impl Strategy<Value = FactorTriple> {
    (2usize..=5, 1usize..=3)
        .prop_flat_map(|(nx, ny)| {
            (
                Just(nx),
                proptest::collection::vec(any::<bool>(), nx * nx),
                proptest::collection::vec(0..ny, nx),
            )
        })
        .prop_filter_map("no essential part", |(nx, adj, labels)| {
            let symbols: Vec<String> = (0..nx).map(|i| format!("s{i}")).collect();
            let mut edges = Vec::new();
            for i in 0..nx {
                for j in 0..nx {
                    if adj[i * nx + j] {
                        edges.push((symbols[i].clone(), symbols[j].clone()));
                    }
                }
            }
            let labels: Vec<(String, String)> = labels
                .iter()
                .enumerate()
                .map(|(i, &l)| (symbols[i].clone(), LETTERS[l].to_string()))
                .collect();
            FactorTriple::new("random", &symbols, &edges, &labels).ok()
        })
}

fn reduce(t: &FactorTriple, w: &[usize]) -> Vec<YSym> {
    let a = t.alphabet().len();
    w.iter().map(|&y| y % a).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn word_matrices_multiply_along_concatenation(
        t in arb_triple(),
        u in proptest::collection::vec(0usize..3, 1..=3),
        v in proptest::collection::vec(0usize..3, 1..=3),
    ) {
        let u = reduce(&t, &u);
        let v = reduce(&t, &v);
        let mut uv = u.clone();
        uv.extend_from_slice(&v);
        // walks carry one symbol per letter, so joining two walks crosses
        // one connecting edge
        let glued = t.matrix_of(&u).mul(&t.graph().adjacency()).mul(&t.matrix_of(&v));
        prop_assert_eq!(t.matrix_of(&uv), glued);
    }

    #[test]
    fn membership_and_width_match_the_oracle(
        t in arb_triple(),
        w in proptest::collection::vec(0usize..3, 1..=4),
    ) {
        let w = reduce(&t, &w);
        let in_image = !t.matrix_of(&w).is_zero();
        prop_assert_eq!(in_image, o::member(&t, &w));
        if in_image {
            let (width, k) = d_of_word(&t, &w).unwrap();
            prop_assert_eq!(Some(width), o::fiber_width(&t, &w));
            let narrowest = symbol_set_at(&t, &w, k).unwrap();
            prop_assert_eq!(narrowest.iter().count(), width);
        }
    }

    #[test]
    fn extensions_only_narrow_symbol_sets(
        t in arb_triple(),
        w in proptest::collection::vec(0usize..3, 1..=4),
        u in proptest::collection::vec(0usize..3, 0..=2),
        v in proptest::collection::vec(0usize..3, 0..=2),
    ) {
        let w = reduce(&t, &w);
        let u = reduce(&t, &u);
        let v = reduce(&t, &v);
        let mut ext = u.clone();
        ext.extend_from_slice(&w);
        ext.extend_from_slice(&v);
        prop_assume!(!t.matrix_of(&ext).is_zero());
        for k in 0..w.len() {
            let inner = symbol_set_at(&t, &w, k).unwrap();
            let outer = symbol_set_at(&t, &ext, u.len() + k).unwrap();
            prop_assert!(outer.is_subset_of(&inner));
        }
    }

    #[test]
    fn transposition_mirrors_symbol_sets(
        t in arb_triple(),
        w in proptest::collection::vec(0usize..3, 1..=4),
    ) {
        let w = reduce(&t, &w);
        prop_assume!(!t.matrix_of(&w).is_zero());
        let r = t.transpose();
        let back: Vec<YSym> = w.iter().rev().copied().collect();
        prop_assert_eq!(d_of_word(&t, &w).unwrap().0, d_of_word(&r, &back).unwrap().0);
        for k in 0..w.len() {
            prop_assert_eq!(
                symbol_set_at(&t, &w, k).unwrap(),
                symbol_set_at(&r, &back, w.len() - 1 - k).unwrap()
            );
        }
    }

    #[test]
    fn monoid_minima_match_the_oracle_on_random_codes(t in arb_triple()) {
        prop_assume!(t.graph().is_irreducible());
        let bounded = class_degree_bounded(&t, 4).unwrap();
        prop_assert_eq!(Some(bounded.value), o::depth_upper_bound(&t, 4));
        let exact = class_degree(&t, CAP).unwrap();
        prop_assume!(exact.status == Exactness::Exact);
        prop_assert!(exact.value <= bounded.value);
        let magic = magic_search(&t, CAP).unwrap();
        prop_assert!(exact.value <= magic.d_min);
        prop_assert_eq!(d_of_word(&t, &magic.witness_word).unwrap().0, magic.d_min);
    }

    #[test]
    fn reversal_preserves_periodic_class_structure(t in arb_triple()) {
        for q in periodic_words(&t, 3) {
            let fwd = periodic_classes(&t, &q.letters).unwrap();
            let rev = reversed_classes(&t, &q.letters).unwrap();
            prop_assert_eq!(fwd.classes.len(), rev.classes.len());
            // reversing twice restores the original tables coordinate by
            // coordinate
            let p = q.letters.len();
            let back: Vec<YSym> = (0..p).map(|i| q.letters[(p - i) % p]).collect();
            let again = reversed_classes(&t.transpose(), &back).unwrap();
            prop_assert_eq!(again.classes.len(), fwd.classes.len());
            for i in 0..p {
                let mut lhs = class_restriction(&t, &again, i);
                let mut rhs = class_restriction(&t, &fwd, i);
                lhs.sort();
                rhs.sort();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn higher_block_recoding_preserves_degree_data() {
    let mut checked = 0;
    for t in all_fixtures() {
        if !t.graph().is_irreducible() {
            continue;
        }
        checked += 1;
        let d0 = magic_search(&t, CAP).unwrap().d_min;
        let c0 = class_degree(&t, CAP).unwrap().value;
        for n in [2, 3] {
            // the recoded symbol set grows with n; keep the scan affordable
            if n == 3 && t.graph().len() > 12 {
                continue;
            }
            let h = higher_block_triple(&t, n).unwrap();
            assert_eq!(magic_search(&h, CAP).unwrap().d_min, d0, "{} at {n}", t.name());
            assert_eq!(class_degree(&h, CAP).unwrap().value, c0, "{} at {n}", t.name());
        }
    }
    assert!(checked >= 4);
}

#[test]
fn tau_bridges_compose_over_the_certificate() {
    let t = t3();
    let cert = class_degree(&t, CAP).unwrap().certificate;
    let w = cert.word.clone();
    let mut bridges: Vec<Vec<YSym>> = Vec::new();
    for v in std::iter::once(Vec::new()).chain(t.image_words_up_to(5)) {
        let mut u = w.clone();
        u.extend_from_slice(&v);
        u.extend_from_slice(&w);
        if t.contains_word(&u) {
            bridges.push(v);
        }
    }
    assert!(bridges.len() > 2, "certificate admits only {} bridges", bridges.len());
    let taus: Vec<_> = bridges
        .iter()
        .map(|v| tau_permutation(&t, &cert, v, CAP).unwrap())
        .collect();
    assert!(taus.iter().any(|tau| !tau.is_identity()));
    for tau in &taus {
        let rows: Vec<_> = tau.map.iter().map(|&(a, _)| a).collect();
        assert_eq!(rows, cert.symbols.iter().collect::<Vec<_>>());
    }
    for (v1, tau1) in bridges.iter().zip(&taus) {
        for (v2, tau2) in bridges.iter().zip(&taus) {
            let mut joint = v1.clone();
            joint.extend_from_slice(&w);
            joint.extend_from_slice(v2);
            let mut u = w.clone();
            u.extend_from_slice(&joint);
            u.extend_from_slice(&w);
            if t.matrix_of(&u).is_zero() {
                continue;
            }
            let composed = tau_permutation(&t, &cert, &joint, CAP).unwrap();
            for &(a, b) in &tau1.map {
                assert_eq!(composed.image_of(a), tau2.image_of(b));
            }
        }
    }
}

#[test]
fn letter_tables_are_stable_as_the_horizon_grows() {
    let t = t3();
    let a = t.label_index("a").unwrap();
    let small = symbol_class_table(&t, a, 4, CAP).unwrap();
    let large = symbol_class_table(&t, a, 8, CAP).unwrap();
    assert_eq!(small.class_degree, large.class_degree);
    assert!(large.rows.len() > small.rows.len());
    assert_eq!(&large.rows[..small.rows.len()], &small.rows[..]);
    match (&small.verdict, &large.verdict) {
        (
            PartitionVerdict::NoPartition { conflict: Some(lhs) },
            PartitionVerdict::NoPartition { conflict: Some(rhs) },
        ) => assert_eq!(lhs, rhs),
        other => panic!("expected matching conflicts, got {other:?}"),
    }

    let m = t.label_index("m").unwrap();
    let small = symbol_class_table(&t, m, 4, CAP).unwrap();
    let large = symbol_class_table(&t, m, 8, CAP).unwrap();
    assert_eq!(small.verdict, large.verdict);
    assert_eq!(small.full_fiber_row, large.full_fiber_row);
}

#[test]
fn magic_partitions_do_not_depend_on_the_witness() {
    let t = t4();
    let d_min = magic_search(&t, CAP).unwrap().d_min;
    let mut by_letter: BTreeMap<YSym, Vec<BitSet>> = BTreeMap::new();
    let mut words = 0;
    for w in t.image_words_up_to(4) {
        let (width, k) = d_of_word(&t, &w).unwrap();
        if width != d_min {
            continue;
        }
        words += 1;
        let partition = magic_partition(&t, &w, 4, CAP).unwrap();
        match by_letter.entry(w[k]) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(partition.symbol_parts);
            }
            std::collections::btree_map::Entry::Occupied(e) => {
                assert_eq!(e.get(), &partition.symbol_parts, "witness {w:?}");
            }
        }
    }
    assert!(words > 10);
    let zero = t.label_index("0").unwrap();
    let one = t.label_index("1").unwrap();
    assert_eq!(
        by_letter[&zero],
        vec![BitSet::from_indices(4, [0]), BitSet::from_indices(4, [3])]
    );
    assert_eq!(
        by_letter[&one],
        vec![BitSet::from_indices(4, [1]), BitSet::from_indices(4, [2])]
    );
}
