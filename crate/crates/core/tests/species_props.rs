use std::collections::BTreeSet;

use poset_operads::enumeration::all_posets;
use poset_operads::operad::labeled_grid;
use poset_operads::species::{circ_bilinear, phi, phi_inverse, refinements, verify_phi_morphism};
use poset_operads::{poset, FormalSum, Poset};
use proptest::prelude::*;

/// Sub-relations of `p` found by testing every subset of its strict pairs
/// for transitivity.
fn brute_refinements(p: &Poset) -> BTreeSet<Poset> {
    let pairs = p.strict_pairs();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let chosen: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, pr)| pr.clone())
            .collect();
        let transitive = chosen.iter().all(|(x, y)| {
            chosen
                .iter()
                .filter(|(y2, _)| y2 == y)
                .all(|(_, z)| chosen.iter().any(|(x3, z3)| x3 == x && z3 == z))
        });
        if transitive {
            out.insert(Poset::build(p.labels().to_vec(), chosen).unwrap());
        }
    }
    out
}

#[test]
fn refinements_match_subrelation_search() {
    for n in 0..=4 {
        all_posets(n, &mut |p: &Poset| {
            let fast: BTreeSet<Poset> = refinements(p).into_iter().collect();
            assert_eq!(fast.len(), refinements(p).len(), "duplicates for {p}");
            assert_eq!(fast, brute_refinements(p), "{p}");
        })
        .unwrap();
    }
}

#[test]
fn refinement_examples() {
    assert_eq!(refinements(&poset("1 2", "1<2")).len(), 2);
    assert_eq!(refinements(&poset("1 2 3", "1<2 2<3")).len(), 7);
    let anti = poset("1 2 3", "");
    assert_eq!(refinements(&anti), vec![anti.clone()]);
}

#[test]
fn refinements_contain_ends_and_are_monotone() {
    let mut all = Vec::new();
    all_posets(4, &mut |p: &Poset| all.push(p.clone())).unwrap();
    let anti = poset("1 2 3 4", "");
    for p in &all {
        let r: BTreeSet<Poset> = refinements(p).into_iter().collect();
        assert!(r.contains(p) && r.contains(&anti));
        for q in &r {
            let rq: BTreeSet<Poset> = refinements(q).into_iter().collect();
            assert!(rq.is_subset(&r), "{q} ⪯ {p}");
        }
    }
}

#[test]
fn phi_examples() {
    let edge = poset("1 2", "1<2");
    let anti = poset("1 2", "");
    assert_eq!(phi(&FormalSum::term(anti.clone())), FormalSum::term(anti.clone()));
    let mut inv = FormalSum::term(edge.clone());
    inv.add_term(anti.clone(), -1);
    assert_eq!(phi_inverse(&FormalSum::term(edge.clone())), inv);
    let chain = poset("1 2 3", "1<2 2<3");
    let image = phi(&FormalSum::term(chain.clone()));
    assert_eq!(image.len(), 7);
    assert!(image.iter().all(|(_, c)| c == 1));
    assert_eq!(phi_inverse(&image), FormalSum::term(chain));
}

#[test]
fn phi_is_unitriangular() {
    for n in 0..=4 {
        all_posets(n, &mut |p: &Poset| {
            let image = phi(&FormalSum::term(p.clone()));
            assert_eq!(image.coefficient(p), 1);
            for (q, _) in image.iter().filter(|(q, _)| *q != p) {
                assert!(q.is_finer(p).unwrap() && q.strict_pair_count() < p.strict_pair_count());
            }
        })
        .unwrap();
    }
}

#[test]
fn bilinear_examples() {
    let edge = poset("a b", "a<b");
    let anti = poset("a b", "");
    let inner = poset("1 2", "1<2");
    let dot = FormalSum::term(poset("1", ""));
    let renamed = poset("1 b", "1<b");
    assert_eq!(
        circ_bilinear(&FormalSum::term(edge.clone()), "a", &dot).unwrap(),
        FormalSum::term(renamed)
    );

    let x: FormalSum = [edge.clone(), anti.clone()].into_iter().collect();
    let y = FormalSum::term(inner.clone());
    let got = circ_bilinear(&x, "a", &y).unwrap();
    assert_eq!(got.len(), 3);
    assert_eq!(got.weight(), 3);

    let doubled = circ_bilinear(&FormalSum::term(edge.clone()).scaled(2), "a", &y).unwrap();
    assert_eq!(
        doubled,
        circ_bilinear(&FormalSum::term(edge), "a", &y).unwrap().scaled(2)
    );
}

#[test]
fn phi_morphism_small() {
    let edge = poset("a b", "a<b");
    let inner = poset("1 2", "1<2");
    assert!(verify_phi_morphism(&edge, "a", &inner).unwrap());
    assert!(verify_phi_morphism(&edge, "b", &inner).unwrap());
    for a in labeled_grid("a", 1, 3) {
        assert!(verify_phi_morphism(&a, a.labels()[0].as_str(), &poset("z", "")).unwrap());
    }
}

proptest! {
    #[test]
    fn phi_round_trip_on_random_sums(coeffs in prop::collection::vec(-3i64..=3, 19)) {
        let mut all = Vec::new();
        all_posets(3, &mut |p: &Poset| all.push(p.clone())).unwrap();
        let x: FormalSum = all.into_iter().zip(coeffs).collect();
        prop_assert_eq!(phi_inverse(&phi(&x)), x.clone());
        prop_assert_eq!(phi(&phi_inverse(&x)), x);
    }
}
