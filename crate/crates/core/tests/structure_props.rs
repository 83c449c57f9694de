use std::collections::BTreeSet;

use poset_operads::canon::canon_key;
use poset_operads::enumeration::{all_posets, census};
use poset_operads::operad::labeled_grid;
use poset_operads::structure::{
    br_split, closure_wn, compose_standard, gen_ordinal, is_nabla_compatible, is_wn, n_poset, nabla, ordinal_sum,
    theta, theta_inverse, verify_suboperad_relations, wn_factorize, FactorKind,
};
use poset_operads::{contains_induced, poset, Error, Family, Label, Poset};
use proptest::prelude::*;

#[test]
fn wn_is_n_avoidance() {
    let n = n_poset();
    for k in 0..=5 {
        all_posets(k, &mut |p: &Poset| {
            assert_eq!(is_wn(p), !contains_induced(p, &n), "{p}")
        })
        .unwrap();
    }
    for key in census(6).unwrap().into_keys() {
        let p = key.poset();
        assert_eq!(is_wn(&p), !contains_induced(&p, &n), "{p}");
    }
}

#[test]
fn wn_is_closed_under_both_products_and_their_factors() {
    for a in labeled_grid("a", 1, 3) {
        for b in labeled_grid("b", 1, 3) {
            let both = is_wn(&a) && is_wn(&b);
            assert_eq!(is_wn(&a.disjoint_union(&b).unwrap()), both);
            assert_eq!(is_wn(&ordinal_sum(&a, &b).unwrap()), both);
        }
    }
}

/// Every way to write `p` as `B1 ↓ … ↓ Bk` with each block a single point or
/// disconnected, found by trying all block assignments.
fn ordinal_splits(p: &Poset) -> Vec<Vec<Poset>> {
    let labels: Vec<&str> = p.labels().iter().map(Label::as_str).collect();
    let n = labels.len();
    let mut out = Vec::new();
    for k in 1..=n {
        let total = k.pow(n as u32);
        'assign: for code in 0..total {
            let mut block = vec![0; n];
            let mut c = code;
            for b in block.iter_mut() {
                *b = c % k;
                c /= k;
            }
            let mut parts: Vec<Vec<&str>> = vec![Vec::new(); k];
            for (i, &b) in block.iter().enumerate() {
                parts[b].push(labels[i]);
            }
            if parts.iter().any(Vec::is_empty) {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    if block[i] < block[j] && !p.leq(labels[i], labels[j]) {
                        continue 'assign;
                    }
                }
            }
            let factors: Vec<Poset> = parts.iter().map(|s| p.restrict(s).unwrap()).collect();
            if factors.iter().all(|f| f.len() == 1 || !f.is_connected()) {
                out.push(factors);
            }
        }
    }
    out
}

#[test]
fn wn_factorization_is_the_unique_split() {
    for k in 1..=4 {
        all_posets(k, &mut |p: &Poset| {
            if !is_wn(p) {
                assert_eq!(wn_factorize(p), Err(Error::NotWn));
                return;
            }
            let f = wn_factorize(p).unwrap();
            assert_eq!(f.kind, FactorKind::Ordinal);
            assert_eq!(&f.recompose().unwrap(), p);
            assert_eq!(ordinal_splits(p), vec![f.factors], "{p}");
        })
        .unwrap();
    }
}

#[test]
fn factorization_examples() {
    let f = wn_factorize(&poset("1 2 3", "1<2 2<3")).unwrap();
    assert_eq!(f.factors, vec![poset("1", ""), poset("2", ""), poset("3", "")]);
    let p42 = poset("1 2 3 4", "1<2 1<4 2<4 3<4");
    let f = wn_factorize(&p42).unwrap();
    assert_eq!(f.factors, vec![poset("1 2 3", "1<2"), poset("4", "")]);
    let loose = poset("1 2 3", "1<2");
    assert_eq!(wn_factorize(&loose).unwrap().factors, vec![loose]);
    assert_eq!(wn_factorize(&Poset::empty()), Err(Error::EmptyPoset));
}

#[test]
fn br_examples() {
    let (b, r) = br_split(&poset("1 2 3", "1<2 2<3")).unwrap();
    assert_eq!((b, r), (poset("2 3", "2<3"), poset("1", "")));
    let (b, r) = br_split(&poset("1", "")).unwrap();
    assert!(b.is_empty());
    assert_eq!(r, poset("1", ""));
    let (b, r) = br_split(&poset("1 2 3 4", "1<2 1<4 3<4")).unwrap();
    assert_eq!((b, r), (poset("4", ""), poset("1 2 3", "1<2")));
    assert_eq!(br_split(&Poset::empty()), Err(Error::EmptyPoset));
}

#[test]
fn br_parts_of_a_nabla() {
    for a in labeled_grid("a", 1, 3) {
        for b in labeled_grid("b", 1, 3) {
            let c = nabla(&a, &b).unwrap();
            let (bc, rc) = br_split(&c).unwrap();
            let (bb, rb) = br_split(&b).unwrap();
            assert_eq!(bc, a.disjoint_union(&bb).unwrap());
            assert_eq!(rc, rb);
            assert_eq!(c.minimal(), b.minimal());
        }
    }
}

#[test]
fn compatibility_examples() {
    assert!(is_nabla_compatible(&n_poset()));
    assert!(!is_nabla_compatible(&poset("1 2 3 4", "1<2 1<4 2<4 3<4")));
    assert!(is_nabla_compatible(&poset("1 2 3", "")));
    assert!(is_nabla_compatible(&Poset::singleton("x")));
}

#[test]
fn theta_examples() {
    let chain = poset("1 2 3", "1<2 2<3");
    let image = theta(&chain).unwrap();
    // (1 ↓ 2) ↓ 3 goes to (1 ∇ 2) ∇ 3, and each ∇ puts its right side below.
    assert_eq!(image, poset("1 2 3", "3<2 2<1"));
    assert_eq!(canon_key(&image).unwrap(), canon_key(&chain).unwrap());
    assert_eq!(theta_inverse(&image).unwrap(), chain);
    let anti = poset("1 2 3", "");
    assert_eq!(theta(&anti).unwrap(), anti);
    assert_eq!(theta(&Poset::singleton("a")).unwrap(), Poset::singleton("a"));
    assert_eq!(theta(&n_poset()), Err(Error::NotWn));
    let p42 = poset("1 2 3 4", "1<2 1<4 2<4 3<4");
    assert_eq!(theta_inverse(&p42), Err(Error::NotNablaCompatible));
}

#[test]
fn theta_matches_wn_and_nabla_counts() {
    for k in 1..=5 {
        let mut images = BTreeSet::new();
        let mut wn = 0;
        let mut compatible = 0;
        all_posets(k, &mut |p: &Poset| {
            if is_wn(p) {
                wn += 1;
                images.insert(theta(p).unwrap());
            }
            if is_nabla_compatible(p) {
                compatible += 1;
            }
        })
        .unwrap();
        assert_eq!(images.len(), wn, "θ not injective at {k}");
        assert_eq!(wn, compatible, "n={k}");
    }
}

#[test]
fn relations_and_generators() {
    let r = verify_suboperad_relations();
    assert!(r.passed(), "{r}");
    let chain = poset("1 2 3", "1<2 2<3");
    for slot in [1, 2] {
        let c = compose_standard(Family::Bullet, &gen_ordinal(), slot, &gen_ordinal()).unwrap();
        assert_eq!(c, chain);
    }
    let two: BTreeSet<_> = closure_wn(2).unwrap().into_iter().filter(|k| k.size() == 2).collect();
    let expected = BTreeSet::from([
        canon_key(&poset("a b", "")).unwrap(),
        canon_key(&poset("a b", "a<b")).unwrap(),
    ]);
    assert_eq!(two, expected);
}

fn arb_poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * n)))
        .prop_map(|(n, bits)| {
            let labels: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
            let edges: Vec<(String, String)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| bits[i * n + j])
                .map(|(i, j)| (labels[i].clone(), labels[j].clone()))
                .collect();
            Poset::build(labels, edges).unwrap()
        })
}

proptest! {
    #[test]
    fn theta_round_trip(p in arb_poset(9)) {
        if is_wn(&p) {
            let t = theta(&p).unwrap();
            prop_assert_eq!(t.labels(), p.labels());
            prop_assert!(is_nabla_compatible(&t));
            prop_assert_eq!(theta_inverse(&t).unwrap(), p.clone());
            prop_assert_eq!(wn_factorize(&p).unwrap().recompose().unwrap(), p);
        }
    }

    #[test]
    fn compatible_posets_round_trip(p in arb_poset(9)) {
        if is_nabla_compatible(&p) {
            let t = theta_inverse(&p).unwrap();
            prop_assert!(is_wn(&t));
            prop_assert_eq!(theta(&t).unwrap(), p);
        }
    }
}
