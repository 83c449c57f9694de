use poset_operads::canon::canon_key;
use poset_operads::hopf::{
    coproduct_delta, coproduct_delta_star, pairing, prod_down_tri, prod_m, prod_ordinal, prod_star, prod_up_tri,
    product, tensor, verify_bialgebra, verify_coalgebra, verify_gram, verify_infinitesimal, verify_nap,
    verify_opposite_duality, verify_products, ClassSum, Product,
};
use poset_operads::{poset, CanonKey, Poset};

fn class(elements: &str, relations: &str) -> ClassSum {
    ClassSum::of(&poset(elements, relations)).unwrap()
}

fn key(elements: &str, relations: &str) -> CanonKey {
    canon_key(&poset(elements, relations)).unwrap()
}

#[test]
fn star_cube_of_a_point() {
    let dot = class("a", "");
    let cube = prod_star(&prod_star(&dot, &dot), &dot);
    assert_eq!(cube, prod_star(&dot, &prod_star(&dot, &dot)));
    // Orders on 1, 2, 3 where every relation goes from a smaller index to a
    // larger one: seven in all.
    let expected: ClassSum = [
        (key("a b c", ""), 1),
        (key("a b c", "a<b"), 3),
        (key("a b c", "a<b a<c"), 1),
        (key("a b c", "a<c b<c"), 1),
        (key("a b c", "a<b b<c"), 1),
    ]
    .into_iter()
    .collect();
    assert_eq!(cube, expected);
}

#[test]
fn triangle_products() {
    let dot = class("a", "");
    let edge = class("a b", "a<b");
    assert_eq!(prod_up_tri(&dot, &dot), edge);
    assert_eq!(prod_down_tri(&dot, &dot), edge);
    assert_eq!(prod_ordinal(&edge, &dot), class("a b c", "a<b b<c"));
    assert_eq!(prod_m(&dot, &edge), class("a b c", "b<c"));
    let nested = prod_up_tri(&dot, &prod_up_tri(&dot, &dot));
    assert_eq!(nested, prod_up_tri(&prod_m(&dot, &dot), &dot));
    assert_eq!(nested, class("a b c", "a<c b<c"));
    // Mixed sizes.
    let lhs = prod_down_tri(&edge, &prod_down_tri(&dot, &dot));
    assert_eq!(lhs, prod_down_tri(&prod_m(&edge, &dot), &dot));
    assert_eq!(lhs, prod_down_tri(&dot, &prod_down_tri(&edge, &dot)));
}

#[test]
fn coproduct_examples() {
    let one = ClassSum::term(CanonKey::EMPTY);
    let dot = class("a", "");
    assert_eq!(coproduct_delta(&dot), &tensor(&dot, &one) + &tensor(&one, &dot));
    let edge = class("a b", "a<b");
    let mut expected = &tensor(&edge, &one) + &tensor(&one, &edge);
    expected.add_scaled(&tensor(&dot, &dot), 1);
    assert_eq!(coproduct_delta_star(&edge), expected);
    // The lower part goes on the left.
    let chain = class("a b c", "a<b b<c");
    let d = coproduct_delta_star(&chain);
    assert_eq!(d.coefficient(&(key("a", ""), key("a b", "a<b"))), 1);
    assert_eq!(d.coefficient(&(key("a b", "a<b"), key("a", ""))), 1);
    let v = class("a b c", "a<b a<c");
    let d = coproduct_delta_star(&v);
    assert_eq!(d.coefficient(&(key("a", ""), key("a b", ""))), 1);
    assert_eq!(d.coefficient(&(key("a b", ""), key("a", ""))), 0);
}

#[test]
fn ideal_count_of_n() {
    let n = poset("x y z t", "x<z y<z y<t");
    let labels: Vec<&str> = n.labels().iter().map(|l| l.as_str()).collect();
    // Up-sets by brute force.
    let ups = (0u32..16)
        .filter(|m| {
            (0..4).all(|i| m & (1 << i) == 0 || (0..4).all(|j| !n.leq(labels[i], labels[j]) || m & (1 << j) != 0))
        })
        .count() as i64;
    let d = coproduct_delta_star(&ClassSum::of(&n).unwrap());
    let total: i64 = d.iter().map(|(_, c)| c).sum();
    assert_eq!(total, ups);
}

#[test]
fn pairing_examples() {
    assert_eq!(pairing(&class("a b c", "a<b b<c"), &class("a b c", "a<b b<c")), 1);
    assert_eq!(pairing(&class("a b c", ""), &class("a b c", "")), 6);
    assert_eq!(pairing(&class("a b", "a<b"), &class("a b", "")), 0);
}

#[test]
fn duality_pairs_star_with_cuts() {
    // ⟨•*•, edge⟩ is 1 and so is ⟨•⊗•, Δ*(edge)⟩, while Δ(edge) has no
    // •⊗• term: `*` is dual to Δ*, not to Δ.
    let dot = class("a", "");
    let edge = class("a b", "a<b");
    assert_eq!(pairing(&prod_star(&dot, &dot), &edge), 1);
    assert_eq!(
        coproduct_delta_star(&edge).coefficient(&(key("a", ""), key("a", ""))),
        1
    );
    assert_eq!(coproduct_delta(&edge).coefficient(&(key("a", ""), key("a", ""))), 0);
}

#[test]
fn every_product_is_graded_and_unital() {
    let one = ClassSum::term(CanonKey::EMPTY);
    let x = class("a b c", "a<b");
    for op in Product::ALL {
        assert_eq!(product(op, &one, &x), x, "{op}");
        assert_eq!(product(op, &x, &one), x, "{op}");
    }
}

#[test]
fn opposite_exchanges_triangles() {
    let opp = |s: &ClassSum| -> ClassSum { s.map(|k| ClassSum::term(canon_key(&k.poset().opposite()).unwrap())) };
    let pair = class("a b", "");
    let dot = class("a", "");
    assert_eq!(prod_down_tri(&pair, &dot), opp(&prod_up_tri(&opp(&pair), &opp(&dot))));
    assert!(verify_opposite_duality(2).unwrap().passed());
}

#[test]
fn suites_at_size_three() {
    for report in [
        verify_products(3).unwrap(),
        verify_nap(3).unwrap(),
        verify_coalgebra(3).unwrap(),
        verify_bialgebra(3).unwrap(),
        verify_infinitesimal(3).unwrap(),
        verify_gram(3).unwrap(),
    ] {
        assert!(report.passed(), "{report}");
        assert!(report.cases > 0);
    }
}

#[test]
fn json_shapes() {
    let x = prod_star(&class("a", ""), &class("a", ""));
    let v = x.to_json();
    assert_eq!(v.as_array().unwrap().len(), 2);
    let p = Poset::from_json(&v[0]["poset"].to_string()).unwrap();
    assert_eq!(p.len(), 2);
    let t = coproduct_delta(&class("a b", "")).to_json();
    assert_eq!(t.as_array().unwrap().len(), 3);
    assert!(t[0]["left"]["class"].is_string());
}
