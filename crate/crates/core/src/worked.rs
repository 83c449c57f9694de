//! A catalogue of hand-checked compositions, each recomputed on demand and
//! compared with its expected value.
//!
//! Labeled entries must agree exactly; class entries only up to isomorphism,
//! because the inputs carry unlabeled vertices. One entry records a known
//! disagreement with a published value and is reported, not failed.

use serde::Serialize;
use serde_json::{json, Value};

use crate::canon::{are_isomorphic, canon_key};
use crate::enumeration::{all_isoclasses, ClassFilter};
use crate::error::Result;
use crate::operad::{compose, compose_poset, Family};
use crate::poset::{poset, Poset};
use crate::species::FormalSum;
use crate::structure::theta;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    /// Disagrees with the expected value for a documented reason.
    KnownDiscrepancy,
}

#[derive(Debug, Clone, Serialize)]
pub struct WorkedExample {
    pub id: String,
    pub group: &'static str,
    pub description: String,
    pub computed: Value,
    pub expected: Value,
    pub status: Status,
}

impl WorkedExample {
    pub fn ok(&self) -> bool {
        self.status != Status::Mismatch
    }
}

fn sum_json(s: &FormalSum) -> Value {
    s.to_json()
}

fn class_json(p: &Poset) -> Value {
    json!({
        "poset": p.to_json(),
        "class": canon_key(p).map(|k| k.to_string()).unwrap_or_default(),
    })
}

fn labeled(id: &str, group: &'static str, description: String, computed: Poset, expected: Poset) -> WorkedExample {
    let status = if computed == expected {
        Status::Match
    } else {
        Status::Mismatch
    };
    WorkedExample {
        id: id.to_owned(),
        group,
        description,
        computed: computed.to_json(),
        expected: expected.to_json(),
        status,
    }
}

fn circ_examples() -> Result<Vec<WorkedExample>> {
    let cases = [
        (
            "circ-edge",
            poset("a b", "a<b"),
            "a",
            poset("1 2", "1<2"),
            vec![poset("1 2 b", "1<2 1<b"), poset("1 2 b", "1<2 2<b")],
        ),
        (
            "circ-chain",
            poset("a b c", "a<b b<c"),
            "b",
            poset("1 2", "1<2"),
            vec![
                poset("a 1 2 c", "a<1 1<2 2<c"),
                poset("a 1 2 c", "a<1 1<2 1<c"),
                poset("a 1 2 c", "a<2 1<2 2<c"),
                poset("a 1 2 c", "a<c a<2 1<c 1<2"),
                poset("a 1 2 c", "1<c 1<2 a<2"),
            ],
        ),
    ];
    let mut out = Vec::new();
    for (id, a, v, b, terms) in cases {
        let got = compose(Family::Circ, &a, v, &b)?;
        let want: FormalSum = terms.into_iter().collect();
        out.push(WorkedExample {
            id: id.to_owned(),
            group: "circ",
            description: format!("{a} ∘_{v} {b}"),
            computed: sum_json(&got),
            expected: sum_json(&want),
            status: if got == want { Status::Match } else { Status::Mismatch },
        });
    }
    Ok(out)
}

fn set_examples() -> Result<Vec<WorkedExample>> {
    let chain = poset("a b c", "a<b b<c");
    let edge = poset("1 2", "1<2");
    let cases = [
        (
            "bullet-chain",
            Family::Bullet,
            chain.clone(),
            "b",
            edge.clone(),
            poset("a 1 2 c", "a<1 1<2 2<c"),
        ),
        (
            "bullet-antichain",
            Family::Bullet,
            chain.clone(),
            "b",
            poset("1 2", ""),
            poset("a 1 2 c", "a<1 a<2 1<c 2<c"),
        ),
        (
            "compare-bullet",
            Family::Bullet,
            chain.clone(),
            "b",
            edge.clone(),
            poset("a 1 2 c", "a<1 1<2 2<c"),
        ),
        (
            "compare-down",
            Family::Down,
            chain.clone(),
            "b",
            edge.clone(),
            poset("a 1 2 c", "a<1 1<2 1<c"),
        ),
        (
            "compare-up",
            Family::Up,
            chain,
            "b",
            edge,
            poset("a 1 2 c", "a<2 1<2 2<c"),
        ),
    ];
    cases
        .into_iter()
        .map(|(id, f, a, v, b, want)| {
            let got = compose_poset(f, &a, v, &b)?;
            let group = if id.starts_with("compare") {
                "comparison"
            } else {
                "bullet"
            };
            Ok(labeled(id, group, format!("{a} {}_{v} {b}", f.symbol()), got, want))
        })
        .collect()
}

/// Thirteen compositions from the two-element chain reaching every
/// connected class on three and four points.
pub fn generation_identities() -> Vec<(Family, Poset, Poset, Poset)> {
    use Family::*;
    vec![
        (
            Bullet,
            poset("a 1", "a<1"),
            poset("b c", "b<c"),
            poset("a b c", "a<b b<c"),
        ),
        (
            Down,
            poset("1 b", "1<b"),
            poset("a c", "a<c"),
            poset("a b c", "a<c a<b"),
        ),
        (Up, poset("b 1", "b<1"), poset("c a", "c<a"), poset("a b c", "b<a c<a")),
        (
            Bullet,
            poset("1 c d", "1<c c<d"),
            poset("a b", "a<b"),
            poset("a b c d", "a<b b<c c<d"),
        ),
        (
            Down,
            poset("a 1 c", "a<1 1<c"),
            poset("b d", "b<d"),
            poset("a b c d", "a<b b<d b<c"),
        ),
        (
            Down,
            poset("1 b c", "1<b b<c"),
            poset("a d", "a<d"),
            poset("a b c d", "a<d a<b b<c"),
        ),
        (
            Down,
            poset("1 b c", "1<c 1<b"),
            poset("a d", "a<d"),
            poset("a b c d", "a<d a<c a<b"),
        ),
        (
            Up,
            poset("a 1 d", "a<1 1<d"),
            poset("b c", "b<c"),
            poset("a b c d", "b<c a<c c<d"),
        ),
        (
            Up,
            poset("a b 1", "a<b b<1"),
            poset("c d", "c<d"),
            poset("a b c d", "a<b b<d c<d"),
        ),
        (
            Up,
            poset("1 a b", "a<1 b<1"),
            poset("c d", "c<d"),
            poset("a b c d", "a<d b<d c<d"),
        ),
        (
            Up,
            poset("a 1 b", "a<1 a<b"),
            poset("d c", "d<c"),
            poset("a b c d", "a<b a<c d<c"),
        ),
        (
            Down,
            poset("1 b", "1<b"),
            poset("a c d", "a<c d<c"),
            poset("a b c d", "a<c d<c a<b d<b"),
        ),
        (
            Bullet,
            poset("a 1", "a<1"),
            poset("b c d", "c<b d<b"),
            poset("a b c d", "a<c a<d c<b d<b"),
        ),
    ]
}

fn generation_examples() -> Result<Vec<WorkedExample>> {
    generation_identities()
        .into_iter()
        .enumerate()
        .map(|(i, (f, a, b, want))| {
            let got = compose_poset(f, &a, "1", &b)?;
            Ok(labeled(
                &format!("generation-{:02}", i + 1),
                "generation",
                format!("{a} {}_1 {b}", f.symbol()),
                got,
                want,
            ))
        })
        .collect()
}

/// Nested insertions where moving the brackets changes the class.
/// Entries: outer family, inner family, outer `A`, `B`, expected class of
/// `(A *_a B) *'_b C`, expected class of `A *_a (B *'_b C)`; `C` is `p < q`.
fn mixed_rows() -> Vec<(Family, Family, Poset, Poset, Poset, Poset)> {
    use Family::*;
    vec![
        (
            Up,
            Bullet,
            poset("x a", "x<a"),
            poset("y b", "y<b"),
            poset("1 2 3 4", "1<3 2<3 3<4"),
            poset("1 2 3 4", "1<2 2<4 3<4"),
        ),
        (
            Down,
            Bullet,
            poset("a x", "a<x"),
            poset("b y", "b<y"),
            poset("1 2 3 4", "1<2 2<3 2<4"),
            poset("1 2 3 4", "1<2 1<3 3<4"),
        ),
        (
            Bullet,
            Up,
            poset("x a", "x<a"),
            poset("y b", "y<b"),
            poset("1 2 3 4", "1<2 2<4 3<4"),
            poset("1 2 3 4", "1<2 1<3 2<4 3<4"),
        ),
        (
            Down,
            Up,
            poset("a x", "a<x"),
            poset("y b", "y<b"),
            poset("1 2 3 4", "1<3 2<3 2<4"),
            poset("1 2 3 4", "1<3 1<4 2<3 2<4"),
        ),
        (
            Bullet,
            Down,
            poset("a x", "a<x"),
            poset("b y", "b<y"),
            poset("1 2 3 4", "1<2 1<3 3<4"),
            poset("1 2 3 4", "1<2 1<3 2<4 3<4"),
        ),
        (
            Up,
            Down,
            poset("x a", "x<a"),
            poset("b y", "b<y"),
            poset("1 2 3 4", "1<3 2<3 2<4"),
            poset("1 2 3 4", "1<3 1<4 2<3 2<4"),
        ),
    ]
}

fn mixed_examples() -> Result<Vec<WorkedExample>> {
    let c = poset("p q", "p<q");
    let mut out = Vec::new();
    for (i, (f, g, a, b, want_l, want_r)) in mixed_rows().into_iter().enumerate() {
        let lhs = compose_poset(g, &compose_poset(f, &a, "a", &b)?, "b", &c)?;
        let rhs = compose_poset(f, &a, "a", &compose_poset(g, &b, "b", &c)?)?;
        let ok = are_isomorphic(&lhs, &want_l) && are_isomorphic(&rhs, &want_r) && !are_isomorphic(&lhs, &rhs);
        out.push(WorkedExample {
            id: format!("bracketing-{}", i + 1),
            group: "bracketing",
            description: format!(
                "({a} {}_a {b}) {}_b {c}  vs  {a} {}_a ({b} {}_b {c})",
                f.symbol(),
                g.symbol(),
                f.symbol(),
                g.symbol()
            ),
            computed: json!({"left": class_json(&lhs), "right": class_json(&rhs)}),
            expected: json!({"left": class_json(&want_l), "right": class_json(&want_r)}),
            status: if ok { Status::Match } else { Status::Mismatch },
        });
    }
    Ok(out)
}

/// Every class on four points except the one named, as literal posets.
fn four_point_classes_without(excluded: &Poset) -> Vec<Poset> {
    [
        poset("1 2 3 4", ""),
        poset("1 2 3 4", "1<2"),
        poset("1 2 3 4", "1<2 3<4"),
        poset("1 2 3 4", "1<2 1<3"),
        poset("1 2 3 4", "1<2 2<3"),
        poset("1 2 3 4", "1<3 2<3"),
        poset("1 2 3 4", "1<2 2<3 3<4"),
        poset("1 2 3 4", "1<2 2<3 2<4"),
        poset("1 2 3 4", "1<2 1<3 1<4"),
        poset("1 2 3 4", "1<2 1<3 3<4"),
        poset("1 2 3 4", "1<4 2<4 3<4"),
        poset("1 2 3 4", "1<2 2<4 3<4"),
        poset("1 2 3 4", "1<3 2<3 3<4"),
        poset("1 2 3 4", "1<3 2<3 2<4"),
        poset("1 2 3 4", "1<3 1<4 2<3 2<4"),
        poset("1 2 3 4", "1<2 1<3 2<4 3<4"),
    ]
    .into_iter()
    .filter(|p| !are_isomorphic(p, excluded))
    .collect()
}

fn list_examples() -> Result<Vec<WorkedExample>> {
    let n = poset("1 2 3 4", "1<3 2<3 2<4");
    let p42 = poset("1 2 3 4", "1<2 2<4 3<4");
    let mut out = Vec::new();
    for (id, filter, excluded) in [
        ("wn-classes-4", ClassFilter::Wn, n),
        ("nabla-classes-4", ClassFilter::Nabla, p42),
    ] {
        let got: Vec<String> = all_isoclasses(4, filter)?
            .into_iter()
            .map(|c| c.key.to_string())
            .collect();
        let mut want: Vec<String> = four_point_classes_without(&excluded)
            .iter()
            .map(|p| canon_key(p).map(|k| k.to_string()))
            .collect::<Result<_>>()?;
        want.sort();
        out.push(WorkedExample {
            id: id.to_owned(),
            group: "class-lists",
            description: format!("{filter:?} classes on four points"),
            status: if got == want { Status::Match } else { Status::Mismatch },
            computed: json!(got),
            expected: json!(want),
        });
    }
    Ok(out)
}

fn theta_example() -> Result<WorkedExample> {
    let p = poset("1 2 3 4", "1<2 2<4 3<4");
    let got = theta(&p)?;
    // Published image; the recursion with the fixed ∇ convention differs.
    let published = poset("1 2 3 4", "1<2 1<4 3<4");
    Ok(WorkedExample {
        id: "theta-p42".to_owned(),
        group: "theta",
        description: format!("theta({p})"),
        computed: class_json(&got),
        expected: class_json(&published),
        status: if got == published {
            Status::Match
        } else {
            Status::KnownDiscrepancy
        },
    })
}

/// Every catalogued example, in a fixed order.
pub fn worked_examples() -> Result<Vec<WorkedExample>> {
    let mut all = circ_examples()?;
    all.extend(set_examples()?);
    all.extend(generation_examples()?);
    all.extend(mixed_examples()?);
    all.extend(list_examples()?);
    all.push(theta_example()?);
    Ok(all)
}
