//! Partial compositions of posets.
//!
//! Inserting `B` into `A` at the vertex `a` produces structures on
//! `A ⊔_a B = (A \ {a}) ⊔ B`. Four families are provided:
//!
//! * [`Family::Bullet`]: everything below `a` goes below all of `B`, all of
//!   `B` goes below everything above `a`;
//! * [`Family::Down`]: as `Bullet`, but only the minima of `B` go below the
//!   elements above `a`;
//! * [`Family::Up`]: as `Bullet`, but only the maxima of `B` go above the
//!   elements below `a`;
//! * [`Family::Circ`]: the formal sum of every order on `A ⊔_a B` that
//!   restricts to `B`, keeps `B` convex and collapses back onto `A`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::{self, antitone_families, bit, ones};
use crate::enumeration::all_posets;
use crate::error::{Error, Result};
use crate::poset::{Label, Poset, Sorter};
use crate::report::{Failure, VerificationReport};
use crate::species::FormalSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Circ,
    Bullet,
    Down,
    Up,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Circ, Family::Bullet, Family::Down, Family::Up];
    pub const SET: [Family; 3] = [Family::Bullet, Family::Down, Family::Up];

    pub fn name(self) -> &'static str {
        match self {
            Family::Circ => "circ",
            Family::Bullet => "bullet",
            Family::Down => "down",
            Family::Up => "up",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Family::Circ => "∘",
            Family::Bullet => "•",
            Family::Down => "▼",
            Family::Up => "▲",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circ" => Ok(Family::Circ),
            "bullet" => Ok(Family::Bullet),
            "down" => Ok(Family::Down),
            "up" => Ok(Family::Up),
            other => Err(Error::Document(format!("unknown family `{other}`"))),
        }
    }
}

/// An inner poset about to replace one vertex of an outer poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionSite {
    outer: Poset,
    vertex: Label,
    inner: Poset,
    renamed: BTreeMap<Label, Label>,
}

impl InsertionSite {
    /// Inner labels that collide with the rest of `outer` get primed until
    /// fresh; the renaming is kept in [`InsertionSite::renamed`].
    pub fn new(outer: Poset, vertex: impl Into<Label>, inner: Poset) -> Result<Self> {
        let vertex = vertex.into();
        if !outer.contains(vertex.as_str()) {
            return Err(Error::VertexNotFound(vertex));
        }
        if inner.is_empty() {
            return Err(Error::EmptyInner);
        }
        let taken: BTreeSet<&Label> = outer.labels().iter().filter(|l| **l != vertex).collect();
        let mut renamed = BTreeMap::new();
        if inner.labels().iter().any(|l| taken.contains(l)) {
            let mut used: BTreeSet<Label> = taken.iter().map(|l| (*l).clone()).collect();
            used.extend(inner.labels().iter().cloned());
            for l in inner.labels() {
                if taken.contains(l) {
                    let mut fresh = l.primed();
                    while used.contains(&fresh) {
                        fresh = fresh.primed();
                    }
                    used.insert(fresh.clone());
                    renamed.insert(l.clone(), fresh);
                }
            }
        }
        let inner = if renamed.is_empty() {
            inner
        } else {
            inner.relabel(&renamed)?
        };
        Ok(InsertionSite {
            outer,
            vertex,
            inner,
            renamed,
        })
    }

    pub fn outer(&self) -> &Poset {
        &self.outer
    }

    pub fn vertex(&self) -> &Label {
        &self.vertex
    }

    /// The inner poset after any renaming.
    pub fn inner(&self) -> &Poset {
        &self.inner
    }

    /// Original inner label to the label used in the result.
    pub fn renamed(&self) -> &BTreeMap<Label, Label> {
        &self.renamed
    }

    pub fn compose(&self, family: Family) -> FormalSum {
        match family {
            Family::Circ => compose_circ(self),
            set => FormalSum::term(compose_set(self, set)),
        }
    }

    fn layout(&self) -> Layout {
        let a = self
            .outer
            .index_of(self.vertex.as_str())
            .expect("vertex checked at construction");
        let rest = self.outer.all_mask() & !bit(a);
        let orows = self.outer.rows();
        let outer_idx: Vec<usize> = ones(rest).collect();
        let below = outer_idx
            .iter()
            .enumerate()
            .filter(|(_, &i)| orows[i] & bit(a) != 0)
            .fold(0u64, |acc, (p, _)| acc | bit(p));
        let above = outer_idx
            .iter()
            .enumerate()
            .filter(|(_, &i)| orows[a] & bit(i) != 0)
            .fold(0u64, |acc, (p, _)| acc | bit(p));
        let mut labels: Vec<Label> = outer_idx.iter().map(|&i| self.outer.labels()[i].clone()).collect();
        labels.extend(self.inner.labels().iter().cloned());
        Layout {
            k: outer_idx.len(),
            rows: bits::restrict(orows, rest),
            below,
            above,
            labels,
        }
    }
}

/// Outer points other than the vertex occupy positions `0..k`, inner points
/// follow from `k`.
struct Layout {
    k: usize,
    rows: Vec<u64>,
    below: u64,
    above: u64,
    labels: Vec<Label>,
}

fn compose_set(site: &InsertionSite, family: Family) -> Poset {
    let lay = site.layout();
    let inner = site.inner.rows();
    let k = lay.k;
    let all_b = bits::full(inner.len());
    let (lower_target, upper_source) = match family {
        Family::Bullet => (all_b, all_b),
        Family::Down => (all_b, bits::minima(inner, all_b)),
        Family::Up => (bits::maxima(inner, all_b), all_b),
        Family::Circ => unreachable!("circ is not a set family"),
    };
    let mut rows = Vec::with_capacity(k + inner.len());
    for p in 0..k {
        let mut r = lay.rows[p];
        if lay.below & bit(p) != 0 {
            r |= lower_target << k;
        }
        rows.push(r);
    }
    for (i, &r) in inner.iter().enumerate() {
        let mut r = r << k;
        if upper_source & bit(i) != 0 {
            r |= lay.above;
        }
        rows.push(r);
    }
    debug_assert!(bits::is_partial_order(&rows));
    Poset::from_rows(lay.labels, rows)
}

/// `A • _a B`.
pub fn compose_bullet(site: &InsertionSite) -> Poset {
    compose_set(site, Family::Bullet)
}

/// `A ▼_a B`.
pub fn compose_down(site: &InsertionSite) -> Poset {
    compose_set(site, Family::Down)
}

/// `A ▲_a B`.
pub fn compose_up(site: &InsertionSite) -> Poset {
    compose_set(site, Family::Up)
}

/// `A ∘_a B`: one term for every admissible order.
///
/// An admissible order is fixed by three choices. Each `x` below `a` picks a
/// nonempty up-set `S_x` of `B` (the part of `B` above `x`), antitone in `x`;
/// each `y` above `a` picks a nonempty down-set `T_y` of `B`, isotone in `y`;
/// and each `x` below `a` keeps an up-set `E_x` of the elements above `a`
/// it stays below, antitone in `x` and containing every pair forced by
/// transitivity, through `B` or through an element incomparable to `a`.
pub fn compose_circ(site: &InsertionSite) -> FormalSum {
    let lay = site.layout();
    let inner = site.inner.rows();
    let k = lay.k;
    let all_b = bits::full(inner.len());
    let a_rows = &lay.rows;
    let lower: Vec<usize> = ones(lay.below).collect();
    let upper: Vec<usize> = ones(lay.above).collect();
    let middle = bits::full(k) & !lay.below & !lay.above;

    let up_sets: Vec<u64> = bits::up_closed_subsets(inner, all_b)
        .into_iter()
        .filter(|&s| s != 0)
        .collect();
    let down_sets: Vec<u64> = bits::down_closed_subsets(inner, all_b)
        .into_iter()
        .filter(|&s| s != 0)
        .collect();
    let e_options = bits::up_closed_subsets(a_rows, lay.above);
    // Pairs x < y forced through an element incomparable to the vertex.
    let via_middle: Vec<u64> = (0..k)
        .map(|x| ones(a_rows[x] & middle).fold(0u64, |acc, z| acc | a_rows[z]) & lay.above)
        .collect();

    let leq = |x: usize, y: usize| a_rows[x] & bit(y) != 0;
    let geq = |x: usize, y: usize| a_rows[y] & bit(x) != 0;
    let sorter = Sorter::new(&lay.labels);
    let mut out = FormalSum::new();

    antitone_families(&lower, &leq, &up_sets, &|_| 0, &mut |s_sets| {
        antitone_families(&upper, &geq, &down_sets, &|_| 0, &mut |t_sets| {
            let s_of = |x: usize| s_sets[lower.iter().position(|&l| l == x).unwrap()];
            let forced = |x: usize| {
                let s = s_of(x);
                upper
                    .iter()
                    .zip(t_sets)
                    .filter(|(_, &t)| t & s != 0)
                    .fold(via_middle[x], |acc, (&y, _)| acc | bit(y))
            };
            antitone_families(&lower, &leq, &e_options, &forced, &mut |e_sets| {
                let mut rows = Vec::with_capacity(k + inner.len());
                for p in 0..k {
                    let mut r = a_rows[p];
                    if let Some(pos) = lower.iter().position(|&l| l == p) {
                        r &= !(lay.above & !e_sets[pos]);
                        r |= s_sets[pos] << k;
                    }
                    rows.push(r);
                }
                for (i, &r) in inner.iter().enumerate() {
                    let mut r = r << k;
                    for (&y, &t) in upper.iter().zip(t_sets) {
                        if t & bit(i) != 0 {
                            r |= bit(y);
                        }
                    }
                    rows.push(r);
                }
                out.add_term(sorter.build(&rows), 1);
            });
        });
    });
    out
}

/// Compose in any family; set families give a one-term sum.
pub fn compose(family: Family, outer: &Poset, vertex: &str, inner: &Poset) -> Result<FormalSum> {
    Ok(InsertionSite::new(outer.clone(), vertex, inner.clone())?.compose(family))
}

/// Compose in a set family.
pub fn compose_poset(family: Family, outer: &Poset, vertex: &str, inner: &Poset) -> Result<Poset> {
    assert!(family != Family::Circ, "circ compositions are formal sums");
    let site = InsertionSite::new(outer.clone(), vertex, inner.clone())?;
    Ok(compose_set(&site, family))
}

/// Bilinear extension of a composition to formal sums.
pub fn compose_sums(family: Family, x: &FormalSum, vertex: &str, y: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::new();
    for (p, c) in x.iter() {
        for (q, d) in y.iter() {
            let site = InsertionSite::new(p.clone(), vertex, q.clone())?;
            out.add_scaled(&site.compose(family), c * d);
        }
    }
    Ok(out)
}

/// `outer ∘ (B, C) = (outer ∘_1 B) ∘_2 C` for a poset on `{1, 2}`; the other
/// evaluation order is computed as well and must agree.
pub fn compose_pair(outer2: &Poset, family: Family, b: &Poset, c: &Poset) -> Result<FormalSum> {
    let names: Vec<&str> = outer2.labels().iter().map(Label::as_str).collect();
    if names != ["1", "2"] {
        return Err(Error::NotBinary);
    }
    if let Some(l) = c.labels().iter().find(|l| b.contains(l.as_str())) {
        return Err(Error::LabelClash(l.clone()));
    }
    let mut l1 = Label::new("1");
    let mut l2 = Label::new("2");
    let clash = |l: &Label| b.contains(l.as_str()) || c.contains(l.as_str());
    while clash(&l1) || clash(&l2) {
        l1 = l1.primed();
        l2 = l2.primed();
    }
    let map = BTreeMap::from([(Label::new("1"), l1.clone()), (Label::new("2"), l2.clone())]);
    let outer = FormalSum::term(outer2.relabel(&map)?);
    let (bs, cs) = (FormalSum::term(b.clone()), FormalSum::term(c.clone()));
    let first = compose_sums(
        family,
        &compose_sums(family, &outer, l1.as_str(), &bs)?,
        l2.as_str(),
        &cs,
    )?;
    let second = compose_sums(
        family,
        &compose_sums(family, &outer, l2.as_str(), &cs)?,
        l1.as_str(),
        &bs,
    )?;
    assert_eq!(first, second, "evaluation orders disagree");
    Ok(first)
}

fn ensure_disjoint(a: &Poset, skip: &[&str], b: &Poset) -> Result<()> {
    match b
        .labels()
        .iter()
        .find(|l| a.contains(l.as_str()) && !skip.contains(&l.as_str()))
    {
        Some(l) => Err(Error::LabelClash(l.clone())),
        None => Ok(()),
    }
}

fn ensure_vertex(p: &Poset, v: &str) -> Result<()> {
    if p.contains(v) {
        Ok(())
    } else {
        Err(Error::VertexNotFound(Label::new(v)))
    }
}

/// `(A ∗_a B) ∗_{a'} C = (A ∗_{a'} C) ∗_a B`. Labels must be disjoint apart
/// from the two vertices.
pub fn verify_parallel(family: Family, a: &Poset, b: &Poset, c: &Poset, v: &str, w: &str) -> Result<bool> {
    parallel_sides(family, a, b, c, v, w).map(|(l, r)| l == r)
}

fn parallel_sides(family: Family, a: &Poset, b: &Poset, c: &Poset, v: &str, w: &str) -> Result<(FormalSum, FormalSum)> {
    ensure_vertex(a, v)?;
    ensure_vertex(a, w)?;
    if v == w {
        return Err(Error::LabelClash(Label::new(v)));
    }
    ensure_disjoint(a, &[v, w], b)?;
    ensure_disjoint(a, &[v, w], c)?;
    ensure_disjoint(b, &[], c)?;
    let (xa, xb, xc) = (
        FormalSum::term(a.clone()),
        FormalSum::term(b.clone()),
        FormalSum::term(c.clone()),
    );
    let lhs = compose_sums(family, &compose_sums(family, &xa, v, &xb)?, w, &xc)?;
    let rhs = compose_sums(family, &compose_sums(family, &xa, w, &xc)?, v, &xb)?;
    Ok((lhs, rhs))
}

/// `(A ∗_a B) ∗_b C = A ∗_a (B ∗_b C)` with `b` a vertex of `B`.
pub fn verify_nested(family: Family, a: &Poset, b: &Poset, c: &Poset, v: &str, w: &str) -> Result<bool> {
    nested_sides(family, a, b, c, v, w).map(|(l, r)| l == r)
}

fn nested_sides(family: Family, a: &Poset, b: &Poset, c: &Poset, v: &str, w: &str) -> Result<(FormalSum, FormalSum)> {
    ensure_vertex(a, v)?;
    ensure_vertex(b, w)?;
    ensure_disjoint(a, &[v], b)?;
    ensure_disjoint(a, &[v], c)?;
    ensure_disjoint(b, &[w], c)?;
    let (xa, xb, xc) = (
        FormalSum::term(a.clone()),
        FormalSum::term(b.clone()),
        FormalSum::term(c.clone()),
    );
    let lhs = compose_sums(family, &compose_sums(family, &xa, v, &xb)?, w, &xc)?;
    let rhs = compose_sums(family, &xa, v, &compose_sums(family, &xb, w, &xc)?)?;
    Ok((lhs, rhs))
}

/// The three mixed laws at distinct vertices `a`, `b` of `A`:
/// `(A▲_aB)•_bC = (A•_bC)▲_aB`, `(A▼_aB)•_bC = (A•_bC)▼_aB` and
/// `(A▼_aB)▲_bC = (A▲_bC)▼_aB`.
pub fn verify_mixed_compat(a: &Poset, b: &Poset, c: &Poset, va: &str, vb: &str) -> Result<(bool, bool, bool)> {
    let sides = mixed_sides(a, b, c, va, vb)?;
    Ok((
        sides[0].0 == sides[0].1,
        sides[1].0 == sides[1].1,
        sides[2].0 == sides[2].1,
    ))
}

fn mixed_sides(a: &Poset, b: &Poset, c: &Poset, va: &str, vb: &str) -> Result<Vec<(Poset, Poset)>> {
    ensure_vertex(a, va)?;
    ensure_vertex(a, vb)?;
    if va == vb {
        return Err(Error::LabelClash(Label::new(va)));
    }
    ensure_disjoint(a, &[va, vb], b)?;
    ensure_disjoint(a, &[va, vb], c)?;
    ensure_disjoint(b, &[], c)?;
    let law = |f: Family, g: Family| -> Result<(Poset, Poset)> {
        let lhs = compose_poset(g, &compose_poset(f, a, va, b)?, vb, c)?;
        let rhs = compose_poset(f, &compose_poset(g, a, vb, c)?, va, b)?;
        Ok((lhs, rhs))
    };
    Ok(vec![
        law(Family::Up, Family::Bullet)?,
        law(Family::Down, Family::Bullet)?,
        law(Family::Down, Family::Up)?,
    ])
}

/// Reversal fixes `•` and swaps `▼` with `▲`.
pub fn involution_exchange(a: &Poset, b: &Poset, vertex: &str) -> Result<bool> {
    let (ao, bo) = (a.opposite(), b.opposite());
    let pairs = [
        (Family::Bullet, Family::Bullet),
        (Family::Down, Family::Up),
        (Family::Up, Family::Down),
    ];
    for (f, g) in pairs {
        let lhs = compose_poset(f, a, vertex, b)?.opposite();
        let rhs = compose_poset(g, &ao, vertex, &bo)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every labeled poset with `1..=max` elements on labels `prefix1, prefix2, …`.
pub fn labeled_grid(prefix: &str, min: usize, max: usize) -> Vec<Poset> {
    (min..=max)
        .flat_map(|n| {
            let mut v = Vec::new();
            all_posets(n, &mut |p: &Poset| v.push(p.prefixed(prefix)))
                .expect("grid sizes are within the enumeration cap");
            v
        })
        .collect()
}

/// Both associativity laws for `family` over every labeled `A`, `B`, `C` with
/// at most `max_n` elements and every choice of vertices.
pub fn verify_axioms(family: Family, max_n: usize) -> VerificationReport {
    let a_grid = labeled_grid("a", 1, max_n);
    let b_grid = labeled_grid("b", 1, max_n);
    let c_grid = labeled_grid("c", 1, max_n);

    let mut parallel_cases = Vec::new();
    let mut nested_cases = Vec::new();
    for a in &a_grid {
        for v in a.labels() {
            for w in a.labels() {
                if v != w {
                    parallel_cases.push((a, v.clone(), w.clone()));
                }
            }
            for b in &b_grid {
                for bw in b.labels() {
                    nested_cases.push((a, v.clone(), b, bw.clone()));
                }
            }
        }
    }
    // Inner compositions are shared by many cases, so each is computed once
    // per case rather than once per third operand. The grids carry disjoint
    // label prefixes, so no clash checks are needed.
    let term = |p: &Poset| FormalSum::term(p.clone());
    let mut report = VerificationReport::run(
        &format!("{family} parallel associativity"),
        &parallel_cases,
        |(a, v, w)| {
            let xa = term(a);
            let with_c = c_grid
                .iter()
                .map(|c| compose_sums(family, &xa, w.as_str(), &term(c)))
                .collect::<Result<Vec<_>>>()?;
            let mut fails = Vec::new();
            for b in &b_grid {
                let with_b = compose_sums(family, &xa, v.as_str(), &term(b))?;
                for (c, ac) in c_grid.iter().zip(&with_c) {
                    let lhs = compose_sums(family, &with_b, w.as_str(), &term(c))?;
                    let rhs = compose_sums(family, ac, v.as_str(), &term(b))?;
                    if lhs != rhs {
                        fails.push(Failure::new(format!("A={a} at {v}, {w}; B={b}; C={c}"), &lhs, &rhs));
                    }
                }
            }
            Ok((b_grid.len() * c_grid.len(), fails))
        },
    );
    report.absorb(VerificationReport::run(
        &format!("{family} nested associativity"),
        &nested_cases,
        |(a, v, b, w)| {
            let xa = term(a);
            let ab = compose_sums(family, &xa, v.as_str(), &term(b))?;
            let mut fails = Vec::new();
            for c in &c_grid {
                let lhs = compose_sums(family, &ab, w.as_str(), &term(c))?;
                let bc = compose_sums(family, &term(b), w.as_str(), &term(c))?;
                let rhs = compose_sums(family, &xa, v.as_str(), &bc)?;
                if lhs != rhs {
                    fails.push(Failure::new(format!("A={a} at {v}; B={b} at {w}; C={c}"), &lhs, &rhs));
                }
            }
            Ok((c_grid.len(), fails))
        },
    ));
    report.suite = format!("{family} associativity");
    report
}

/// The three mixed laws for every `A` with `2..=max_a` elements, every `B`,
/// `C` with at most `max_bc` elements and every ordered vertex pair.
pub fn verify_mixed(max_a: usize, max_bc: usize) -> VerificationReport {
    let a_grid = labeled_grid("a", 2, max_a);
    let b_grid = labeled_grid("b", 1, max_bc);
    let c_grid = labeled_grid("c", 1, max_bc);
    let mut cases = Vec::new();
    for a in &a_grid {
        for v in a.labels() {
            for w in a.labels() {
                if v != w {
                    cases.push((a, v.clone(), w.clone()));
                }
            }
        }
    }
    VerificationReport::run("mixed compatibilities", &cases, |(a, v, w)| {
        let mut fails = Vec::new();
        let mut count = 0;
        for b in &b_grid {
            for c in &c_grid {
                for (i, (lhs, rhs)) in mixed_sides(a, b, c, v.as_str(), w.as_str())?.into_iter().enumerate() {
                    count += 1;
                    if lhs != rhs {
                        fails.push(Failure::new(
                            format!("law {}: A={a} at {v}, {w}; B={b}; C={c}", i + 1),
                            &lhs,
                            &rhs,
                        ));
                    }
                }
            }
        }
        Ok((count, fails))
    })
}

/// Reversal against every family, for `A`, `B` with at most `max_n` elements.
pub fn verify_involution(max_n: usize) -> VerificationReport {
    let a_grid = labeled_grid("a", 1, max_n);
    let b_grid = labeled_grid("b", 1, max_n);
    let mut cases = Vec::new();
    for a in &a_grid {
        for v in a.labels() {
            cases.push((a, v.clone()));
        }
    }
    VerificationReport::run("involution", &cases, |(a, v)| {
        let mut fails = Vec::new();
        for b in &b_grid {
            if !involution_exchange(a, b, v.as_str())? {
                fails.push(Failure::text(format!("A={a} at {v}; B={b}"), "", ""));
            }
        }
        Ok((b_grid.len(), fails))
    })
}
