//! N-free posets, nabla-compatible posets and the bijection between them.
//!
//! Throughout, `A ∇ B` is the disjoint union of `A` and `B` with every
//! minimal element of `B` placed below every element of `A`. On the
//! operad side this product is realised by the poset `2 < 1` on `{1, 2}`
//! under `▼`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::{self, bit, ones};
use crate::canon::{canon_key, CanonKey, CANON_LIMIT};
use crate::error::{Error, Result};
use crate::operad::{compose_poset, Family};
use crate::poset::{poset, Label, Poset};
use crate::report::VerificationReport;

/// `x < z`, `y < z`, `y < t`, nothing else.
pub fn n_poset() -> Poset {
    poset("x y z t", "x<z y<z y<t")
}

/// Whether `p` has no induced copy of the N poset.
pub fn is_wn(p: &Poset) -> bool {
    let up = p.rows();
    let down = bits::transpose(up);
    let comparable: Vec<u64> = up.iter().zip(&down).map(|(u, d)| u | d).collect();
    for y in 0..up.len() {
        let above = up[y] & !bit(y);
        for z in ones(above) {
            for t in ones(above & !comparable[z]) {
                // x below z only, unrelated to y and t
                if down[z] & !bit(z) & !comparable[y] & !comparable[t] != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// `a ↓ b`: all of `a` below all of `b`.
pub fn ordinal_sum(a: &Poset, b: &Poset) -> Result<Poset> {
    a.juxtapose(b, |_, _| true)
}

/// `a ∇ b`: the minimal elements of `b` below all of `a`.
pub fn nabla(a: &Poset, b: &Poset) -> Result<Poset> {
    let mins = bits::minima(b.rows(), b.all_mask());
    b.juxtapose(a, |i, _| mins & bit(i) != 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    /// `factors[0] ↓ factors[1] ↓ …`
    Ordinal,
    /// `factors[0] ∇ factors[1]`, the `b` and `r` parts.
    Br,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub kind: FactorKind,
    pub factors: Vec<Poset>,
}

impl Factorization {
    /// Reassemble the factored poset.
    pub fn recompose(&self) -> Result<Poset> {
        match self.kind {
            FactorKind::Ordinal => {
                let mut it = self.factors.iter();
                let first = it.next().cloned().unwrap_or_else(Poset::empty);
                it.try_fold(first, |acc, f| ordinal_sum(&acc, f))
            }
            FactorKind::Br => nabla(&self.factors[0], &self.factors[1]),
        }
    }
}

/// Finest decomposition `p = p1 ↓ … ↓ pk` into nonempty factors.
pub fn ordinal_factors(p: &Poset) -> Vec<Poset> {
    let rows = p.rows();
    let mut rest = p.all_mask();
    let mut out = Vec::new();
    while rest != 0 {
        let m = ones(bits::minima(rows, rest)).next().expect("nonempty rest");
        // Anything not strictly above a member must join it.
        let mut factor = bit(m);
        loop {
            let grow = ones(factor).fold(0u64, |acc, f| acc | (rest & !(rows[f] & !bit(f))));
            let next = factor | grow;
            if next == factor {
                break;
            }
            factor = next;
        }
        out.push(p.restrict_mask(factor));
        rest &= !factor;
    }
    out
}

/// The factorization of an N-free poset into factors that are single points
/// or disconnected.
pub fn wn_factorize(p: &Poset) -> Result<Factorization> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    if !is_wn(p) {
        return Err(Error::NotWn);
    }
    let f = Factorization {
        kind: FactorKind::Ordinal,
        factors: ordinal_factors(p),
    };
    debug_assert_eq!(f.recompose().as_ref(), Ok(p));
    Ok(f)
}

/// `(b, r)`: `b` holds the points strictly above every minimal point.
pub fn br_split(p: &Poset) -> Result<(Poset, Poset)> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let rows = p.rows();
    let all = p.all_mask();
    let above_all = ones(bits::minima(rows, all)).fold(all, |acc, m| acc & rows[m] & !bit(m));
    Ok((p.restrict_mask(above_all), p.restrict_mask(all & !above_all)))
}

pub fn br_factorization(p: &Poset) -> Result<Factorization> {
    let (b, r) = br_split(p)?;
    Ok(Factorization {
        kind: FactorKind::Br,
        factors: vec![b, r],
    })
}

/// Whether `p` can be rebuilt from points by disjoint unions and `∇`
/// splittings along `(b, r)`.
pub fn is_nabla_compatible(p: &Poset) -> bool {
    if p.len() <= 1 {
        return true;
    }
    let comps = p.component_masks();
    if comps.len() > 1 {
        return comps.into_iter().all(|c| is_nabla_compatible(&p.restrict_mask(c)));
    }
    let (b, r) = br_split(p).expect("nonempty");
    !b.is_empty() && is_nabla_compatible(&b) && is_nabla_compatible(&r) && nabla(&b, &r).as_ref() == Ok(p)
}

/// Disjoint union of a nonempty list of posets.
fn union_all(parts: &[Poset]) -> Result<Poset> {
    parts
        .iter()
        .try_fold(Poset::empty(), |acc, part| acc.disjoint_union(part))
}

/// The bijection from N-free posets to nabla-compatible posets on the same
/// ground set.
pub fn theta(p: &Poset) -> Result<Poset> {
    if !is_wn(p) {
        return Err(Error::NotWn);
    }
    theta_rec(p)
}

fn theta_rec(p: &Poset) -> Result<Poset> {
    if p.len() <= 1 {
        return Ok(p.clone());
    }
    let comps = p.component_masks();
    if comps.len() > 1 {
        let images = comps
            .into_iter()
            .map(|c| theta_rec(&p.restrict_mask(c)))
            .collect::<Result<Vec<_>>>()?;
        return union_all(&images);
    }
    let mut factors = ordinal_factors(p);
    let last = factors.pop().expect("at least two factors");
    let lower = factors
        .iter()
        .skip(1)
        .try_fold(factors[0].clone(), |acc, f| ordinal_sum(&acc, f))?;
    nabla(&theta_rec(&lower)?, &theta_rec(&last)?)
}

/// Inverse of [`theta`].
pub fn theta_inverse(p: &Poset) -> Result<Poset> {
    if !is_nabla_compatible(p) {
        return Err(Error::NotNablaCompatible);
    }
    theta_inverse_rec(p)
}

fn theta_inverse_rec(p: &Poset) -> Result<Poset> {
    if p.len() <= 1 {
        return Ok(p.clone());
    }
    let comps = p.component_masks();
    if comps.len() > 1 {
        let images = comps
            .into_iter()
            .map(|c| theta_inverse_rec(&p.restrict_mask(c)))
            .collect::<Result<Vec<_>>>()?;
        return union_all(&images);
    }
    let (b, r) = br_split(p)?;
    ordinal_sum(&theta_inverse_rec(&b)?, &theta_inverse_rec(&r)?)
}

/// Antichain `{1, 2}`.
pub fn gen_m() -> Poset {
    poset("1 2", "")
}

/// `1 < 2`, the ordinal sum under `•`.
pub fn gen_ordinal() -> Poset {
    poset("1 2", "1<2")
}

/// `2 < 1`, the product `∇` under `▼`.
pub fn gen_nabla() -> Poset {
    poset("1 2", "2<1")
}

/// Operadic composition on standard labels: `inner` (on `1..m`) goes in slot
/// `i` of `outer` (on `1..n`); the result lives on `1..n+m-1` with the
/// inner labels shifted to `i..i+m-1` and the later outer labels moved up.
pub fn compose_standard(family: Family, outer: &Poset, i: usize, inner: &Poset) -> Result<Poset> {
    let (n, m) = (outer.len(), inner.len());
    let shift = |l: &Label, by: usize| -> Label {
        Label::from((l.as_str().parse::<usize>().expect("standard label") + by).to_string())
    };
    let outer_map: BTreeMap<Label, Label> = (1..=n)
        .filter(|&j| j > i)
        .map(|j| {
            let l = Label::from(j.to_string());
            let s = shift(&l, m - 1);
            (l, s)
        })
        .collect();
    let inner_map: BTreeMap<Label, Label> = inner.labels().iter().map(|l| (l.clone(), shift(l, i - 1))).collect();
    // Park the vertex on a label no shifted label can take.
    let vertex = Label::from(format!("{i}#"));
    let mut om = outer_map;
    om.insert(Label::from(i.to_string()), vertex.clone());
    let outer = outer.relabel(&om)?;
    let inner = inner.relabel(&inner_map)?;
    compose_poset(family, &outer, vertex.as_str(), &inner)
}

/// The defining relations of both suboperads, as labeled arity-3 identities.
pub fn verify_suboperad_relations() -> VerificationReport {
    let mut report = VerificationReport::new("suboperad relations");
    let swap = BTreeMap::from([
        (Label::from("1"), Label::from("2")),
        (Label::from("2"), Label::from("1")),
    ]);
    let m = gen_m();
    report.check_eq("m symmetric", &m.relabel(&swap).unwrap(), &m);
    let pairs = [
        ("m •1 m = m •2 m", Family::Bullet, gen_m(), gen_m(), gen_m(), gen_m()),
        (
            "↓ •1 ↓ = ↓ •2 ↓",
            Family::Bullet,
            gen_ordinal(),
            gen_ordinal(),
            gen_ordinal(),
            gen_ordinal(),
        ),
        ("m ▼1 m = m ▼2 m", Family::Down, gen_m(), gen_m(), gen_m(), gen_m()),
        (
            "∇ ▼1 m = ∇ ▼2 ∇",
            Family::Down,
            gen_nabla(),
            gen_m(),
            gen_nabla(),
            gen_nabla(),
        ),
    ];
    for (name, family, o1, i1, o2, i2) in pairs {
        let lhs = compose_standard(family, &o1, 1, &i1);
        let rhs = compose_standard(family, &o2, 2, &i2);
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => report.check_eq(name, &l, &r),
            _ => report.check(name, false),
        }
    }
    report
}

/// Every class reachable from the point and the generators under the given
/// families, up to `n_max` points.
pub fn closure(generators: &[Poset], families: &[Family], n_max: usize) -> Result<BTreeSet<CanonKey>> {
    if n_max > CANON_LIMIT {
        return Err(Error::SizeLimitExceeded {
            n: n_max,
            limit: CANON_LIMIT,
        });
    }
    let mut found: BTreeSet<CanonKey> = BTreeSet::new();
    if n_max >= 1 {
        found.insert(canon_key(&Poset::singleton("1"))?);
    }
    for g in generators.iter().filter(|g| g.len() <= n_max) {
        found.insert(canon_key(g)?);
    }
    let mut done: BTreeSet<(CanonKey, CanonKey)> = BTreeSet::new();
    loop {
        let reps: Vec<(CanonKey, Poset)> = found.iter().map(|k| (*k, k.poset())).collect();
        type Rep = (CanonKey, Poset);
        let pairs: Vec<(&Rep, &Rep)> = reps
            .iter()
            .flat_map(|x| reps.iter().map(move |y| (x, y)))
            .filter(|(x, y)| x.1.len() + y.1.len() - 1 <= n_max && !done.contains(&(x.0, y.0)))
            .collect();
        if pairs.is_empty() {
            return Ok(found);
        }
        let new: Vec<CanonKey> = pairs
            .par_iter()
            .map(|(x, y)| -> Result<Vec<CanonKey>> {
                let inner = y.1.prefixed("i");
                let mut out = Vec::new();
                for v in x.1.labels() {
                    for &f in families {
                        out.push(canon_key(&compose_poset(f, &x.1, v.as_str(), &inner)?)?);
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        for (x, y) in pairs {
            done.insert((x.0, y.0));
        }
        found.extend(new);
    }
}

/// Suboperad of `•` generated by `m` and `↓`.
pub fn closure_wn(n_max: usize) -> Result<BTreeSet<CanonKey>> {
    closure(&[gen_m(), gen_ordinal()], &[Family::Bullet], n_max)
}

/// Suboperad of `▼` generated by `m` and `∇`.
pub fn closure_nabla(n_max: usize) -> Result<BTreeSet<CanonKey>> {
    closure(&[gen_m(), gen_nabla()], &[Family::Down], n_max)
}

/// Everything reachable from the two-element chain under `•`, `▼` and `▲`.
pub fn closure_triple(n_max: usize) -> Result<BTreeSet<CanonKey>> {
    closure(&[gen_ordinal()], &Family::SET, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    fn p42() -> Poset {
        poset("1 2 3 4", "1<2 2<4 3<4")
    }

    #[test]
    fn wn_recognition() {
        assert!(!is_wn(&n_poset()));
        assert!(is_wn(&p42()));
        assert!(is_wn(&poset("1 2 3", "1<2 1<3")));
    }

    #[test]
    fn wn_factorizations() {
        let chain = poset("1 2 3", "1<2 2<3");
        let f = wn_factorize(&chain).unwrap();
        assert_eq!(f.factors, vec![poset("1", ""), poset("2", ""), poset("3", "")]);
        let f = wn_factorize(&p42()).unwrap();
        assert_eq!(f.factors, vec![poset("1 2 3", "1<2"), poset("4", "")]);
        let anti = poset("1 2", "");
        assert_eq!(wn_factorize(&anti).unwrap().factors, vec![anti]);
        assert_eq!(wn_factorize(&n_poset()).unwrap_err(), Error::NotWn);
        assert_eq!(wn_factorize(&Poset::empty()).unwrap_err(), Error::EmptyPoset);
    }

    #[test]
    fn br_splits() {
        let chain = poset("1 2 3", "1<2 2<3");
        assert_eq!(br_split(&chain).unwrap(), (poset("2 3", "2<3"), poset("1", "")));
        let (b, r) = br_split(&poset("1", "")).unwrap();
        assert!(b.is_empty());
        assert_eq!(r, poset("1", ""));
        let n = poset("1 2 3 4", "1<2 1<4 3<4");
        assert_eq!(br_split(&n).unwrap(), (poset("4", ""), poset("1 2 3", "1<2")));
    }

    #[test]
    fn nabla_compatibility() {
        assert!(is_nabla_compatible(&n_poset()));
        assert!(!is_nabla_compatible(&p42()));
        assert!(is_nabla_compatible(&poset("1", "")));
        assert!(is_nabla_compatible(&poset("1 2 3", "")));
    }

    #[test]
    fn theta_small_cases() {
        let one = poset("a", "");
        assert_eq!(theta(&one).unwrap(), one);
        let anti = poset("1 2 3", "");
        assert_eq!(theta(&anti).unwrap(), anti);
        let chain = poset("1 2 3", "1<2 2<3");
        let image = theta(&chain).unwrap();
        assert_eq!(image, poset("1 2 3", "3<2 2<1"));
        assert!(are_isomorphic(&image, &chain));
        assert_eq!(theta_inverse(&image).unwrap(), chain);
        assert_eq!(theta(&n_poset()).unwrap_err(), Error::NotWn);
        assert_eq!(theta_inverse(&p42()).unwrap_err(), Error::NotNablaCompatible);
    }

    #[test]
    fn relations_hold() {
        let r = verify_suboperad_relations();
        assert!(r.passed(), "{r}");
        assert_eq!(
            compose_standard(Family::Bullet, &gen_ordinal(), 1, &gen_ordinal()).unwrap(),
            poset("1 2 3", "1<2 2<3")
        );
    }

    #[test]
    fn small_closures() {
        let pairs: BTreeSet<CanonKey> = closure_wn(2).unwrap().into_iter().filter(|k| k.size() == 2).collect();
        let want = BTreeSet::from([canon_key(&gen_m()).unwrap(), canon_key(&gen_ordinal()).unwrap()]);
        assert_eq!(pairs, want);
    }
}
