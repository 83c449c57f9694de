//! Integer combinations of labeled posets, the refinement map `Φ` and its
//! inverse.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

use crate::bits::{bit, ones};
use crate::error::Result;
use crate::operad::{self, Family};
use crate::poset::{Label, Poset};

/// A finite integer combination of labeled posets. Zero coefficients are
/// never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FormalSum {
    terms: BTreeMap<Poset, i64>,
}

impl FormalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(p: Poset) -> Self {
        Self::scaled_term(p, 1)
    }

    pub fn scaled_term(p: Poset, c: i64) -> Self {
        let mut s = Self::new();
        s.add_term(p, c);
        s
    }

    pub fn add_term(&mut self, p: Poset, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(p) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FormalSum, c: i64) {
        for (p, &v) in &other.terms {
            self.add_term(p.clone(), c * v);
        }
    }

    pub fn scaled(&self, c: i64) -> FormalSum {
        let mut s = FormalSum::new();
        s.add_scaled(self, c);
        s
    }

    pub fn coefficient(&self, p: &Poset) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    /// Terms in ascending poset order.
    pub fn iter(&self) -> impl Iterator<Item = (&Poset, i64)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    /// Number of distinct posets with a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of the coefficients.
    pub fn weight(&self) -> i64 {
        self.terms.values().sum()
    }

    /// The single poset of a one-term sum with coefficient one.
    pub fn as_single(&self) -> Option<&Poset> {
        match self.terms.iter().next() {
            Some((p, 1)) if self.terms.len() == 1 => Some(p),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.iter()
                .map(|(p, c)| json!({"poset": p.to_json(), "coefficient": c}))
                .collect(),
        )
    }
}

impl FromIterator<(Poset, i64)> for FormalSum {
    fn from_iter<I: IntoIterator<Item = (Poset, i64)>>(iter: I) -> Self {
        let mut s = FormalSum::new();
        for (p, c) in iter {
            s.add_term(p, c);
        }
        s
    }
}

impl FromIterator<Poset> for FormalSum {
    fn from_iter<I: IntoIterator<Item = Poset>>(iter: I) -> Self {
        iter.into_iter().map(|p| (p, 1)).collect()
    }
}

impl std::ops::AddAssign<&FormalSum> for FormalSum {
    fn add_assign(&mut self, rhs: &FormalSum) {
        self.add_scaled(rhs, 1);
    }
}

impl std::ops::SubAssign<&FormalSum> for FormalSum {
    fn sub_assign(&mut self, rhs: &FormalSum) {
        self.add_scaled(rhs, -1);
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.iter().enumerate() {
            match (i, c) {
                (0, 1) => write!(f, "{p}")?,
                (0, -1) => write!(f, "-{p}")?,
                (0, c) => write!(f, "{c}*{p}")?,
                (_, 1) => write!(f, " + {p}")?,
                (_, -1) => write!(f, " - {p}")?,
                (_, c) if c < 0 => write!(f, " - {}*{p}", -c)?,
                (_, c) => write!(f, " + {c}*{p}")?,
            }
        }
        Ok(())
    }
}

/// Every poset on the same ground set whose relation is contained in `p`'s.
pub fn refinements(p: &Poset) -> Vec<Poset> {
    let rows = p.rows();
    let n = rows.len();
    // Sort points along a linear extension: fewer elements below come first.
    let down = crate::bits::transpose(rows);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| down[i].count_ones());
    let mut out = Vec::new();
    let mut q_down = vec![0u64; n];

    fn rec(k: usize, order: &[usize], down: &[u64], q_down: &mut [u64], labels: &[Label], out: &mut Vec<Poset>) {
        if k == order.len() {
            let mut rows = vec![0u64; order.len()];
            for (j, &d) in q_down.iter().enumerate() {
                for i in ones(d) {
                    rows[i] |= bit(j);
                }
            }
            out.push(Poset::from_rows(labels.to_vec(), rows));
            return;
        }
        let v = order[k];
        let below = down[v] & !bit(v);
        // Down-closed subsets of the current refinement restricted to `below`.
        for s in crate::bits::subsets(below) {
            if ones(s).all(|x| q_down[x] & !bit(x) & !s == 0) {
                q_down[v] = s | bit(v);
                rec(k + 1, order, down, q_down, labels, out);
            }
        }
        q_down[v] = 0;
    }
    rec(0, &order, &down, &mut q_down, p.labels(), &mut out);
    out
}

/// `P ↦ Σ_{Q ⪯ P} Q`, extended linearly.
pub fn phi(x: &FormalSum) -> FormalSum {
    let mut out = FormalSum::new();
    for (p, c) in x.iter() {
        for q in refinements(p) {
            out.add_term(q, c);
        }
    }
    out
}

/// Inverse of [`phi`], peeling off the coarsest remaining term each round.
pub fn phi_inverse(x: &FormalSum) -> FormalSum {
    let mut rest = x.clone();
    let mut out = FormalSum::new();
    while let Some((p, c)) = rest
        .iter()
        .max_by_key(|(p, _)| p.strict_pair_count())
        .map(|(p, c)| (p.clone(), c))
    {
        out.add_term(p.clone(), c);
        rest.add_scaled(&phi(&FormalSum::term(p)), -c);
    }
    out
}

/// Bilinear extension of the `∘` composition.
pub fn circ_bilinear(x: &FormalSum, vertex: &str, y: &FormalSum) -> Result<FormalSum> {
    operad::compose_sums(Family::Circ, x, vertex, y)
}

/// `Φ(A •_a B) = Φ(A) ∘_a Φ(B)`.
pub fn verify_phi_morphism(a: &Poset, vertex: &str, b: &Poset) -> Result<bool> {
    let lhs = phi(&FormalSum::term(operad::compose_bullet(&operad::InsertionSite::new(
        a.clone(),
        vertex,
        b.clone(),
    )?)));
    let rhs = circ_bilinear(
        &phi(&FormalSum::term(a.clone())),
        vertex,
        &phi(&FormalSum::term(b.clone())),
    )?;
    Ok(lhs == rhs)
}
