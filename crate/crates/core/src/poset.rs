//! Finite posets over string labels.
//!
//! A [`Poset`] keeps its labels sorted and its order relation as a dense,
//! reflexive and transitively closed bit matrix. Two posets are equal exactly
//! when they have the same labels and the same relation, so `Poset` can be
//! used directly as a key for labeled formal sums.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::{self, bit, ones};
use crate::error::{Error, Result};

/// Largest ground set a [`Poset`] can hold.
pub const MAX_ELEMENTS: usize = 64;

/// An opaque element name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(s: &str) -> Self {
        Label(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `"x"` becomes `"x'"`.
    pub fn primed(&self) -> Self {
        Label::new(&format!("{}'", self.0))
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(Arc::from(s))
    }
}

impl From<&String> for Label {
    fn from(s: &String) -> Self {
        Label::new(s)
    }
}

impl From<&Label> for Label {
    fn from(l: &Label) -> Self {
        l.clone()
    }
}

impl AsRef<str> for Label {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d).map(Label::from)
    }
}

/// Reorders relations given on a fixed label sequence into sorted label
/// order; set up once and reused for many relations on the same labels.
pub(crate) struct Sorter {
    labels: Vec<Label>,
    /// `perm[new] = old`; empty when the labels are already sorted.
    perm: Vec<usize>,
    pos: Vec<usize>,
}

impl Sorter {
    pub(crate) fn new(labels: &[Label]) -> Sorter {
        if labels.windows(2).all(|w| w[0] < w[1]) {
            return Sorter {
                labels: labels.to_vec(),
                perm: Vec::new(),
                pos: Vec::new(),
            };
        }
        let mut perm: Vec<usize> = (0..labels.len()).collect();
        perm.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let mut pos = vec![0usize; labels.len()];
        for (new, &old) in perm.iter().enumerate() {
            pos[old] = new;
        }
        Sorter {
            labels: perm.iter().map(|&old| labels[old].clone()).collect(),
            perm,
            pos,
        }
    }

    pub(crate) fn build(&self, rows: &[u64]) -> Poset {
        debug_assert_eq!(self.labels.len(), rows.len());
        debug_assert!(bits::is_partial_order(rows));
        let up = if self.perm.is_empty() {
            rows.to_vec()
        } else {
            self.perm
                .iter()
                .map(|&old| ones(rows[old]).fold(0u64, |acc, j| acc | bit(self.pos[j])))
                .collect()
        };
        Poset {
            up,
            labels: self.labels.clone(),
        }
    }
}

/// A finite partially ordered set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poset {
    // Rows come first so that comparisons between posets on one ground set,
    // the common case inside formal sums, settle without touching labels.
    /// `up[i]` has bit `j` iff `labels[i] <= labels[j]`.
    up: Vec<u64>,
    labels: Vec<Label>,
}

impl Poset {
    /// Close the generator pairs `(u, v)` (read `u <= v`) into a partial order.
    pub fn build<L, I, P, A, B>(elements: I, generators: P) -> Result<Poset>
    where
        L: Into<Label>,
        I: IntoIterator<Item = L>,
        A: Into<Label>,
        B: Into<Label>,
        P: IntoIterator<Item = (A, B)>,
    {
        let labels: Vec<Label> = elements.into_iter().map(Into::into).collect();
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::SizeLimitExceeded {
                n: labels.len(),
                limit: MAX_ELEMENTS,
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        let mut edges = vec![0u64; n];
        for (u, v) in generators {
            let (u, v) = (u.into(), v.into());
            let iu = *index.get(&u).ok_or(Error::UnknownLabel(u))?;
            let iv = *index.get(&v).ok_or(Error::UnknownLabel(v))?;
            edges[iu] |= bit(iv);
        }
        let mut rows = edges.clone();
        bits::close(&mut rows);
        for i in 0..n {
            for j in ones(rows[i] & !bit(i)) {
                if rows[j] & bit(i) != 0 {
                    let cycle = find_cycle(&edges, i, j)
                        .into_iter()
                        .map(|k| labels[k].clone())
                        .collect();
                    return Err(Error::CycleDetected { cycle });
                }
            }
        }
        Ok(Poset::from_rows(labels, rows))
    }

    /// Assemble from labels and a closed relation in the same index order.
    pub(crate) fn from_rows(labels: Vec<Label>, rows: Vec<u64>) -> Poset {
        Sorter::new(&labels).build(&rows)
    }

    pub fn empty() -> Poset {
        Poset {
            labels: Vec::new(),
            up: Vec::new(),
        }
    }

    pub fn singleton(label: impl Into<Label>) -> Poset {
        Poset {
            labels: vec![label.into()],
            up: vec![1],
        }
    }

    /// Totally ordered in the order given.
    pub fn chain<L: Into<Label>>(labels: impl IntoIterator<Item = L>) -> Result<Poset> {
        let labels: Vec<Label> = labels.into_iter().map(Into::into).collect();
        let gens: Vec<(Label, Label)> = labels.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        Poset::build(labels, gens)
    }

    pub fn antichain<L: Into<Label>>(labels: impl IntoIterator<Item = L>) -> Result<Poset> {
        Poset::build(labels, std::iter::empty::<(Label, Label)>())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Labels in ascending order.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.up
    }

    pub(crate) fn all_mask(&self) -> u64 {
        bits::full(self.len())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub(crate) fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(Label::new(label)))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }

    /// `x <= y`. Unknown labels are unrelated to everything.
    pub fn leq(&self, x: &str, y: &str) -> bool {
        match (self.index_of(x), self.index_of(y)) {
            (Some(i), Some(j)) => self.up[i] & bit(j) != 0,
            _ => false,
        }
    }

    #[inline]
    pub(crate) fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.up[i] & bit(j) != 0
    }

    /// Strictly related pairs `(x, y)` with `x < y`, sorted.
    pub fn strict_pairs(&self) -> Vec<(Label, Label)> {
        let mut out = Vec::new();
        for (i, &r) in self.up.iter().enumerate() {
            for j in ones(r & !bit(i)) {
                out.push((self.labels[i].clone(), self.labels[j].clone()));
            }
        }
        out
    }

    pub fn strict_pair_count(&self) -> usize {
        self.up.iter().map(|r| r.count_ones() as usize).sum::<usize>() - self.len()
    }

    /// Cover pairs `(e, e')`: `e < e'` with nothing strictly between, sorted.
    pub fn hasse_covers(&self) -> Vec<(Label, Label)> {
        covers_of(&self.up)
            .into_iter()
            .map(|(i, j)| (self.labels[i].clone(), self.labels[j].clone()))
            .collect()
    }

    pub(crate) fn mask_of<S: AsRef<str>>(&self, subset: &[S]) -> Result<u64> {
        let mut mask = 0u64;
        for s in subset {
            mask |= bit(self.require(s.as_ref())?);
        }
        Ok(mask)
    }

    pub(crate) fn labels_of(&self, mask: u64) -> Vec<Label> {
        ones(mask).map(|i| self.labels[i].clone()).collect()
    }

    /// Induced subposet on `subset`.
    pub fn restrict<S: AsRef<str>>(&self, subset: &[S]) -> Result<Poset> {
        let mask = self.mask_of(subset)?;
        Ok(self.restrict_mask(mask))
    }

    pub(crate) fn restrict_mask(&self, mask: u64) -> Poset {
        Poset {
            labels: self.labels_of(mask),
            up: bits::restrict(&self.up, mask),
        }
    }

    /// The same ground set with the reversed order.
    pub fn opposite(&self) -> Poset {
        Poset {
            labels: self.labels.clone(),
            up: bits::transpose(&self.up),
        }
    }

    /// Juxtaposition with no relation between the two parts.
    pub fn disjoint_union(&self, other: &Poset) -> Result<Poset> {
        self.juxtapose(other, |_, _| false)
    }

    /// Disjoint union plus `x <= y` for every `x` of `self` and `y` of `other`
    /// with `link(x, y)`; the caller guarantees the result is transitive.
    pub(crate) fn juxtapose(&self, other: &Poset, link: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        if let Some(l) = other.labels.iter().find(|l| self.contains(l.as_str())) {
            return Err(Error::LabelClash(l.clone()));
        }
        let (n, m) = (self.len(), other.len());
        if n + m > MAX_ELEMENTS {
            return Err(Error::SizeLimitExceeded {
                n: n + m,
                limit: MAX_ELEMENTS,
            });
        }
        let mut rows = Vec::with_capacity(n + m);
        for i in 0..n {
            let cross = (0..m).filter(|&j| link(i, j)).fold(0u64, |acc, j| acc | bit(n + j));
            rows.push(self.up[i] | cross);
        }
        for j in 0..m {
            rows.push(other.up[j] << n);
        }
        let labels = self.labels.iter().chain(other.labels.iter()).cloned().collect();
        Ok(Poset::from_rows(labels, rows))
    }

    /// `self ⪯ other`: same ground set and every relation of `self` holds in `other`.
    pub fn is_finer(&self, other: &Poset) -> Result<bool> {
        if self.labels != other.labels {
            return Err(Error::GroundSetMismatch);
        }
        Ok(self.up.iter().zip(&other.up).all(|(&a, &b)| a & !b == 0))
    }

    /// Components of the comparability graph, ordered by smallest label.
    pub fn connected_components(&self) -> Vec<Vec<Label>> {
        bits::components(&self.up)
            .into_iter()
            .map(|m| self.labels_of(m))
            .collect()
    }

    pub(crate) fn component_masks(&self) -> Vec<u64> {
        bits::components(&self.up)
    }

    pub fn is_connected(&self) -> bool {
        self.component_masks().len() == 1
    }

    pub fn minimal(&self) -> Vec<Label> {
        self.labels_of(bits::minima(&self.up, self.all_mask()))
    }

    pub fn maximal(&self) -> Vec<Label> {
        self.labels_of(bits::maxima(&self.up, self.all_mask()))
    }

    /// `(minimal elements, maximal elements)`.
    pub fn extrema(&self) -> (Vec<Label>, Vec<Label>) {
        (self.minimal(), self.maximal())
    }

    /// Every interval `[x, y]` with `x, y` in the subset stays in the subset.
    pub fn is_convex<S: AsRef<str>>(&self, subset: &[S]) -> Result<bool> {
        let mask = self.mask_of(subset)?;
        Ok(self.is_convex_mask(mask))
    }

    pub(crate) fn is_convex_mask(&self, mask: u64) -> bool {
        let down = bits::transpose(&self.up);
        let above = ones(mask).fold(0u64, |acc, i| acc | self.up[i]);
        let below = ones(mask).fold(0u64, |acc, i| acc | down[i]);
        above & below & !mask == 0
    }

    /// Collapse the convex subset `B` to the single point `new_label`.
    ///
    /// `x <= y` in the quotient iff `x <= y` in `self`, or both sides are
    /// linked through `B` (`x <= b` and `b' <= y` for some `b, b'` in `B`).
    pub fn quotient<S: AsRef<str>>(&self, subset: &[S], new_label: impl Into<Label>) -> Result<Poset> {
        let mask = self.mask_of(subset)?;
        self.quotient_mask(mask, new_label.into())
    }

    pub(crate) fn quotient_mask(&self, mask: u64, new_label: Label) -> Result<Poset> {
        if mask == 0 {
            return Err(Error::EmptySubset);
        }
        if !self.is_convex_mask(mask) {
            return Err(Error::NotConvex(self.labels_of(mask)));
        }
        let rest = self.all_mask() & !mask;
        if ones(rest).any(|i| self.labels[i] == new_label) {
            return Err(Error::LabelClash(new_label));
        }
        let down = bits::transpose(&self.up);
        let idx: Vec<usize> = ones(rest).collect();
        let k = idx.len();
        // Collapsed point takes index k.
        let to_b: Vec<bool> = idx.iter().map(|&i| self.up[i] & mask != 0).collect();
        let from_b: Vec<bool> = idx.iter().map(|&i| down[i] & mask != 0).collect();
        let mut rows = vec![0u64; k + 1];
        for (p, &i) in idx.iter().enumerate() {
            for (q, &j) in idx.iter().enumerate() {
                if self.leq_idx(i, j) || (to_b[p] && from_b[q]) {
                    rows[p] |= bit(q);
                }
            }
            if to_b[p] {
                rows[p] |= bit(k);
            }
            if from_b[p] {
                rows[k] |= bit(p);
            }
        }
        rows[k] |= bit(k);
        let mut labels: Vec<Label> = idx.iter().map(|&i| self.labels[i].clone()).collect();
        labels.push(new_label);
        Ok(Poset::from_rows(labels, rows))
    }

    /// Rename labels through `map`; labels not in the map are kept.
    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> Result<Poset> {
        let labels: Vec<Label> = self
            .labels
            .iter()
            .map(|l| map.get(l).cloned().unwrap_or_else(|| l.clone()))
            .collect();
        let distinct: BTreeSet<&Label> = labels.iter().collect();
        if distinct.len() != labels.len() {
            let mut seen = BTreeSet::new();
            let dup = labels.iter().find(|l| !seen.insert(*l)).cloned();
            return Err(Error::DuplicateLabel(dup.unwrap_or_else(|| Label::new(""))));
        }
        Ok(Poset::from_rows(labels, self.up.clone()))
    }

    /// Rename every label `x` to `prefix + x`.
    pub fn prefixed(&self, prefix: &str) -> Poset {
        let labels = self
            .labels
            .iter()
            .map(|l| Label::from(format!("{prefix}{l}")))
            .collect();
        Poset::from_rows(labels, self.up.clone())
    }

    /// Canonical document form: sorted elements, sorted cover pairs.
    pub fn to_doc(&self) -> PosetDoc {
        PosetDoc {
            elements: self.labels.clone(),
            relations: self.hasse_covers().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_doc(doc: &PosetDoc) -> Result<Poset> {
        Poset::build(
            doc.elements.iter().cloned(),
            doc.relations.iter().map(|[a, b]| (a.clone(), b.clone())),
        )
    }

    pub fn from_json(text: &str) -> Result<Poset> {
        let doc: PosetDoc = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        Poset::from_doc(&doc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_doc()).expect("poset documents always serialize")
    }
}

/// Cover pairs of a closed relation, by index.
pub(crate) fn covers_of(rows: &[u64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &r) in rows.iter().enumerate() {
        let strict = r & !bit(i);
        for j in ones(strict) {
            // some k with i < k < j?
            let between = ones(strict & !bit(j)).any(|k| rows[k] & bit(j) != 0);
            if !between {
                out.push((i, j));
            }
        }
    }
    out
}

/// A path `i -> ... -> j -> ... -> i` in the generator graph.
fn find_cycle(edges: &[u64], i: usize, j: usize) -> Vec<usize> {
    let path = |from: usize, to: usize| -> Vec<usize> {
        let mut prev = vec![usize::MAX; edges.len()];
        let mut queue = VecDeque::from([from]);
        prev[from] = from;
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for v in ones(edges[u]) {
                if prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let mut p = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            p.push(cur);
        }
        p.reverse();
        p
    };
    let mut cycle = path(i, j);
    let back = path(j, i);
    cycle.extend_from_slice(&back[1..]);
    cycle
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<&str> = self.labels.iter().map(Label::as_str).collect();
        let covers: Vec<String> = self.hasse_covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
        write!(f, "{{{}}}[{}]", elems.join(","), covers.join(" "))
    }
}

/// JSON document `{"elements": [...], "relations": [[u, v], ...]}`; each pair
/// reads `u <= v` and the relation is closed on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<Label>,
    #[serde(default)]
    pub relations: Vec<[Label; 2]>,
}

/// Short-hand used throughout tests: `poset("a b c", "a<b b<c")`.
///
/// Panics on malformed input.
pub fn poset(elements: &str, relations: &str) -> Poset {
    let elems: Vec<&str> = elements.split_whitespace().collect();
    let pairs: Vec<(&str, &str)> = relations
        .split_whitespace()
        .map(|r| r.split_once('<').expect("relation must look like `x<y`"))
        .collect();
    Poset::build(elems, pairs).expect("valid poset literal")
}
