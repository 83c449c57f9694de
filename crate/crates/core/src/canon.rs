//! Canonical forms and automorphism counts.
//!
//! A poset on `n <= 8` points is encoded by the bits of its relation read
//! position by position: for `p = 1..n` and `q = 0..p`, first `q <= p`, then
//! `p <= q`. The canonical form is the relabeling minimising that code among
//! labelings compatible with an iterated degree refinement, which is an
//! isomorphism invariant, so the minimum is well defined on classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::{bit, ones, transpose};
use crate::error::{Error, Result};
use crate::poset::{Label, Poset};

/// Largest poset accepted by [`canonicalize`].
pub const CANON_LIMIT: usize = 8;

/// Canonical key of an isomorphism class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey {
    n: u8,
    code: u64,
}

impl CanonKey {
    /// Key of the empty poset, the unit of every product.
    pub const EMPTY: CanonKey = CanonKey { n: 0, code: 0 };

    pub fn size(&self) -> usize {
        self.n as usize
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    /// Number of strict relations.
    pub fn strict_pairs(&self) -> usize {
        self.code.count_ones() as usize
    }

    /// The representative on labels `"1".."n"`.
    pub fn poset(&self) -> Poset {
        Poset::from_rows(standard_labels(self.size()), self.rows())
    }

    fn rows(&self) -> Vec<u64> {
        let n = self.size();
        let mut rows: Vec<u64> = (0..n).map(bit).collect();
        let mut shift = code_bits(n);
        for p in 1..n {
            for q in 0..p {
                shift -= 2;
                let pair = (self.code >> shift) & 0b11;
                if pair & 0b10 != 0 {
                    rows[q] |= bit(p);
                }
                if pair & 0b01 != 0 {
                    rows[p] |= bit(q);
                }
            }
        }
        rows
    }
}

fn code_bits(n: usize) -> usize {
    n * n.saturating_sub(1)
}

fn standard_labels(n: usize) -> Vec<Label> {
    (1..=n).map(|i| Label::from(i.to_string())).collect()
}

impl fmt::Display for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = code_bits(self.size()).div_ceil(4);
        if digits == 0 {
            write!(f, "{:x}", self.n)
        } else {
            write!(f, "{:x}{:0digits$x}", self.n, self.code)
        }
    }
}

impl fmt::Debug for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonKey({self})")
    }
}

impl FromStr for CanonKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Document(format!("malformed class key `{s}`"));
        let (head, tail) = s.split_at(s.len().min(1));
        let n = usize::from_str_radix(head, 16).map_err(|_| bad())?;
        if n > CANON_LIMIT {
            return Err(bad());
        }
        let code = if tail.is_empty() {
            0
        } else {
            u64::from_str_radix(tail, 16).map_err(|_| bad())?
        };
        if tail.len() != code_bits(n).div_ceil(4) || (code_bits(n) < 64 && code >> code_bits(n) != 0) {
            return Err(bad());
        }
        let key = CanonKey { n: n as u8, code };
        if !crate::bits::is_partial_order(&key.rows()) {
            return Err(bad());
        }
        // Reject codes that are not canonical.
        match canonicalize(&key.poset()) {
            Ok(c) if c.key == key => Ok(key),
            _ => Err(bad()),
        }
    }
}

impl Serialize for CanonKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An isomorphism class with its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsoClass {
    pub representative: Poset,
    pub key: CanonKey,
    pub automorphisms: u64,
}

/// Canonical key, representative and automorphism count of `p`.
pub fn canonicalize(p: &Poset) -> Result<IsoClass> {
    let (key, automorphisms) = search(p)?;
    Ok(IsoClass {
        representative: key.poset(),
        key,
        automorphisms,
    })
}

/// Canonical key alone; cheaper than [`canonicalize`].
pub fn canon_key(p: &Poset) -> Result<CanonKey> {
    search(p).map(|(k, _)| k)
}

pub fn automorphism_count(p: &Poset) -> Result<u64> {
    search(p).map(|(_, a)| a)
}

/// Whether `p` and `q` are isomorphic.
pub fn are_isomorphic(p: &Poset, q: &Poset) -> bool {
    if p.len() != q.len() || p.strict_pair_count() != q.strict_pair_count() {
        return false;
    }
    if p.len() <= CANON_LIMIT {
        return canon_key(p).ok() == canon_key(q).ok();
    }
    find_isomorphism(p.rows(), q.rows())
}

/// Whether some subset of `p` induces a poset isomorphic to `pattern`.
pub fn contains_induced(p: &Poset, pattern: &Poset) -> bool {
    let k = pattern.len();
    if k > p.len() {
        return false;
    }
    if k == 0 {
        return true;
    }
    let target = match canon_key(pattern) {
        Ok(key) => key,
        Err(_) => return false,
    };
    let mut want = degree_profile(pattern.rows());
    want.sort_unstable();
    let rows = p.rows();
    let mut found = false;
    k_subsets(p.len(), k, &mut |mask| {
        let sub = crate::bits::restrict(rows, mask);
        let mut prof = degree_profile(&sub);
        prof.sort_unstable();
        if prof == want && canon_key(&Poset::from_rows(standard_labels(k), sub)).ok() == Some(target) {
            found = true;
        }
        found
    });
    found
}

/// Visit every `k`-subset of `0..n` as a mask; stop when the visitor returns true.
fn k_subsets(n: usize, k: usize, visit: &mut dyn FnMut(u64) -> bool) {
    fn rec(start: usize, n: usize, left: usize, mask: u64, visit: &mut dyn FnMut(u64) -> bool) -> bool {
        if left == 0 {
            return visit(mask);
        }
        for i in start..=n - left {
            if rec(i + 1, n, left - 1, mask | bit(i), visit) {
                return true;
            }
        }
        false
    }
    rec(0, n, k, 0, visit);
}

fn degree_profile(rows: &[u64]) -> Vec<(u32, u32)> {
    let down = transpose(rows);
    rows.iter()
        .zip(&down)
        .map(|(u, d)| (d.count_ones(), u.count_ones()))
        .collect()
}

/// Stable vertex colours: start from (down-degree, up-degree) and refine by
/// the multisets of colours strictly above and strictly below.
fn refined_colors(rows: &[u64]) -> Vec<usize> {
    let n = rows.len();
    let down = transpose(rows);
    let initial: Vec<u32> = (0..n)
        .flat_map(|i| [down[i].count_ones(), rows[i].count_ones()])
        .collect();
    let (mut colors, mut classes) = rank_signatures(&initial, 2, n);
    loop {
        // Signature: own colour, then counts of each colour above, then below.
        let width = 1 + 2 * classes;
        let mut sigs = vec![0u32; n * width];
        for i in 0..n {
            let sig = &mut sigs[i * width..(i + 1) * width];
            sig[0] = colors[i] as u32;
            for j in ones(rows[i] & !bit(i)) {
                sig[1 + colors[j]] += 1;
            }
            for j in ones(down[i] & !bit(i)) {
                sig[1 + classes + colors[j]] += 1;
            }
        }
        let (next, next_classes) = rank_signatures(&sigs, width, n);
        if next_classes == classes {
            return colors;
        }
        colors = next;
        classes = next_classes;
    }
}

/// Rank `n` fixed-width signatures stored back to back: equal signatures get
/// equal ranks, ranks follow the signature order. Returns ranks and the
/// number of distinct signatures.
fn rank_signatures(sigs: &[u32], width: usize, n: usize) -> (Vec<usize>, usize) {
    let sig = |i: usize| &sigs[i * width..(i + 1) * width];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| sig(x).cmp(sig(y)));
    let mut ranks = vec![0; n];
    let mut rank = 0;
    for (pos, &i) in order.iter().enumerate() {
        if pos > 0 && sig(order[pos - 1]) != sig(i) {
            rank += 1;
        }
        ranks[i] = rank;
    }
    (ranks, if n == 0 { 0 } else { rank + 1 })
}

struct Search<'a> {
    rows: &'a [u64],
    /// Colour required at each position.
    slot_color: Vec<usize>,
    colors: Vec<usize>,
    /// Earlier point with the same strict up- and down-sets, if any.
    twin_before: Vec<Option<usize>>,
    order: Vec<usize>,
    used: u64,
    best: Option<u64>,
    leaves_at_best: u64,
    total_bits: usize,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, code: u64, bits_so_far: usize) {
        let n = self.rows.len();
        if depth == n {
            match self.best {
                Some(b) if code > b => {}
                Some(b) if code == b => self.leaves_at_best += 1,
                _ => {
                    self.best = Some(code);
                    self.leaves_at_best = 1;
                }
            }
            return;
        }
        let want = self.slot_color[depth];
        for v in 0..n {
            if self.used & bit(v) != 0 || self.colors[v] != want {
                continue;
            }
            // Twins are interchangeable; place them in index order only.
            if matches!(self.twin_before[v], Some(t) if self.used & bit(t) == 0) {
                continue;
            }
            let mut c = code;
            for &u in &self.order[..depth] {
                let lo = (self.rows[u] >> v) & 1;
                let hi = (self.rows[v] >> u) & 1;
                c = (c << 2) | (lo << 1) | hi;
            }
            let nb = bits_so_far + 2 * depth;
            if let Some(b) = self.best {
                let prefix = if nb == 0 { 0 } else { b >> (self.total_bits - nb) };
                if c > prefix {
                    continue;
                }
            }
            self.used |= bit(v);
            self.order.push(v);
            self.run(depth + 1, c, nb);
            self.order.pop();
            self.used &= !bit(v);
        }
    }
}

fn search(p: &Poset) -> Result<(CanonKey, u64)> {
    search_rows(p.rows())
}

/// Canonical key of a relation given by its rows.
pub(crate) fn key_of_rows(rows: &[u64]) -> Result<CanonKey> {
    search_rows(rows).map(|(k, _)| k)
}

fn search_rows(rows: &[u64]) -> Result<(CanonKey, u64)> {
    let n = rows.len();
    if n > CANON_LIMIT {
        return Err(Error::SizeLimitExceeded { n, limit: CANON_LIMIT });
    }
    let colors = refined_colors(rows);
    let mut slot_color = colors.clone();
    slot_color.sort_unstable();
    let (twin_before, twin_symmetries) = twins(rows);
    let mut s = Search {
        rows,
        slot_color,
        colors,
        twin_before,
        order: Vec::with_capacity(n),
        used: 0,
        best: None,
        leaves_at_best: 0,
        total_bits: code_bits(n),
    };
    s.run(0, 0, 0);
    let key = CanonKey {
        n: n as u8,
        code: s.best.unwrap_or(0),
    };
    Ok((key, s.leaves_at_best.max(1) * twin_symmetries))
}

/// For each point the previous twin, and the number of permutations of
/// twins among themselves.
fn twins(rows: &[u64]) -> (Vec<Option<usize>>, u64) {
    let down = transpose(rows);
    let sig = |i: usize| (rows[i] & !bit(i), down[i] & !bit(i));
    let mut before = vec![None; rows.len()];
    let mut symmetries = 1u64;
    for v in 0..rows.len() {
        let mut class = 1;
        for u in (0..v).rev() {
            if sig(u) == sig(v) {
                before[v].get_or_insert(u);
                class += 1;
            }
        }
        symmetries *= class;
    }
    (before, symmetries)
}

/// Backtracking isomorphism test for posets beyond the canonical-form limit.
fn find_isomorphism(a: &[u64], b: &[u64]) -> bool {
    let n = a.len();
    let (col_a, col_b) = refined_colors_joint(a, b);
    let mut sa = col_a.clone();
    let mut sb = col_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    fn rec(i: usize, a: &[u64], b: &[u64], ca: &[usize], cb: &[usize], map: &mut Vec<usize>, used: u64) -> bool {
        if i == a.len() {
            return true;
        }
        for v in 0..b.len() {
            if used & bit(v) != 0 || ca[i] != cb[v] {
                continue;
            }
            let ok = (0..i).all(|u| {
                let w = map[u];
                ((a[u] >> i) & 1) == ((b[w] >> v) & 1) && ((a[i] >> u) & 1) == ((b[v] >> w) & 1)
            });
            if ok {
                map.push(v);
                if rec(i + 1, a, b, ca, cb, map, used | bit(v)) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    let mut map = Vec::with_capacity(n);
    rec(0, a, b, &col_a, &col_b, &mut map, 0)
}

/// Refine both posets with one shared colour numbering, so colours compare
/// across them.
fn refined_colors_joint(a: &[u64], b: &[u64]) -> (Vec<usize>, Vec<usize>) {
    let n = a.len();
    let mut rows: Vec<u64> = Vec::with_capacity(2 * n);
    rows.extend_from_slice(a);
    // A 2n-point disjoint union would overflow 64 bits for n > 32; fall back
    // to plain degree colours then.
    if 2 * n > 64 {
        let da = degree_profile(a);
        let db = degree_profile(b);
        let mut all: Vec<(u32, u32)> = da.iter().chain(&db).copied().collect();
        all.sort_unstable();
        all.dedup();
        let idx = |d: &(u32, u32)| all.binary_search(d).unwrap();
        return (da.iter().map(idx).collect(), db.iter().map(idx).collect());
    }
    rows.extend(b.iter().map(|r| r << n));
    let colors = refined_colors(&rows);
    (colors[..n].to_vec(), colors[n..].to_vec())
}
