//! Exhaustive generation of labeled posets and their isomorphism classes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::{self, bit, ones};
use crate::canon::{canon_key, canonicalize, CanonKey, IsoClass};
use crate::error::{Error, Result};
use crate::poset::{Label, Poset};
use crate::structure::{is_nabla_compatible, is_wn};

/// Hard cap on the size handed to the generators.
pub const ENUMERATION_CAP: usize = 7;

/// Number of leading points fixed before work is split across threads.
const SPLIT_DEPTH: usize = 4;

fn check_size(n: usize) -> Result<()> {
    if n > ENUMERATION_CAP {
        Err(Error::SizeLimitExceeded {
            n,
            limit: ENUMERATION_CAP,
        })
    } else {
        Ok(())
    }
}

fn labels(n: usize) -> Vec<Label> {
    (1..=n).map(|i| Label::from(i.to_string())).collect()
}

/// Extend a partial order on `0..k` by one point at a time up to `n`.
///
/// The new point `k` is placed above a down-set `D` and below an up-set `U`
/// with every element of `D` already below every element of `U`; each order
/// on `0..=k` arises from exactly one such choice.
fn extend(rows: &mut Vec<u64>, n: usize, reverse: bool, visit: &mut dyn FnMut(&[u64])) {
    let k = rows.len();
    if k == n {
        visit(rows);
        return;
    }
    let all = bits::full(k);
    let mut downs = bits::down_closed_subsets(rows, all);
    if reverse {
        downs.reverse();
    }
    for d in downs {
        let allowed = ones(d).fold(all & !d, |acc, x| acc & rows[x]);
        let mut ups = bits::up_closed_subsets(rows, allowed);
        if reverse {
            ups.reverse();
        }
        for u in ups {
            for x in ones(d) {
                rows[x] |= bit(k);
            }
            rows.push(bit(k) | u);
            extend(rows, n, reverse, visit);
            rows.pop();
            for x in ones(d) {
                rows[x] &= !bit(k);
            }
        }
    }
}

/// Visit every partial order on `{1..n}` exactly once.
pub fn all_posets(n: usize, visit: &mut dyn FnMut(&Poset)) -> Result<()> {
    generate(n, false, visit)
}

/// As [`all_posets`], exploring every choice in the opposite order.
pub fn all_posets_reversed(n: usize, visit: &mut dyn FnMut(&Poset)) -> Result<()> {
    generate(n, true, visit)
}

fn generate(n: usize, reverse: bool, visit: &mut dyn FnMut(&Poset)) -> Result<()> {
    check_size(n)?;
    let labels = labels(n);
    extend(&mut Vec::new(), n, reverse, &mut |rows| {
        visit(&Poset::from_rows(labels.clone(), rows.to_vec()))
    });
    Ok(())
}

/// Parallel fold over every partial order on `{1..n}`.
pub fn fold_posets<T, I, F, R>(n: usize, identity: I, fold: F, reduce: R) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &Poset) + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    check_size(n)?;
    let labels = labels(n);
    let mut prefixes = Vec::new();
    extend(&mut Vec::new(), n.min(SPLIT_DEPTH), false, &mut |rows| {
        prefixes.push(rows.to_vec())
    });
    Ok(prefixes
        .into_par_iter()
        .map(|mut rows| {
            let mut acc = identity();
            extend(&mut rows, n, false, &mut |full| {
                fold(&mut acc, &Poset::from_rows(labels.clone(), full.to_vec()))
            });
            acc
        })
        .reduce(&identity, &reduce))
}

/// Number of partial orders on `{1..n}`.
pub fn count_posets(n: usize) -> Result<u64> {
    fold_posets(n, || 0u64, |c, _| *c += 1, |a, b| a + b)
}

/// Restriction applied to isomorphism classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassFilter {
    All,
    Connected,
    Wn,
    Nabla,
}

impl ClassFilter {
    pub fn accepts(self, p: &Poset) -> bool {
        match self {
            ClassFilter::All => true,
            ClassFilter::Connected => p.is_connected(),
            ClassFilter::Wn => is_wn(p),
            ClassFilter::Nabla => is_nabla_compatible(p),
        }
    }
}

/// Every class on `n` points with the number of labeled posets in it.
pub fn census(n: usize) -> Result<BTreeMap<CanonKey, u64>> {
    fold_posets(
        n,
        BTreeMap::new,
        |m: &mut BTreeMap<CanonKey, u64>, p| {
            *m.entry(canon_key(p).expect("within canonical limit")).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    )
}

/// The classes on `n` points accepted by `filter`, ordered by key.
pub fn all_isoclasses(n: usize, filter: ClassFilter) -> Result<Vec<IsoClass>> {
    census(n)?
        .into_keys()
        .map(|k| k.poset())
        .filter(|p| filter.accepts(p))
        .map(|p| canonicalize(&p))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: usize,
    pub labeled: u64,
    pub isoclasses: u64,
    pub connected_isoclasses: u64,
    pub wn_labeled: u64,
    pub wn_isoclasses: u64,
    pub nabla_labeled: u64,
    pub nabla_isoclasses: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub rows: Vec<CountRow>,
}

/// Counts for `n = 1..=n_max`.
pub fn count_table(n_max: usize) -> Result<CountTable> {
    check_size(n_max)?;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let census = census(n)?;
        let mut row = CountRow {
            n,
            labeled: 0,
            isoclasses: census.len() as u64,
            connected_isoclasses: 0,
            wn_labeled: 0,
            wn_isoclasses: 0,
            nabla_labeled: 0,
            nabla_isoclasses: 0,
        };
        for (key, count) in &census {
            let p = key.poset();
            row.labeled += count;
            if p.is_connected() {
                row.connected_isoclasses += 1;
            }
            if is_wn(&p) {
                row.wn_labeled += count;
                row.wn_isoclasses += 1;
            }
            if is_nabla_compatible(&p) {
                row.nabla_labeled += count;
                row.nabla_isoclasses += 1;
            }
        }
        rows.push(row);
    }
    Ok(CountTable { rows })
}

impl CountTable {
    const HEADERS: [&'static str; 8] = [
        "n",
        "labeled",
        "isoclasses",
        "connected",
        "wn_labeled",
        "wn_iso",
        "nabla_labeled",
        "nabla_iso",
    ];

    fn cells(r: &CountRow) -> [u64; 8] {
        [
            r.n as u64,
            r.labeled,
            r.isoclasses,
            r.connected_isoclasses,
            r.wn_labeled,
            r.wn_isoclasses,
            r.nabla_labeled,
            r.nabla_isoclasses,
        ]
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("| {} |\n", Self::HEADERS.join(" | "));
        s.push_str(&format!("|{}\n", "---:|".repeat(Self::HEADERS.len())));
        for r in &self.rows {
            let cells: Vec<String> = Self::cells(r).iter().map(u64::to_string).collect();
            let _ = writeln!(s, "| {} |", cells.join(" | "));
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("{}\n", Self::HEADERS.join(","));
        for r in &self.rows {
            let cells: Vec<String> = Self::cells(r).iter().map(u64::to_string).collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }

    /// Rows where the labeled N-free and nabla-compatible counts differ.
    pub fn mismatched_rows(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.wn_labeled != r.nabla_labeled || r.wn_isoclasses != r.nabla_isoclasses)
            .map(|r| r.n)
            .collect()
    }
}

/// Parse a pinned integer sequence: one value per line, `#` starts a comment,
/// the first value is the term of index 0.
pub fn parse_sequence(text: &str) -> Result<Vec<u64>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.parse::<u64>()
                .map_err(|e| Error::Document(format!("bad sequence entry `{l}`: {e}")))
        })
        .collect()
}
