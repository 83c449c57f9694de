//! Dense relation helpers over `u64` rows.
//!
//! A relation on `n <= 64` points is a slice of rows where bit `j` of row `i`
//! is set iff `i` is related to `j`. Partial orders are always stored
//! reflexive and transitively closed.

/// Iterate the set bits of `mask` in increasing order.
pub fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[inline]
pub fn bit(i: usize) -> u64 {
    1u64 << i
}

#[inline]
pub fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Reflexive-transitive closure in place (Warshall).
pub fn close(rows: &mut [u64]) {
    let n = rows.len();
    for (i, row) in rows.iter_mut().enumerate() {
        *row |= bit(i);
    }
    for k in 0..n {
        let rk = rows[k];
        for i in 0..n {
            if rows[i] & bit(k) != 0 {
                rows[i] |= rk;
            }
        }
    }
}

pub fn is_transitive(rows: &[u64]) -> bool {
    rows.iter().all(|&r| ones(r).all(|j| rows[j] & !r == 0))
}

pub fn is_partial_order(rows: &[u64]) -> bool {
    rows.iter()
        .enumerate()
        .all(|(i, &r)| r & bit(i) != 0 && ones(r & !bit(i)).all(|j| rows[j] & bit(i) == 0))
        && is_transitive(rows)
}

/// Transpose: `down[j]` has bit `i` iff `up[i]` has bit `j`.
pub fn transpose(rows: &[u64]) -> Vec<u64> {
    let mut t = vec![0u64; rows.len()];
    for (i, &r) in rows.iter().enumerate() {
        for j in ones(r) {
            t[j] |= bit(i);
        }
    }
    t
}

/// Induced relation on the points of `mask`, reindexed in increasing order.
pub fn restrict(rows: &[u64], mask: u64) -> Vec<u64> {
    let idx: Vec<usize> = ones(mask).collect();
    idx.iter()
        .map(|&i| {
            idx.iter()
                .enumerate()
                .filter(|(_, &j)| rows[i] & bit(j) != 0)
                .fold(0u64, |acc, (k, _)| acc | bit(k))
        })
        .collect()
}

/// All subsets of `within` that are closed upward (`x` in the set and `x <= y`
/// imply `y` in the set), listed by increasing mask.
pub fn up_closed_subsets(rows: &[u64], within: u64) -> Vec<u64> {
    subsets(within)
        .filter(|&s| ones(s).all(|i| rows[i] & within & !s == 0))
        .collect()
}

/// All subsets of `within` that are closed downward.
pub fn down_closed_subsets(rows: &[u64], within: u64) -> Vec<u64> {
    let down = transpose(rows);
    up_closed_subsets(&down, within)
}

/// Every submask of `mask`, starting from the empty set.
pub fn subsets(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur.wrapping_sub(mask)) & mask)
        };
        Some(cur)
    })
}

/// Minimal points of the relation restricted to `within`.
pub fn minima(rows: &[u64], within: u64) -> u64 {
    let down = transpose(rows);
    ones(within)
        .filter(|&i| down[i] & within & !bit(i) == 0)
        .fold(0, |acc, i| acc | bit(i))
}

/// Maximal points of the relation restricted to `within`.
pub fn maxima(rows: &[u64], within: u64) -> u64 {
    ones(within)
        .filter(|&i| rows[i] & within & !bit(i) == 0)
        .fold(0, |acc, i| acc | bit(i))
}

/// Connected components of the comparability graph, as masks ordered by
/// their smallest point.
pub fn components(rows: &[u64]) -> Vec<u64> {
    let n = rows.len();
    let down = transpose(rows);
    let mut seen = 0u64;
    let mut out = Vec::new();
    for start in 0..n {
        if seen & bit(start) != 0 {
            continue;
        }
        let mut comp = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0;
            for i in ones(frontier) {
                next |= rows[i] | down[i];
            }
            frontier = next & !comp;
            comp |= next;
        }
        seen |= comp;
        out.push(comp);
    }
    out
}

/// Assignments `x -> set(x)` over the points `elems`, each drawn from
/// `options`, such that `x <= y` (per `leq`) implies `set(y) ⊆ set(x)` and
/// every `set(x)` contains `forced(x)`.
///
/// The visitor receives the sets in the order of `elems`.
pub fn antitone_families(
    elems: &[usize],
    leq: &dyn Fn(usize, usize) -> bool,
    options: &[u64],
    forced: &dyn Fn(usize) -> u64,
    visit: &mut dyn FnMut(&[u64]),
) {
    let k = elems.len();
    // Larger elements first, so every strict upper bound is assigned earlier.
    let mut order: Vec<usize> = (0..k).collect();
    let above = |p: usize| (0..k).filter(|&q| q != p && leq(elems[p], elems[q])).count();
    order.sort_by_key(|&p| above(p));
    let uppers: Vec<Vec<usize>> = (0..k)
        .map(|p| (0..k).filter(|&q| q != p && leq(elems[p], elems[q])).collect())
        .collect();
    let forced: Vec<u64> = elems.iter().map(|&e| forced(e)).collect();
    let mut sets = vec![0u64; k];

    fn rec(
        depth: usize,
        order: &[usize],
        uppers: &[Vec<usize>],
        forced: &[u64],
        options: &[u64],
        sets: &mut [u64],
        visit: &mut dyn FnMut(&[u64]),
    ) {
        if depth == order.len() {
            visit(sets);
            return;
        }
        let p = order[depth];
        let need = uppers[p].iter().fold(forced[p], |acc, &q| acc | sets[q]);
        for &opt in options {
            if opt & need == need {
                sets[p] = opt;
                rec(depth + 1, order, uppers, forced, options, sets, visit);
            }
        }
    }
    rec(0, &order, &uppers, &forced, options, &mut sets, visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_every_submask_once() {
        let all: Vec<u64> = subsets(0b1011).collect();
        assert_eq!(all.len(), 8);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 8);
        assert!(all.iter().all(|s| s & !0b1011 == 0));
    }

    #[test]
    fn closure_of_chain_generators() {
        let mut rows = vec![0b010, 0b100, 0];
        close(&mut rows);
        assert_eq!(rows, vec![0b111, 0b110, 0b100]);
        assert!(is_partial_order(&rows));
    }

    #[test]
    fn up_closed_subsets_of_chain() {
        let mut rows = vec![0b010, 0b100, 0];
        close(&mut rows);
        assert_eq!(up_closed_subsets(&rows, 0b111), vec![0, 0b100, 0b110, 0b111]);
        assert_eq!(down_closed_subsets(&rows, 0b111), vec![0, 0b001, 0b011, 0b111]);
    }
}
