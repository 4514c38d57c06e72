//! Bipartite `z_t(m, n)` by adding left rows as column bitmasks.
//!
//! Column `j` is bit `n − 1 − j`, so integer order on masks is lexicographic
//! order on rows. Rows are placed in non-increasing order and adjacent
//! columns are kept lexicographically non-increasing while they are still
//! equal on the rows placed so far; every matrix has such a form.

use crate::detect::NodeCounter;

pub(crate) struct RowResult {
    pub value: u64,
    pub rows: Vec<u64>,
    pub exact: bool,
}

struct Search<'a> {
    m: usize,
    n: usize,
    t: usize,
    /// `sub[i]`: the optimum with `i` rows, for `i` below `m`.
    sub: &'a [u64],
    kst: Vec<u64>,
    rows: Vec<u64>,
    /// `levels[s]`: intersections of every `s`-subset of placed rows.
    levels: Vec<Vec<u64>>,
    best: u64,
    best_rows: Option<Vec<u64>>,
    counter: &'a mut NodeCounter,
    exhausted: bool,
}

impl Search<'_> {
    fn remaining_bound(&self, rows_left: usize) -> u64 {
        self.sub[rows_left].min(self.kst[rows_left])
    }

    fn dfs(&mut self, cur: u64, tied: u64) {
        if !self.counter.tick() {
            self.exhausted = true;
            return;
        }
        let i = self.rows.len();
        if i == self.m {
            if cur > self.best {
                self.best = cur;
                self.best_rows = Some(self.rows.clone());
            }
            return;
        }
        let rest = self.remaining_bound(self.m - i - 1);
        let top = self.rows.last().copied().unwrap_or((1 << self.n) - 1);
        let mut mask = top;
        loop {
            let e = mask.count_ones() as u64;
            if cur + e + rest > self.best && self.admissible(mask, tied) {
                let marks: Vec<usize> = self.levels.iter().map(Vec::len).collect();
                for s in (1..self.t).rev() {
                    let (lo, hi) = self.levels.split_at_mut(s);
                    hi[0].extend(lo[s - 1].iter().map(|&x| x & mask));
                }
                self.rows.push(mask);
                self.dfs(cur + e, self.retie(mask, tied));
                self.rows.pop();
                for (l, len) in self.levels.iter_mut().zip(marks) {
                    l.truncate(len);
                }
                if self.exhausted {
                    return;
                }
            }
            if mask == 0 {
                break;
            }
            mask -= 1;
        }
    }

    /// Column order and `K_{t,t}`-freeness against every `(t−1)`-set of rows.
    fn admissible(&self, mask: u64, tied: u64) -> bool {
        // Bit `b` of `tied`: columns owning bits `b + 1` and `b` are still equal.
        if (!mask >> 1) & mask & tied != 0 {
            return false;
        }
        self.levels[self.t - 1].iter().all(|&x| ((x & mask).count_ones() as usize) < self.t)
    }

    fn retie(&self, mask: u64, tied: u64) -> u64 {
        // Break the tie wherever the higher column has the 1.
        tied & !(mask >> 1 & !mask)
    }
}

/// Tied-pair mask for `n` columns: bit `b` stands for the pair of bits
/// `(b + 1, b)`.
fn all_tied(n: usize) -> u64 {
    if n < 2 {
        0
    } else {
        (1u64 << (n - 1)) - 1
    }
}

/// Solves `z_t(i, n)` for every `i ≤ m`; values are only exact while the
/// budget lasts.
pub(crate) fn z_rows(m: usize, n: usize, t: usize, kst: impl Fn(usize) -> u64, counter: &mut NodeCounter) -> RowResult {
    debug_assert!(n <= 63 && t >= 2);
    let mut sub = vec![0u64];
    let kst: Vec<u64> = (0..=m).map(kst).collect();
    let mut last = RowResult {
        value: 0,
        rows: Vec::new(),
        exact: true,
    };
    for rows in 1..=m {
        // A row with t − 1 edges never completes a K_{t,t}.
        let floor = sub[rows - 1] + (t - 1).min(n) as u64;
        let mut s = Search {
            m: rows,
            n,
            t,
            sub: &sub,
            kst: kst.clone(),
            rows: Vec::with_capacity(rows),
            levels: {
                let mut l = vec![Vec::new(); t];
                l[0].push((1u64 << n) - 1);
                l
            },
            best: floor - 1,
            best_rows: None,
            counter: &mut *counter,
            exhausted: false,
        };
        s.dfs(0, all_tied(n));
        let exhausted = s.exhausted;
        let (best, found) = (s.best, s.best_rows.take());
        match found {
            Some(r) if !exhausted => {
                sub.push(best);
                last = RowResult {
                    value: best,
                    rows: r,
                    exact: true,
                };
            }
            found => {
                // Budget ran out: fall back to the best graph seen, or to the
                // graph where every row takes the first t − 1 columns.
                let star = ((1u64 << n) - 1) & !((1u64 << n.saturating_sub(t - 1)) - 1);
                let fallback = vec![star; m];
                let fallback_value = m as u64 * star.count_ones() as u64;
                let (value, rows) = match found {
                    Some(r) if rows == m && best > fallback_value => (best, r),
                    _ => (fallback_value, fallback),
                };
                return RowResult { value, rows, exact: false };
            }
        }
    }
    last
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::Budget;

    fn z(m: usize, n: usize, t: usize) -> u64 {
        let mut c = NodeCounter::new(Budget::unlimited());
        let r = z_rows(m, n, t, |_| u64::MAX, &mut c);
        assert!(r.exact);
        assert_eq!(r.rows.iter().map(|x| x.count_ones() as u64).sum::<u64>(), r.value);
        r.value
    }

    #[test]
    fn known_small_values() {
        assert_eq!(z(1, 5, 2), 5);
        assert_eq!(z(2, 2, 2), 3);
        assert_eq!(z(3, 3, 2), 6);
        assert_eq!(z(4, 4, 2), 9);
        assert_eq!(z(3, 3, 3), 8);
        assert_eq!(z(5, 5, 2), 12);
        assert_eq!(z(6, 6, 2), 16);
    }

    #[test]
    fn budget_gives_valid_fallback() {
        let mut c = NodeCounter::new(Budget::nodes(3));
        let r = z_rows(5, 5, 2, |_| u64::MAX, &mut c);
        assert!(!r.exact);
        assert_eq!(r.rows.len(), 5);
        assert!(r.value >= 5);
    }
}
