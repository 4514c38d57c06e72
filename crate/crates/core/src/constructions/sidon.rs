//! Sidon sets in `Z_n` and their bipartite Cayley graphs.
//!
//! If the ordered differences of `S` are pairwise distinct mod `n`, the
//! bipartite graph joining `i` on the left to `i + s` on the right, for
//! `s ∈ S`, is `|S|`-regular and contains no `K_{2,2}`.

use crate::error::{Error, Result};
use crate::graph::PartitionedGraph;

/// All ordered differences `s − s'` (`s ≠ s'`) distinct mod `n`.
pub fn is_sidon(set: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    for (i, &s) in set.iter().enumerate() {
        for (j, &s2) in set.iter().enumerate() {
            if i == j {
                continue;
            }
            if s % n == s2 % n {
                return false;
            }
            let d = (s + n - s2 % n) % n;
            if std::mem::replace(&mut seen[d], true) {
                return false;
            }
        }
    }
    true
}

/// Extends `set` to `target` elements with residues in increasing order.
fn extend(set: &mut Vec<usize>, used: &mut [bool], n: usize, target: usize) -> bool {
    if set.len() == target {
        return true;
    }
    let start = set.last().map_or(0, |&s| s + 1);
    for x in start..n {
        if n - x < target - set.len() {
            break;
        }
        let diffs: Vec<usize> = set.iter().flat_map(|&s| [(x + n - s) % n, (s + n - x) % n]).collect();
        let mut fresh = diffs.iter().all(|&d| !used[d]);
        if fresh {
            let mut sorted = diffs.clone();
            sorted.sort_unstable();
            fresh = sorted.windows(2).all(|w| w[0] != w[1]);
        }
        if !fresh {
            continue;
        }
        for &d in &diffs {
            used[d] = true;
        }
        set.push(x);
        if extend(set, used, n, target) {
            return true;
        }
        set.pop();
        for &d in &diffs {
            used[d] = false;
        }
    }
    false
}

fn search(n: usize, size: usize) -> Option<Vec<usize>> {
    let mut set = Vec::with_capacity(size);
    let mut used = vec![false; n];
    extend(&mut set, &mut used, n, size).then_some(set)
}

/// The lexicographically first Sidon set of size `t` in `Z_n`.
///
/// Requires `n ≥ 8t²` for `t ≥ 2`; smaller sets are always available.
pub fn sidon_set(n: usize, t: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::InvalidParams("Sidon sets need n >= 1".into()));
    }
    if t >= 2 && n < 8 * t * t {
        return Err(Error::InvalidParams(format!(
            "sidon_set needs n >= 8t^2 = {}, got n={n}",
            8 * t * t
        )));
    }
    search(n, t).ok_or_else(|| Error::InvalidParams(format!("no Sidon set of size {t} mod {n}")))
}

/// A largest Sidon set in `Z_n` (the lexicographically first of that size).
pub fn largest_sidon_set(n: usize) -> Vec<usize> {
    let mut best = vec![0];
    for size in 2..=n {
        // s(s − 1) ordered differences must fit into the n − 1 non-zero residues.
        if size * (size - 1) > n - 1 {
            break;
        }
        match search(n, size) {
            Some(s) => best = s,
            None => break,
        }
    }
    best
}

/// Left part `0..n`, right part `n..2n`; `i ~ n + (i + s) mod n`.
pub fn cayley_bipartite(n: usize, set: &[usize]) -> Result<PartitionedGraph> {
    let mut g = PartitionedGraph::empty(&[n, n])?;
    for i in 0..n {
        for &s in set {
            g.add_edge(i, n + (i + s) % n)?;
        }
    }
    Ok(g)
}

/// A `t`-regular `K_{2,2}`-free bipartite graph with `n` vertices per side.
///
/// `t = 0` gives the empty graph and `t = 1` a perfect matching for any `n`;
/// otherwise `n ≥ 8t²` is required.
pub fn regular_c4free_bipartite(n: usize, t: usize) -> Result<PartitionedGraph> {
    match t {
        0 => PartitionedGraph::empty(&[n, n]),
        _ => cayley_bipartite(n, &sidon_set(n, t)?),
    }
}
