use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructions::{cayley_bipartite, largest_sidon_set};
use crate::detect::find_pattern_through_edge;
use crate::error::{Error, Result};
use crate::graph::PartitionedGraph;
use crate::zar::{record, ZarKey, ZarRecord};

/// Removal attempts in the local search after the greedy pass.
const LOCAL_MOVES: usize = 400;

fn creates_ktt(g: &PartitionedGraph, u: usize, v: usize, t: usize) -> bool {
    find_pattern_through_edge(g, u, v, 2, t).is_some()
}

/// Adds the listed pairs in order whenever no `K_{t,t}` appears; returns how
/// many were added.
fn greedy_fill(g: &mut PartitionedGraph, pairs: &[(usize, usize)], t: usize) -> usize {
    let mut added = 0;
    for &(u, v) in pairs {
        if g.has_edge(u, v) {
            continue;
        }
        // Crossing pairs only.
        let _ = g.add_edge(u, v);
        if creates_ktt(g, u, v, t) {
            g.remove_edge(u, v);
        } else {
            added += 1;
        }
    }
    added
}

fn greedy_ktt_free(n: usize, t: usize, seed: u64) -> Result<PartitionedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = PartitionedGraph::empty(&[n, n])?;
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (n..2 * n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    greedy_fill(&mut g, &pairs, t);
    // Drop an edge, refill greedily, keep the result if it grew.
    for _ in 0..LOCAL_MOVES {
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let Some(&(u, v)) = edges.choose(&mut rng) else { break };
        let before = g.clone();
        g.remove_edge(u, v);
        pairs.shuffle(&mut rng);
        let others: Vec<(usize, usize)> = pairs.iter().copied().filter(|&p| p != (u, v)).collect();
        if greedy_fill(&mut g, &others, t) < 2 {
            g = before;
        }
    }
    Ok(g)
}

/// A `K_{t,t}`-free `n × n` graph. For `t = 2` the Cayley graph of the
/// largest Sidon set found in `Z_n`; for `t = 3` a seeded greedy graph
/// improved by local search.
pub fn z_lower_construction(n: usize, t: usize, seed: u64) -> Result<ZarRecord> {
    let key = ZarKey::bipartite(n, n, t)?;
    let g = match t {
        2 => cayley_bipartite(n, &largest_sidon_set(n))?,
        3 => greedy_ktt_free(n, t, seed)?,
        _ => {
            return Err(Error::InvalidParams(format!(
                "lower-bound constructions exist for t in {{2, 3}}, got {t}"
            )))
        }
    };
    record(&key, g, false)
}

/// `(a+1)`-partite `K_{t,t}`-free graph on parts of size `n`: `base` on
/// `V_2′, V_3, …, V_{a+1}` where `V_2′` takes the first `⌊n/2⌋` vertices of
/// `V_1` and the first `⌈n/2⌉` of `V_2`, and `pair` between the remaining
/// vertices of `V_1` and `V_2`.
pub fn stack_e1_construction(a: usize, n: usize, t: usize, base: &ZarRecord, pair: &ZarRecord) -> Result<PartitionedGraph> {
    if n < 2 || a < 2 {
        return Err(Error::InvalidParams(format!("stacking needs a >= 2 and n >= 2, got a={a}, n={n}")));
    }
    let (lo, hi) = (n / 2, n.div_ceil(2));
    if base.key != ZarKey::balanced(a, n, t)? || pair.key != ZarKey::bipartite(lo, lo, t)? {
        return Err(Error::InvalidParams(format!(
            "expected witnesses for {} and {}, got {} and {}",
            ZarKey::balanced(a, n, t)?,
            ZarKey::bipartite(lo, lo, t)?,
            base.key,
            pair.key
        )));
    }
    base.verify()?;
    pair.verify()?;
    let mut g = PartitionedGraph::empty(&vec![n; a + 1])?;
    // Host index of base vertex `x`: its part 0 is V_2′, part p ≥ 1 is V_{p+2}.
    let place = |x: usize| -> usize {
        if x < lo {
            x
        } else if x < n {
            n + (x - lo)
        } else {
            x + n
        }
    };
    for (x, y) in base.graph()?.edges() {
        g.add_edge(place(x), place(y))?;
    }
    // Pair left side: V_1 from lo; right side: V_2 from hi.
    for (x, y) in pair.graph()?.edges() {
        g.add_edge(lo + x, n + hi + (y - lo))?;
    }
    Ok(g)
}
