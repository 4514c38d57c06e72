//! Zarankiewicz numbers: the most edges in a `K_{t,t}`-free graph with
//! given part sizes.

mod gaps;
mod lower;
mod rows;

use serde::{Deserialize, Serialize};

use crate::detect::{find_biclique, Budget, NodeCounter};
use crate::error::{Error, Result};
use crate::ex::{check_pair_limit, engine::Engine};
use crate::graph::{GraphDoc, PartitionedGraph};

pub use gaps::{cached_z_exact, gap_checks, ColumnDeficit, GapRange, GapReport, PartStep, RowStep};
pub use lower::{stack_e1_construction, z_lower_construction};

/// Columns the bipartite row search can represent.
pub const MAX_ROW_COLUMNS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Exact,
    LowerBoundOnly,
}

/// Part sizes, sorted in non-increasing order, and the pattern size `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZarKey {
    part_sizes: Vec<usize>,
    t: usize,
}

impl ZarKey {
    pub fn new(mut part_sizes: Vec<usize>, t: usize) -> Result<Self> {
        if part_sizes.len() < 2 || part_sizes.contains(&0) || t == 0 {
            return Err(Error::InvalidParams(format!(
                "need at least two positive part sizes and t >= 1, got {part_sizes:?}, t={t}"
            )));
        }
        part_sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ZarKey { part_sizes, t })
    }

    pub fn bipartite(m: usize, n: usize, t: usize) -> Result<Self> {
        Self::new(vec![m, n], t)
    }

    pub fn balanced(a: usize, n: usize, t: usize) -> Result<Self> {
        Self::new(vec![n; a], t)
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn arity(&self) -> usize {
        self.part_sizes.len()
    }

    fn canonical(self) -> Result<Self> {
        Self::new(self.part_sizes, self.t)
    }
}

impl std::fmt::Display for ZarKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sizes: Vec<String> = self.part_sizes.iter().map(ToString::to_string).collect();
        write!(f, "z_{}({})", self.t, sizes.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZarRecord {
    pub key: ZarKey,
    pub value: u64,
    pub witness: GraphDoc,
    pub status: Status,
}

impl ZarRecord {
    pub fn graph(&self) -> Result<PartitionedGraph> {
        PartitionedGraph::from_doc(&self.witness)
    }

    /// Witness has the key's parts, `value` edges and no `K_{t,t}`.
    pub fn verify(&self) -> Result<()> {
        let key = self.key.clone().canonical()?;
        if key != self.key {
            return Err(Error::Malformed(format!("key {} is not canonical", self.key)));
        }
        let g = self.graph()?;
        if g.part_sizes() != self.key.part_sizes() {
            return Err(Error::Malformed(format!(
                "witness parts {:?} do not match {}",
                g.part_sizes(),
                self.key
            )));
        }
        if g.edge_count() as u64 != self.value {
            return Err(Error::Malformed(format!(
                "witness has {} edges, record says {}",
                g.edge_count(),
                self.value
            )));
        }
        let t = self.key.t;
        if !find_biclique(&g, &g.universe(), t, Budget::unlimited()).outcome.is_free() {
            return Err(Error::NotFree("witness", format!("K_{{{t},{t}}}")));
        }
        Ok(())
    }
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Largest `e` with `Σ_{v ∈ R} C(d_v, t) ≤ (t−1)·C(|L|, t)` for the most
/// even degree sequence on `R`, minimised over both choices of `R`.
///
/// Returns `m·n` when `m < t` or `n < t`.
pub fn kst_upper(m: usize, n: usize, t: usize) -> u64 {
    if m < t || n < t || t == 0 {
        return if t == 0 { 0 } else { (m * n) as u64 };
    }
    let one_side = |left: usize, right: usize| -> u64 {
        let cap = (t as u128 - 1) * binom(left as u64, t as u64);
        let cost = |e: u64| -> u128 {
            let (q, rem) = (e / right as u64, e % right as u64);
            rem as u128 * binom(q + 1, t as u64) + (right as u64 - rem) as u128 * binom(q, t as u64)
        };
        let (mut lo, mut hi) = (0u64, (left * right) as u64);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if cost(mid) <= cap {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    };
    one_side(m, n).min(one_side(n, m))
}

fn record(key: &ZarKey, graph: PartitionedGraph, exact: bool) -> Result<ZarRecord> {
    let rec = ZarRecord {
        key: key.clone(),
        value: graph.edge_count() as u64,
        witness: graph.to_doc(),
        status: if exact { Status::Exact } else { Status::LowerBoundOnly },
    };
    rec.verify()?;
    Ok(rec)
}

/// Exact value by branch and bound. When the budget runs out the record is
/// `LowerBoundOnly` and holds the best graph found.
pub fn z_exact(key: &ZarKey, budget: Budget) -> Result<ZarRecord> {
    let sizes = key.part_sizes();
    let t = key.t();
    if t == 1 {
        return record(key, PartitionedGraph::empty(sizes)?, true);
    }
    if key.arity() == 2 {
        let (m, n) = (sizes[0], sizes[1]);
        if m < t || n < t {
            return record(key, PartitionedGraph::complete(sizes)?, true);
        }
        if n > MAX_ROW_COLUMNS {
            return Err(Error::InvalidParams(format!(
                "exact bipartite search handles at most {MAX_ROW_COLUMNS} columns, got {key}"
            )));
        }
        let mut counter = NodeCounter::new(budget);
        let res = rows::z_rows(m, n, t, |i| kst_upper(i, n, t), &mut counter);
        log::debug!("{key}: {} in {} nodes (exact: {})", res.value, counter.nodes, res.exact);
        let mut g = PartitionedGraph::empty(sizes)?;
        for (i, &mask) in res.rows.iter().enumerate() {
            for j in 0..n {
                if mask >> (n - 1 - j) & 1 == 1 {
                    g.add_edge(i, m + j)?;
                }
            }
        }
        return record(key, g, res.exact);
    }
    check_pair_limit(sizes)?;
    let mut engine = Engine::new(2, t, budget);
    let s = engine.solve(sizes)?;
    log::debug!("{key}: {} in {} nodes (exact: {})", s.value, engine.nodes(), s.exact);
    record(key, s.graph, s.exact)
}
