//! Branch and bound for the largest `K_q(t)`-free subgraph of a complete
//! multipartite host.
//!
//! Pairs are decided vertex by vertex: all pairs `uv` with `v > u` before
//! any pair of `u + 1`, and within a vertex in increasing `v`, include first.
//! When vertex `u` is being decided, edges among the later vertices are all
//! still open, so the optimum of the sub-instance they form (memoized by its
//! sorted part sizes) bounds what they can still contribute.

use std::collections::HashMap;

use crate::detect::{find_pattern_through_edge, Budget, NodeCounter};
use crate::error::Result;
use crate::graph::PartitionedGraph;

pub(crate) struct Solved {
    pub value: u64,
    pub graph: PartitionedGraph,
    pub exact: bool,
}

pub(crate) struct Engine {
    q: usize,
    t: usize,
    memo: HashMap<Vec<usize>, u64>,
    counter: NodeCounter,
    exhausted: bool,
}

fn cross_pairs(sizes: &[usize]) -> u64 {
    let total: usize = sizes.iter().sum();
    let inside: usize = sizes.iter().map(|s| s * s).sum();
    ((total * total - inside) / 2) as u64
}

struct Run<'a> {
    g: PartitionedGraph,
    pairs: Vec<Vec<usize>>,
    suffix: Vec<u64>,
    best: u64,
    best_graph: PartitionedGraph,
    engine: &'a mut Engine,
}

impl Run<'_> {
    fn dfs(&mut self, u: usize, j: usize, cur: u64) {
        if !self.engine.counter.tick() {
            self.engine.exhausted = true;
            return;
        }
        if u == self.pairs.len() {
            if cur > self.best {
                self.best = cur;
                self.best_graph = self.g.clone();
            }
            return;
        }
        if j == self.pairs[u].len() {
            return self.dfs(u + 1, 0, cur);
        }
        let open = (self.pairs[u].len() - j) as u64;
        if cur + open + self.suffix[u] <= self.best {
            return;
        }
        let v = self.pairs[u][j];
        // Pairs are crossing by construction.
        let _ = self.g.add_edge(u, v);
        if find_pattern_through_edge(&self.g, u, v, self.engine.q, self.engine.t).is_none() {
            self.dfs(u, j + 1, cur + 1);
        }
        self.g.remove_edge(u, v);
        if self.engine.exhausted {
            return;
        }
        self.dfs(u, j + 1, cur);
    }
}

impl Engine {
    pub fn new(q: usize, t: usize, budget: Budget) -> Self {
        Engine {
            q,
            t,
            memo: HashMap::new(),
            counter: NodeCounter::new(budget),
            exhausted: false,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.counter.nodes
    }

    fn trivially_full(&self, sizes: &[usize]) -> bool {
        sizes.iter().filter(|&&s| s > 0).count() < self.q || sizes.iter().sum::<usize>() < self.q * self.t
    }

    /// Optimum of the instance with these part sizes, or the number of cross
    /// pairs when the budget does not allow solving it.
    fn bound(&mut self, sizes: &[usize]) -> Result<u64> {
        let mut key: Vec<usize> = sizes.iter().copied().filter(|&s| s > 0).collect();
        key.sort_unstable_by(|a, b| b.cmp(a));
        if self.trivially_full(&key) {
            return Ok(cross_pairs(&key));
        }
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let s = self.solve(&key)?;
        Ok(if s.exact { s.value } else { cross_pairs(&key) })
    }

    pub fn solve(&mut self, parts: &[usize]) -> Result<Solved> {
        if self.trivially_full(parts) {
            let graph = PartitionedGraph::complete(parts)?;
            return Ok(Solved {
                value: graph.edge_count() as u64,
                graph,
                exact: true,
            });
        }
        let g = PartitionedGraph::empty(parts)?;
        let n = g.n_vertices();
        let mut suffix = Vec::with_capacity(n);
        for u in 0..n {
            let p = g.part_of(u);
            let mut rest = vec![g.part_range(p).end - u - 1];
            rest.extend_from_slice(&parts[p + 1..]);
            suffix.push(self.bound(&rest)?);
        }
        let pairs = (0..n)
            .map(|u| (u + 1..n).filter(|&v| g.part_of(v) != g.part_of(u)).collect())
            .collect();
        let mut run = Run {
            best_graph: g.clone(),
            g,
            pairs,
            suffix,
            best: 0,
            engine: self,
        };
        run.dfs(0, 0, 0);
        let (value, graph) = (run.best, run.best_graph);
        let exact = !self.exhausted;
        if exact {
            let mut key = parts.to_vec();
            key.sort_unstable_by(|a, b| b.cmp(a));
            self.memo.insert(key, value);
        }
        Ok(Solved { value, graph, exact })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(parts: &[usize], q: usize, t: usize) -> u64 {
        let s = Engine::new(q, t, Budget::unlimited()).solve(parts).unwrap();
        assert!(s.exact);
        assert_eq!(s.graph.edge_count() as u64, s.value);
        s.value
    }

    #[test]
    fn small_values() {
        assert_eq!(solve(&[1, 1, 1], 3, 1), 2);
        assert_eq!(solve(&[1, 1, 1, 1], 3, 1), 4);
        assert_eq!(solve(&[2, 2, 2], 3, 1), 8);
        assert_eq!(solve(&[2, 2], 2, 2), 3);
        assert_eq!(solve(&[3, 3], 2, 2), 6);
        assert_eq!(solve(&[1, 1, 1], 3, 2), 3);
    }

    #[test]
    fn budget_marks_inexact() {
        let s = Engine::new(3, 1, Budget::nodes(5)).solve(&[2, 2, 2]).unwrap();
        assert!(!s.exact);
        assert!(s.value <= 8);
    }
}
