//! Witness-producing detectors for stars, bicliques and complete
//! multipartite patterns.
//!
//! Containment is subgraph containment: a pattern class need not be an
//! independent set of the host, only the cross-class pairs must be edges.

mod biclique;
mod multipartite;
mod star;
mod through;

use serde::{Deserialize, Serialize};

use crate::graph::PartitionedGraph;

pub use biclique::{find_biclique, find_biclique_st};
pub use multipartite::{find_complete_multipartite, find_complete_multipartite_within, refine_blocks};
pub use star::find_star;
pub use through::find_pattern_through_edge;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ForbiddenPattern {
    /// `K_{1,t}`.
    Star { t: usize },
    /// `K_{s,t}`.
    Biclique { s: usize, t: usize },
    /// `K_q(t)`: `q` classes of `t` vertices, all cross pairs joined.
    CompleteMultipartite { q: usize, t: usize },
}

impl ForbiddenPattern {
    pub fn class_sizes(&self) -> Vec<usize> {
        match *self {
            ForbiddenPattern::Star { t } => vec![1, t],
            ForbiddenPattern::Biclique { s, t } => vec![s, t],
            ForbiddenPattern::CompleteMultipartite { q, t } => vec![t; q],
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.class_sizes().iter().sum()
    }

    /// Chromatic number of the pattern.
    pub fn chromatic_number(&self) -> usize {
        match *self {
            ForbiddenPattern::Star { .. } | ForbiddenPattern::Biclique { .. } => 2,
            ForbiddenPattern::CompleteMultipartite { q, .. } => q,
        }
    }
}

impl std::fmt::Display for ForbiddenPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ForbiddenPattern::Star { t } => write!(f, "K_{{1,{t}}}"),
            ForbiddenPattern::Biclique { s, t } => write!(f, "K_{{{s},{t}}}"),
            ForbiddenPattern::CompleteMultipartite { q, t } => write!(f, "K_{q}({t})"),
        }
    }
}

/// Explicit vertex certificate: one list per pattern class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub classes: Vec<Vec<usize>>,
}

impl Witness {
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().flatten().copied()
    }
}

/// Node-expansion budget for the searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Budget {
    pub const fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes }
    }

    pub const fn unlimited() -> Self {
        Budget { max_nodes: u64::MAX }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::nodes(100_000_000)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Free,
    Found(Witness),
    BudgetExceeded,
}

impl Outcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Outcome::Free)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detection {
    pub outcome: Outcome,
    pub nodes: u64,
}

/// Counts expansions and reports when the budget runs out.
#[derive(Debug)]
pub(crate) struct NodeCounter {
    pub nodes: u64,
    limit: u64,
}

impl NodeCounter {
    pub fn new(budget: Budget) -> Self {
        NodeCounter {
            nodes: 0,
            limit: budget.max_nodes,
        }
    }

    /// Returns false once the budget is exhausted.
    #[inline]
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.limit
    }
}

/// Re-checks a witness against the host, independently of any search.
pub fn verify_witness(g: &PartitionedGraph, pattern: &ForbiddenPattern, w: &Witness) -> bool {
    let sizes = pattern.class_sizes();
    if w.classes.len() != sizes.len() || w.classes.iter().zip(&sizes).any(|(c, &s)| c.len() != s) {
        return false;
    }
    let n = g.n_vertices();
    let mut seen = vec![false; n];
    for v in w.vertices() {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    for (i, a) in w.classes.iter().enumerate() {
        for b in &w.classes[i + 1..] {
            if a.iter().any(|&x| b.iter().any(|&y| !g.has_edge(x, y))) {
                return false;
            }
        }
    }
    true
}

/// Runs the detector matching `pattern` over the whole graph.
pub fn detect(g: &PartitionedGraph, pattern: &ForbiddenPattern, budget: Budget) -> Detection {
    let all = g.universe();
    match *pattern {
        ForbiddenPattern::Star { t } => Detection {
            outcome: find_star(g, &all, t).map_or(Outcome::Free, Outcome::Found),
            nodes: g.n_vertices() as u64,
        },
        ForbiddenPattern::Biclique { s, t } => find_biclique_st(g, &all, s, t, budget),
        ForbiddenPattern::CompleteMultipartite { q, t } => find_complete_multipartite(g, q, t, budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_rejects_bad_witnesses() {
        let g = PartitionedGraph::complete(&[2, 2]).unwrap();
        let p = ForbiddenPattern::Biclique { s: 2, t: 2 };
        let w = Witness {
            classes: vec![vec![0, 1], vec![2, 3]],
        };
        assert!(verify_witness(&g, &p, &w));

        let mut h = g.clone();
        h.remove_edge(0, 3);
        assert!(!verify_witness(&h, &p, &w));

        let overlap = Witness {
            classes: vec![vec![0, 1], vec![1, 3]],
        };
        assert!(!verify_witness(&g, &p, &overlap));
        let short = Witness {
            classes: vec![vec![0], vec![2, 3]],
        };
        assert!(!verify_witness(&g, &p, &short));
    }
}
