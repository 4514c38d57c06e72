use crate::graph::{PartitionedGraph, VertexSet};

use super::Witness;

/// A `K_{1,t}` inside `within`: the first vertex (by index) of degree at
/// least `t` in `G[within]`, with its `t` smallest neighbours.
pub fn find_star(g: &PartitionedGraph, within: &VertexSet, t: usize) -> Option<Witness> {
    within.iter().find_map(|v| {
        let nbrs = g.neighbors(v).intersection(within);
        (nbrs.count() >= t).then(|| Witness {
            classes: vec![vec![v], nbrs.iter().take(t).collect()],
        })
    })
}
