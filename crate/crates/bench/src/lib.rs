//! Fixtures shared by the benchmarks.

use turan_core::constructions::{basic_construction, cayley_bipartite, largest_sidon_set, ConstructionParams};
use turan_core::PartitionedGraph;

/// The basic construction on `k` parts of `n` with a Sidon class-1 graph.
pub fn construction(n: usize, r: usize, k: usize) -> PartitionedGraph {
    let b = cayley_bipartite(n, &largest_sidon_set(n)).expect("valid Sidon graph");
    let p = ConstructionParams::new(n, r, k, 2).expect("valid parameters");
    basic_construction(&p, &b).expect("construction").graph
}
