//! Slow reference implementations. They enumerate plainly and share no
//! code with the library searches.
#![allow(dead_code)]

use turan_core::PartitionedGraph;

/// Adjacency matrix of `g`.
pub fn matrix(g: &PartitionedGraph) -> Vec<Vec<bool>> {
    let n = g.n_vertices();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Whether some injective placement of classes of the given sizes joins
/// every pair from different classes.
pub fn naive_contains(adj: &[Vec<bool>], classes: &[usize]) -> bool {
    let slots: Vec<usize> = classes.iter().enumerate().flat_map(|(c, &s)| std::iter::repeat_n(c, s)).collect();
    let mut placed: Vec<usize> = Vec::new();
    fn go(adj: &[Vec<bool>], slots: &[usize], placed: &mut Vec<usize>) -> bool {
        let i = placed.len();
        if i == slots.len() {
            return true;
        }
        // Inside a class, members increase.
        let start = if i > 0 && slots[i - 1] == slots[i] { placed[i - 1] + 1 } else { 0 };
        for v in start..adj.len() {
            if placed.contains(&v) {
                continue;
            }
            let ok = placed.iter().zip(slots).all(|(&u, &c)| c == slots[i] || adj[u][v]);
            if ok {
                placed.push(v);
                if go(adj, slots, placed) {
                    return true;
                }
                placed.pop();
            }
        }
        false
    }
    go(adj, &slots, &mut placed)
}

/// Every crossing pair of a host, in a fixed order.
pub fn crossing_pairs(parts: &[usize]) -> Vec<(usize, usize)> {
    let mut part = Vec::new();
    for (p, &s) in parts.iter().enumerate() {
        part.extend(std::iter::repeat_n(p, s));
    }
    let n = part.len();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                out.push((u, v));
            }
        }
    }
    out
}

/// Host graph whose edges are the pairs selected by `mask`.
pub fn graph_from_mask(parts: &[usize], pairs: &[(usize, usize)], mask: u64) -> PartitionedGraph {
    let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
    PartitionedGraph::from_edges(parts, edges).unwrap()
}

/// Maximum edges of a host on `parts` avoiding the pattern with the given
/// class sizes, over all `2^pairs` edge sets.
pub fn naive_extremal(parts: &[usize], classes: &[usize]) -> u64 {
    let pairs = crossing_pairs(parts);
    assert!(pairs.len() <= 24, "too many pairs for exhaustion");
    let n: usize = parts.iter().sum();
    let mut best = 0;
    for mask in 0u64..(1 << pairs.len()) {
        let e = mask.count_ones() as u64;
        if e <= best {
            continue;
        }
        let mut adj = vec![vec![false; n]; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
        if !naive_contains(&adj, classes) {
            best = e;
        }
    }
    best
}

/// `z_t(m, n)` by exhausting every bipartite graph.
pub fn naive_z(m: usize, n: usize, t: usize) -> u64 {
    naive_extremal(&[m, n], &[t, t])
}
