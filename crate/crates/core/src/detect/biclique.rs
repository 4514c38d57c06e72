use crate::bitset::BitSet;
use crate::graph::{PartitionedGraph, VertexSet};

use super::{Budget, Detection, NodeCounter, Outcome, Witness};

/// A `K_{t,t}` with both sides inside `within`.
pub fn find_biclique(g: &PartitionedGraph, within: &VertexSet, t: usize, budget: Budget) -> Detection {
    find_biclique_st(g, within, t, t, budget)
}

/// A `K_{s,t}` inside `within`: disjoint `A` (size `s`) and `B` (size `t`)
/// with every pair of `A × B` an edge.
///
/// `A` is grown in increasing vertex order while the common neighbourhood
/// of `A` (inside `within`, minus `A`) still holds `t` vertices. `B` is the
/// `t` smallest vertices of the final common neighbourhood.
pub fn find_biclique_st(g: &PartitionedGraph, within: &VertexSet, s: usize, t: usize, budget: Budget) -> Detection {
    let mut counter = NodeCounter::new(budget);
    if s == 0 || t == 0 {
        let outcome = if within.count() >= s + t {
            let mut it = within.iter();
            let a: Vec<usize> = it.by_ref().take(s).collect();
            let b: Vec<usize> = it.take(t).collect();
            Outcome::Found(Witness { classes: vec![a, b] })
        } else {
            Outcome::Free
        };
        return Detection { outcome, nodes: 0 };
    }
    let mut chosen = Vec::with_capacity(s);
    let mut chosen_set = BitSet::new(g.n_vertices());
    let outcome = match grow(g, within, s, t, within, &mut chosen, &mut chosen_set, &mut counter) {
        Some(Some(w)) => Outcome::Found(w),
        Some(None) => Outcome::Free,
        None => Outcome::BudgetExceeded,
    };
    Detection {
        outcome,
        nodes: counter.nodes,
    }
}

/// `None` when the budget ran out.
#[allow(clippy::too_many_arguments)]
fn grow(
    g: &PartitionedGraph,
    within: &VertexSet,
    s: usize,
    t: usize,
    common: &BitSet,
    chosen: &mut Vec<usize>,
    chosen_set: &mut BitSet,
    counter: &mut NodeCounter,
) -> Option<Option<Witness>> {
    if chosen.len() == s {
        let b: Vec<usize> = common.difference(chosen_set).iter().take(t).collect();
        debug_assert_eq!(b.len(), t);
        return Some(Some(Witness {
            classes: vec![chosen.clone(), b],
        }));
    }
    let last = chosen.last().copied();
    for a in within.iter_above(last) {
        if !counter.tick() {
            return None;
        }
        let next = common.intersection(g.neighbors(a));
        chosen_set.insert(a);
        if next.intersection_count_minus(&next, chosen_set) >= t {
            chosen.push(a);
            let r = grow(g, within, s, t, &next, chosen, chosen_set, counter)?;
            chosen.pop();
            if r.is_some() {
                chosen_set.remove(a);
                return Some(r);
            }
        }
        chosen_set.remove(a);
    }
    Some(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{verify_witness, ForbiddenPattern};

    fn all(g: &PartitionedGraph) -> VertexSet {
        g.universe()
    }

    #[test]
    fn k22_contains_itself() {
        let g = PartitionedGraph::complete(&[2, 2]).unwrap();
        let d = find_biclique(&g, &all(&g), 2, Budget::unlimited());
        let w = d.outcome.witness().unwrap();
        assert_eq!(w.classes, vec![vec![0, 1], vec![2, 3]]);
        assert!(verify_witness(&g, &ForbiddenPattern::Biclique { s: 2, t: 2 }, w));
    }

    #[test]
    fn eight_cycle_is_c4_free() {
        let edges = [(0, 4), (0, 5), (1, 5), (1, 6), (2, 6), (2, 7), (3, 7), (3, 4)];
        let g = PartitionedGraph::from_edges(&[4, 4], edges).unwrap();
        assert_eq!(find_biclique(&g, &all(&g), 2, Budget::unlimited()).outcome, Outcome::Free);
    }

    #[test]
    fn k33_minus_edge_has_no_k33() {
        let mut g = PartitionedGraph::complete(&[3, 3]).unwrap();
        g.remove_edge(0, 3);
        assert_eq!(find_biclique(&g, &all(&g), 3, Budget::unlimited()).outcome, Outcome::Free);
        assert!(find_biclique_st(&g, &all(&g), 2, 3, Budget::unlimited())
            .outcome
            .witness()
            .is_some());
    }

    #[test]
    fn respects_within() {
        let g = PartitionedGraph::complete(&[2, 2]).unwrap();
        let mut w = all(&g);
        w.remove(3);
        assert_eq!(find_biclique(&g, &w, 2, Budget::unlimited()).outcome, Outcome::Free);
    }

    #[test]
    fn budget_is_reported() {
        let g = PartitionedGraph::complete(&[4, 4]).unwrap();
        let mut h = g.clone();
        for v in 4..8 {
            h.remove_edge(0, v);
        }
        let d = find_biclique(&h, &all(&h), 4, Budget::nodes(3));
        assert_eq!(d.outcome, Outcome::BudgetExceeded);
    }
}
