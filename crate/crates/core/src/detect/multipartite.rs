//! `K_q(t)` detection by a two-level search.
//!
//! The host is first split into *blocks*: the stable colouring obtained by
//! refining the part partition with neighbour-colour multisets. Every block
//! lies inside one part, so it is an independent set and all of its witness
//! vertices must sit in a single pattern class, at most `t` of them.
//!
//! Level one assigns every pattern class a *profile*, a list of
//! `(block, count)` pairs summing to `t`, with distinct classes on disjoint
//! blocks. Two entries `(b, c)` and `(b', c')` in different classes are only
//! compatible when `G[b, b']` contains a `K_{c,c'}` with the `c` side in `b`;
//! this is precomputed per block pair and acts as a capacity bound on every
//! block still free. Level two realises a complete profile with concrete
//! vertices, keeping for each class the set of vertices adjacent to every
//! vertex already placed in the other classes.

use crate::bitset::BitSet;
use crate::graph::{PartitionedGraph, VertexSet};

use super::{Budget, Detection, NodeCounter, Outcome, Witness};

/// Stable refinement of the part partition restricted to `within`.
/// Blocks are returned ordered by their smallest vertex.
pub fn refine_blocks(g: &PartitionedGraph, within: &VertexSet) -> Vec<BitSet> {
    let n = g.n_vertices();
    let members: Vec<usize> = within.iter().collect();
    let mut color = vec![usize::MAX; n];
    for &v in &members {
        color[v] = g.part_of(v);
    }
    let mut n_colors = count_distinct(&members, &color);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = members
            .iter()
            .map(|&v| {
                let mut nc: Vec<usize> = g.neighbors(v).iter().filter(|&u| within.contains(u)).map(|u| color[u]).collect();
                nc.sort_unstable();
                (color[v], nc, v)
            })
            .collect();
        sigs.sort();
        let mut next = color.clone();
        let mut id = 0;
        for i in 0..sigs.len() {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                id += 1;
            }
            next[sigs[i].2] = id;
        }
        let refined = count_distinct(&members, &next);
        color = next;
        if refined == n_colors {
            break;
        }
        n_colors = refined;
    }
    let mut blocks: Vec<BitSet> = Vec::new();
    let mut block_of_color = std::collections::HashMap::new();
    for &v in &members {
        let idx = *block_of_color.entry(color[v]).or_insert_with(|| {
            blocks.push(BitSet::new(n));
            blocks.len() - 1
        });
        blocks[idx].insert(v);
    }
    blocks
}

fn count_distinct(members: &[usize], color: &[usize]) -> usize {
    let mut c: Vec<usize> = members.iter().map(|&v| color[v]).collect();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Largest `c ≤ cap` such that some `a`-subset of `from` has `c` common
/// neighbours in `to`.
fn max_common(g: &PartitionedGraph, from: &[usize], a: usize, to: &BitSet, cap: usize) -> usize {
    fn rec(g: &PartitionedGraph, from: &[usize], start: usize, a: usize, common: &BitSet, cap: usize, best: &mut usize) {
        if *best >= cap {
            return;
        }
        let c = common.count();
        if c <= *best {
            return;
        }
        if a == 0 {
            *best = c.min(cap);
            return;
        }
        for i in start..from.len() {
            if from.len() - i < a {
                break;
            }
            let next = common.intersection(g.neighbors(from[i]));
            rec(g, from, i + 1, a - 1, &next, cap, best);
            if *best >= cap {
                return;
            }
        }
    }
    let mut best = 0;
    if a <= from.len() {
        rec(g, from, 0, a, to, cap, &mut best);
    }
    best
}

enum Step {
    Found(Witness),
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    g: &'a PartitionedGraph,
    within: &'a VertexSet,
    q: usize,
    t: usize,
    blocks: Vec<BitSet>,
    /// `compat[b][b2][c]`: most vertices of `b2` that can join `c` vertices of `b`.
    compat: Vec<Vec<Vec<usize>>>,
    caps: Vec<usize>,
    profile: Vec<Vec<(usize, usize)>>,
    counter: NodeCounter,
}

impl Search<'_> {
    fn free_capacity(&self, from: usize) -> (usize, usize) {
        self.caps[from..]
            .iter()
            .filter(|&&c| c > 0)
            .fold((0, 0), |(sum, cnt), &c| (sum + c, cnt + 1))
    }

    fn next_class(&mut self, floor: usize) -> Step {
        let done = self.profile.len();
        if done == self.q {
            return self.realise();
        }
        let remaining = self.q - done;
        for b0 in floor..self.blocks.len() {
            if self.caps[b0] == 0 {
                continue;
            }
            let (cap, cnt) = self.free_capacity(b0);
            if cap < remaining * self.t || cnt < remaining {
                break;
            }
            for c0 in (1..=self.caps[b0].min(self.t)).rev() {
                self.profile.push(vec![(b0, c0)]);
                let r = self.fill_class(b0 + 1, self.t - c0, b0);
                self.profile.pop();
                if !matches!(r, Step::Exhausted) {
                    return r;
                }
            }
        }
        Step::Exhausted
    }

    /// Extends the last profile entry with blocks `≥ floor`.
    fn fill_class(&mut self, floor: usize, need: usize, first: usize) -> Step {
        if !self.counter.tick() {
            return Step::OutOfBudget;
        }
        if need == 0 {
            return self.close_class(first);
        }
        if self.free_capacity(floor).0 < need {
            return Step::Exhausted;
        }
        for b in floor..self.blocks.len() {
            if self.caps[b] == 0 {
                continue;
            }
            for c in (1..=self.caps[b].min(need)).rev() {
                self.profile.last_mut().expect("class under construction").push((b, c));
                let r = self.fill_class(b + 1, need - c, first);
                self.profile.last_mut().expect("class under construction").pop();
                if !matches!(r, Step::Exhausted) {
                    return r;
                }
            }
        }
        Step::Exhausted
    }

    fn close_class(&mut self, first: usize) -> Step {
        let saved = self.caps.clone();
        let class = self.profile.last().expect("class under construction").clone();
        for &(b, _) in &class {
            self.caps[b] = 0;
        }
        for b in 0..self.blocks.len() {
            if self.caps[b] == 0 {
                continue;
            }
            for &(bi, ci) in &class {
                self.caps[b] = self.caps[b].min(self.compat[bi][b][ci]);
            }
        }
        let r = self.next_class(first + 1);
        self.caps = saved;
        r
    }

    fn realise(&mut self) -> Step {
        let slots: Vec<(usize, usize, usize)> = self
            .profile
            .iter()
            .enumerate()
            .flat_map(|(ci, class)| class.iter().map(move |&(b, c)| (ci, b, c)))
            .collect();
        let mut allowed = vec![self.within.clone(); self.q];
        let mut used = BitSet::new(self.g.n_vertices());
        let mut chosen: Vec<Vec<usize>> = vec![Vec::new(); self.q];
        self.place(&slots, 0, 0, None, &mut allowed, &mut used, &mut chosen)
    }

    #[allow(clippy::too_many_arguments)]
    fn place(
        &mut self,
        slots: &[(usize, usize, usize)],
        slot: usize,
        filled: usize,
        last: Option<usize>,
        allowed: &mut Vec<BitSet>,
        used: &mut BitSet,
        chosen: &mut Vec<Vec<usize>>,
    ) -> Step {
        if slot == slots.len() {
            let mut classes = chosen.clone();
            for c in classes.iter_mut() {
                c.sort_unstable();
            }
            classes.sort();
            return Step::Found(Witness { classes });
        }
        let (ci, b, cnt) = slots[slot];
        if filled == cnt {
            return self.place(slots, slot + 1, 0, None, allowed, used, chosen);
        }
        let mut cand = self.blocks[b].intersection(&allowed[ci]);
        cand.difference_with(used);
        for x in cand.iter_above(last) {
            if !self.counter.tick() {
                return Step::OutOfBudget;
            }
            let saved: Vec<Option<BitSet>> = (0..self.q)
                .map(|c| {
                    (c != ci).then(|| {
                        let old = allowed[c].clone();
                        allowed[c].intersect_with(self.g.neighbors(x));
                        old
                    })
                })
                .collect();
            used.insert(x);
            chosen[ci].push(x);
            let feasible = slots.iter().enumerate().skip(slot).all(|(si, &(c2, b2, n2))| {
                let need = if si == slot { cnt - filled - 1 } else { n2 };
                need == 0 || self.blocks[b2].intersection_count_minus(&allowed[c2], used) >= need
            });
            let r = if feasible {
                self.place(slots, slot, filled + 1, Some(x), allowed, used, chosen)
            } else {
                Step::Exhausted
            };
            chosen[ci].pop();
            used.remove(x);
            for (c, old) in saved.into_iter().enumerate() {
                if let Some(old) = old {
                    allowed[c] = old;
                }
            }
            if !matches!(r, Step::Exhausted) {
                return r;
            }
        }
        Step::Exhausted
    }
}

/// `K_q(t)` anywhere in `g`.
pub fn find_complete_multipartite(g: &PartitionedGraph, q: usize, t: usize, budget: Budget) -> Detection {
    find_complete_multipartite_within(g, &g.universe(), q, t, budget)
}

/// `K_q(t)` with every vertex inside `within`.
pub fn find_complete_multipartite_within(g: &PartitionedGraph, within: &VertexSet, q: usize, t: usize, budget: Budget) -> Detection {
    if q == 0 || t == 0 {
        return Detection {
            outcome: Outcome::Found(Witness {
                classes: vec![Vec::new(); q],
            }),
            nodes: 0,
        };
    }
    if within.count() < q * t {
        return Detection {
            outcome: Outcome::Free,
            nodes: 0,
        };
    }
    let blocks = refine_blocks(g, within);
    let lists: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().collect()).collect();
    let compat: Vec<Vec<Vec<usize>>> = (0..blocks.len())
        .map(|b| {
            (0..blocks.len())
                .map(|b2| {
                    (0..=t)
                        .map(|c| match c {
                            _ if b == b2 => 0,
                            0 => t,
                            _ => max_common(g, &lists[b], c, &blocks[b2], t),
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let caps = blocks.iter().map(|b| b.count().min(t)).collect();
    let mut search = Search {
        g,
        within,
        q,
        t,
        blocks,
        compat,
        caps,
        profile: Vec::new(),
        counter: NodeCounter::new(budget),
    };
    let outcome = match search.next_class(0) {
        Step::Found(w) => Outcome::Found(w),
        Step::Exhausted => Outcome::Free,
        Step::OutOfBudget => Outcome::BudgetExceeded,
    };
    Detection {
        outcome,
        nodes: search.counter.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{verify_witness, ForbiddenPattern};

    fn octahedron() -> PartitionedGraph {
        PartitionedGraph::complete(&[2, 2, 2]).unwrap()
    }

    #[test]
    fn octahedron_is_k3_2() {
        let g = octahedron();
        let d = find_complete_multipartite(&g, 3, 2, Budget::unlimited());
        let w = d.outcome.witness().expect("K_{2,2,2} contains itself");
        assert!(verify_witness(&g, &ForbiddenPattern::CompleteMultipartite { q: 3, t: 2 }, w));
    }

    #[test]
    fn complete_graph_contains_pattern() {
        let g = PartitionedGraph::complete(&[1; 6]).unwrap();
        let d = find_complete_multipartite(&g, 3, 2, Budget::unlimited());
        assert!(d.outcome.witness().is_some());
        assert!(find_complete_multipartite(&g, 4, 2, Budget::unlimited()).outcome.is_free());
    }

    #[test]
    fn octahedron_minus_edge_is_free() {
        let mut g = octahedron();
        g.remove_edge(0, 2);
        assert!(find_complete_multipartite(&g, 3, 2, Budget::unlimited()).outcome.is_free());
        assert!(find_complete_multipartite(&g, 3, 1, Budget::unlimited())
            .outcome
            .witness()
            .is_some());
    }

    #[test]
    fn refinement_splits_by_degree() {
        // Part 0 = {0, 1}, part 1 = {2, 3}; only vertex 0 has an edge.
        let g = PartitionedGraph::from_edges(&[2, 2], [(0, 2)]).unwrap();
        let blocks = refine_blocks(&g, &g.universe());
        assert_eq!(blocks.len(), 4);
        let k = PartitionedGraph::complete(&[3, 3]).unwrap();
        assert_eq!(refine_blocks(&k, &k.universe()).len(), 2);
    }

    #[test]
    fn deterministic_witness() {
        let g = PartitionedGraph::complete(&[2, 3, 2]).unwrap();
        let a = find_complete_multipartite(&g, 3, 2, Budget::unlimited());
        let b = find_complete_multipartite(&g, 3, 2, Budget::unlimited());
        assert_eq!(a, b);
    }

    #[test]
    fn budget_exhaustion_is_not_freeness() {
        let mut g = PartitionedGraph::complete(&[2, 2, 2, 2]).unwrap();
        g.remove_edge(0, 2);
        let d = find_complete_multipartite(&g, 4, 2, Budget::nodes(1));
        assert_eq!(d.outcome, Outcome::BudgetExceeded);
    }
}
