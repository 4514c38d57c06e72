use crate::bitset::BitSet;
use crate::detect::Witness;
use crate::graph::PartitionedGraph;

struct Through<'a> {
    g: &'a PartitionedGraph,
    t: usize,
    classes: Vec<Vec<usize>>,
}

impl Through<'_> {
    /// `allowed[c]`: vertices adjacent to everything placed outside class `c`.
    fn fill(&mut self, c: usize, allowed: &mut Vec<BitSet>) -> bool {
        let q = self.classes.len();
        if c == q {
            return true;
        }
        if self.classes[c].len() == self.t {
            return self.fill(c + 1, allowed);
        }
        for (d, a) in allowed.iter().enumerate().skip(c) {
            if a.count() + self.classes[d].len() < self.t {
                return false;
            }
        }
        let last = match self.classes[c].as_slice() {
            // Classes beyond the two seeded ones are interchangeable.
            [] if c >= 3 => self.classes[c - 1].first().copied(),
            [] => None,
            // The seed of class 0 or 1 does not take part in the ordering.
            [_] if c < 2 => None,
            m => m.last().copied(),
        };
        let candidates: Vec<usize> = allowed[c].iter_above(last).collect();
        for w in candidates {
            let saved: Vec<BitSet> = allowed.clone();
            for (d, a) in allowed.iter_mut().enumerate() {
                if d == c {
                    a.remove(w);
                } else {
                    a.intersect_with(self.g.neighbors(w));
                }
            }
            // Keep later members of this class above `w`.
            self.classes[c].push(w);
            if self.fill(c, allowed) {
                return true;
            }
            self.classes[c].pop();
            *allowed = saved;
            allowed[c].remove(w);
            if allowed[c].count() + self.classes[c].len() < self.t {
                break;
            }
        }
        false
    }
}

/// A copy of `K_q(t)` using the edge `uv`, with `u` in the first class and
/// `v` in the second.
pub fn find_pattern_through_edge(g: &PartitionedGraph, u: usize, v: usize, q: usize, t: usize) -> Option<Witness> {
    if q < 2 || t == 0 || !g.has_edge(u, v) {
        return None;
    }
    let common = g.neighbors(u).intersection(g.neighbors(v));
    let mut allowed = vec![common; q];
    allowed[0] = g.neighbors(v).clone();
    allowed[0].remove(u);
    allowed[1] = g.neighbors(u).clone();
    allowed[1].remove(v);
    let mut classes = vec![Vec::new(); q];
    classes[0].push(u);
    classes[1].push(v);
    let mut s = Through { g, t, classes };
    s.fill(0, &mut allowed).then(|| {
        let mut classes = s.classes;
        for c in &mut classes {
            c.sort_unstable();
        }
        Witness { classes }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{verify_witness, ForbiddenPattern};

    #[test]
    fn octahedron_through_every_edge() {
        let g = PartitionedGraph::complete(&[2, 2, 2]).unwrap();
        let p = ForbiddenPattern::CompleteMultipartite { q: 3, t: 2 };
        for (u, v) in g.edges() {
            let w = find_pattern_through_edge(&g, u, v, 3, 2).unwrap();
            assert!(verify_witness(&g, &p, &w));
            assert!(w.classes[0].contains(&u) && w.classes[1].contains(&v));
        }
    }

    #[test]
    fn c4_only_through_its_edges() {
        let mut g = PartitionedGraph::from_edges(&[3, 3], [(0, 3), (0, 4), (1, 3), (1, 4), (2, 5)]).unwrap();
        assert!(find_pattern_through_edge(&g, 0, 3, 2, 2).is_some());
        assert!(find_pattern_through_edge(&g, 2, 5, 2, 2).is_none());
        assert!(find_pattern_through_edge(&g, 2, 4, 2, 2).is_none());
        g.remove_edge(1, 4);
        assert!(find_pattern_through_edge(&g, 0, 3, 2, 2).is_none());
    }

    #[test]
    fn triangles() {
        let g = PartitionedGraph::from_edges(&[1, 1, 1, 1], [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(find_pattern_through_edge(&g, 0, 1, 3, 1).is_some());
        assert!(find_pattern_through_edge(&g, 2, 3, 3, 1).is_none());
    }
}
