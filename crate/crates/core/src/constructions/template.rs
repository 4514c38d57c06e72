use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{ClassPartition, PartitionedGraph, VertexSet};

/// A piece `W_i` of a leftover cluster handed to one class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Piece {
    pub class: usize,
    /// Index of the source cluster, in `a·r..k`.
    pub cluster: usize,
    pub size: usize,
}

/// A member of the template family on `k` clusters of size `n` with `r`
/// classes: the first `a·r` clusters are grouped `a` per class, the last `b`
/// clusters are split into pieces, at most one piece per class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TemplateSpec {
    pub r: usize,
    pub k: usize,
    pub n: usize,
    /// Class of each of the first `a·r` clusters.
    pub cluster_assignment: Vec<usize>,
    pub pieces: Vec<Piece>,
}

/// Vertex-level view of a template: `Z_i`, `W_i` and `U_i = Z_i ∪ W_i`.
#[derive(Clone, Debug)]
pub struct TemplateLayout {
    pub z: Vec<VertexSet>,
    pub w: Vec<VertexSet>,
    pub partition: ClassPartition,
}

impl TemplateSpec {
    pub fn a(&self) -> usize {
        self.k / self.r
    }

    pub fn b(&self) -> usize {
        self.k % self.r
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        vec![self.n; self.k]
    }

    /// The template with `Z_i = V_{(i−1)a+1} ∪ … ∪ V_{ia}` and every leftover
    /// cluster given whole to its own class, `W_i = V_{ar+i}`.
    pub fn standard(r: usize, k: usize, n: usize) -> Result<Self> {
        if r == 0 || k < r {
            return Err(Error::InvalidParams(format!("template needs 1 <= r <= k, got r={r}, k={k}")));
        }
        let a = k / r;
        let spec = TemplateSpec {
            r,
            k,
            n,
            cluster_assignment: (0..a * r).map(|c| c / a).collect(),
            pieces: (0..k % r)
                .map(|i| Piece {
                    class: i,
                    cluster: a * r + i,
                    size: n,
                })
                .collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if self.r == 0 || self.k < self.r || self.n == 0 {
            return bad(format!("need 1 <= r <= k and n >= 1, got r={}, k={}, n={}", self.r, self.k, self.n));
        }
        let (a, b) = (self.a(), self.b());
        if self.cluster_assignment.len() != a * self.r {
            return bad(format!(
                "expected {} assigned clusters, got {}",
                a * self.r,
                self.cluster_assignment.len()
            ));
        }
        let mut per_class = vec![0; self.r];
        for &c in &self.cluster_assignment {
            if c >= self.r {
                return bad(format!("cluster assigned to class {c} >= r"));
            }
            per_class[c] += 1;
        }
        if per_class.iter().any(|&c| c != a) {
            return bad(format!("every class needs exactly {a} clusters, got {per_class:?}"));
        }
        let mut has_piece = vec![false; self.r];
        let mut filled = vec![0; b];
        for p in self.pieces.iter().filter(|p| p.size > 0) {
            if p.class >= self.r || p.cluster < a * self.r || p.cluster >= self.k {
                return bad(format!("piece {p:?} out of range"));
            }
            if std::mem::replace(&mut has_piece[p.class], true) {
                return bad(format!("class {} receives two pieces", p.class));
            }
            filled[p.cluster - a * self.r] += p.size;
        }
        if let Some((j, &s)) = filled.iter().enumerate().find(|(_, &s)| s != self.n) {
            return bad(format!(
                "leftover cluster {} is covered by pieces of total size {s}, not {}",
                a * self.r + j,
                self.n
            ));
        }
        Ok(())
    }

    /// Pieces of one leftover cluster occupy consecutive vertices in the
    /// order they are listed.
    pub fn layout(&self) -> Result<TemplateLayout> {
        self.validate()?;
        let nv = self.n * self.k;
        let mut z = vec![BitSet::new(nv); self.r];
        let mut w = vec![BitSet::new(nv); self.r];
        for (cluster, &class) in self.cluster_assignment.iter().enumerate() {
            for v in cluster * self.n..(cluster + 1) * self.n {
                z[class].insert(v);
            }
        }
        let mut offset = vec![0; self.k];
        for p in self.pieces.iter().filter(|p| p.size > 0) {
            let start = p.cluster * self.n + offset[p.cluster];
            for v in start..start + p.size {
                w[p.class].insert(v);
            }
            offset[p.cluster] += p.size;
        }
        let classes = z.iter().zip(&w).map(|(a, b)| a.union(b)).collect();
        Ok(TemplateLayout {
            z,
            w,
            partition: ClassPartition::new(classes)?,
        })
    }
}

/// `K(U_1,…,U_r) ∩ K(V_1,…,V_k)`: all pairs in different classes and
/// different parts.
pub fn template_graph(part_sizes: &[usize], classes: &ClassPartition) -> Result<PartitionedGraph> {
    let mut g = PartitionedGraph::empty(part_sizes)?;
    let labels = classes.labels();
    if labels.len() != g.n_vertices() {
        return Err(Error::PartMismatch);
    }
    let n = g.n_vertices();
    for u in 0..n {
        for v in u + 1..n {
            if labels[u] != labels[v] && g.part_of(u) != g.part_of(v) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

pub fn build_template(spec: &TemplateSpec) -> Result<PartitionedGraph> {
    let layout = spec.layout()?;
    template_graph(&spec.part_sizes(), &layout.partition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::turan_count;

    fn spec(r: usize, k: usize, n: usize, assign: Vec<usize>, pieces: Vec<(usize, usize, usize)>) -> TemplateSpec {
        TemplateSpec {
            r,
            k,
            n,
            cluster_assignment: assign,
            pieces: pieces
                .into_iter()
                .map(|(class, cluster, size)| Piece { class, cluster, size })
                .collect(),
        }
    }

    #[test]
    fn whole_leftover_cluster() {
        let s = spec(2, 3, 2, vec![0, 1], vec![(0, 2, 2)]);
        let g = build_template(&s).unwrap();
        assert_eq!(g.edge_count(), 8);
        let l = s.layout().unwrap();
        assert_eq!(l.partition.class(0).iter().collect::<Vec<_>>(), vec![0, 1, 4, 5]);
        assert_eq!(l.partition.class(1).iter().collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn split_leftover_cluster() {
        let s = spec(2, 3, 2, vec![0, 1], vec![(0, 2, 1), (1, 2, 1)]);
        let g = build_template(&s).unwrap();
        assert_eq!(g.edge_count(), 8);
        assert!(!g.has_edge(4, 5));
    }

    #[test]
    fn no_leftover() {
        let s = spec(2, 4, 1, vec![0, 0, 1, 1], vec![]);
        let g = build_template(&s).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.to_json(), r#"{"parts":[1,1,1,1],"edges":[[0,2],[0,3],[1,2],[1,3]]}"#);
    }

    #[test]
    fn standard_templates_have_turan_count() {
        for k in 2..=7 {
            for r in 1..=k {
                for n in 1..=3 {
                    let s = TemplateSpec::standard(r, k, n).unwrap();
                    let e = build_template(&s).unwrap().edge_count() as u64;
                    assert_eq!(e, turan_count(r, k).unwrap() * (n * n) as u64);
                }
            }
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(spec(2, 3, 2, vec![0, 0], vec![(0, 2, 2)]).validate().is_err());
        assert!(spec(2, 3, 2, vec![0, 1], vec![(0, 2, 1)]).validate().is_err());
        assert!(spec(2, 3, 2, vec![0, 1], vec![(0, 2, 1), (0, 2, 1)]).validate().is_err());
        assert!(spec(2, 3, 2, vec![0, 1], vec![(0, 1, 2)]).validate().is_err());
        assert!(spec(2, 3, 2, vec![0, 1], vec![(0, 2, 2), (1, 2, 0)]).validate().is_ok());
    }
}
