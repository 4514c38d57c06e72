//! k-partite host graphs with bit-row adjacency.
//!
//! Vertices are numbered `0..N` in part order, so part `p` occupies the
//! contiguous range `part_range(p)`. No edge may join two vertices of the
//! same part.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub type VertexSet = BitSet;

#[derive(Clone, PartialEq, Eq)]
pub struct PartitionedGraph {
    part_sizes: Vec<usize>,
    part_start: Vec<usize>,
    part_of: Vec<usize>,
    rows: Vec<BitSet>,
    edges: usize,
}

impl PartitionedGraph {
    /// Edgeless graph on the given parts. Every part must be non-empty.
    pub fn empty(part_sizes: &[usize]) -> Result<Self> {
        if part_sizes.is_empty() {
            return Err(Error::InvalidParams("a graph needs at least one part".into()));
        }
        if let Some(p) = part_sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidParams(format!("part {p} is empty")));
        }
        let n: usize = part_sizes.iter().sum();
        let mut part_start = Vec::with_capacity(part_sizes.len());
        let mut part_of = Vec::with_capacity(n);
        let mut acc = 0;
        for (p, &s) in part_sizes.iter().enumerate() {
            part_start.push(acc);
            part_of.extend(std::iter::repeat_n(p, s));
            acc += s;
        }
        Ok(PartitionedGraph {
            part_sizes: part_sizes.to_vec(),
            part_start,
            part_of,
            rows: vec![BitSet::new(n); n],
            edges: 0,
        })
    }

    /// The complete k-partite graph on the given parts.
    pub fn complete(part_sizes: &[usize]) -> Result<Self> {
        let mut g = Self::empty(part_sizes)?;
        let n = g.n_vertices();
        for u in 0..n {
            for v in u + 1..n {
                if g.part_of[u] != g.part_of[v] {
                    g.insert_unchecked(u, v);
                }
            }
        }
        Ok(g)
    }

    pub fn from_edges(part_sizes: &[usize], edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(part_sizes)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n_vertices(&self) -> usize {
        self.part_of.len()
    }

    #[inline]
    pub fn n_parts(&self) -> usize {
        self.part_sizes.len()
    }

    #[inline]
    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    #[inline]
    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn part_range(&self, p: usize) -> std::ops::Range<usize> {
        self.part_start[p]..self.part_start[p] + self.part_sizes[p]
    }

    pub fn part_set(&self, p: usize) -> VertexSet {
        let r = self.part_range(p);
        BitSet::range(self.n_vertices(), r.start, r.end)
    }

    pub fn universe(&self) -> VertexSet {
        BitSet::full(self.n_vertices())
    }

    pub fn empty_set(&self) -> VertexSet {
        BitSet::new(self.n_vertices())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    /// Number of unordered adjacent pairs.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        let n = self.n_vertices();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange(x, n));
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.part_of[u] == self.part_of[v] {
            return Err(Error::IntraPartEdge(u.min(v), u.max(v), self.part_of[u]));
        }
        Ok(())
    }

    #[inline]
    fn insert_unchecked(&mut self, u: usize, v: usize) {
        if !self.rows[u].contains(v) {
            self.rows[u].insert(v);
            self.rows[v].insert(u);
            self.edges += 1;
        }
    }

    /// Adds `{u, v}`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.insert_unchecked(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if self.rows[u].contains(v) {
            self.rows[u].remove(v);
            self.rows[v].remove(u);
            self.edges -= 1;
        }
    }

    /// Flips the pair `{u, v}`; returns whether it is now an edge.
    pub fn toggle_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            self.remove_edge(u, v);
            Ok(false)
        } else {
            self.insert_unchecked(u, v);
            Ok(true)
        }
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_vertices()).flat_map(move |u| self.rows[u].iter_above(Some(u)).map(move |v| (u, v)))
    }

    /// Number of ordered pairs `(x, y) ∈ X × Y` with `{x, y}` an edge.
    pub fn pair_count(&self, x: &VertexSet, y: &VertexSet) -> usize {
        x.iter().map(|v| self.rows[v].intersection_count(y)).sum()
    }

    /// `d(v, A) = |N(v) ∩ A|`.
    #[inline]
    pub fn degree_into(&self, v: usize, a: &VertexSet) -> usize {
        self.rows[v].intersection_count(a)
    }

    /// `|A| − d(v, A)`.
    #[inline]
    pub fn co_degree_into(&self, v: usize, a: &VertexSet) -> usize {
        a.count() - self.degree_into(v, a)
    }

    /// `pair_count(X, Y) / (|X||Y|)`.
    pub fn density(&self, x: &VertexSet, y: &VertexSet) -> Result<Ratio<u64>> {
        let denom = (x.count() * y.count()) as u64;
        if denom == 0 {
            return Err(Error::EmptyDensity);
        }
        Ok(Ratio::new(self.pair_count(x, y) as u64, denom))
    }

    /// `|E(G) △ E(H)|`.
    pub fn edit_distance(&self, other: &PartitionedGraph) -> Result<usize> {
        if self.part_sizes != other.part_sizes {
            return Err(Error::PartMismatch);
        }
        let twice: usize = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                a.words()
                    .iter()
                    .zip(b.words())
                    .map(|(x, y)| (x ^ y).count_ones() as usize)
                    .sum::<usize>()
            })
            .sum();
        Ok(twice / 2)
    }

    /// True iff `s` meets every part at most once.
    pub fn is_crossing(&self, s: &VertexSet) -> bool {
        (0..self.n_parts()).all(|p| s.intersection_count(&self.part_set(p)) <= 1)
    }

    /// Subgraph keeping only the edges with both ends in `keep`.
    pub fn restricted_to(&self, keep: &VertexSet) -> PartitionedGraph {
        let mut g = self.clone();
        for v in 0..g.n_vertices() {
            if keep.contains(v) {
                g.rows[v].intersect_with(keep);
            } else {
                g.rows[v] = BitSet::new(g.n_vertices());
            }
        }
        g.edges = g.rows.iter().map(|r| r.count()).sum::<usize>() / 2;
        g
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            parts: self.part_sizes.clone(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<Self> {
        let mut g = Self::empty(&doc.parts)?;
        for &[u, v] in &doc.edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Canonical JSON text (no trailing newline).
    pub fn to_json(&self) -> String {
        self.to_doc().to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_doc(&doc)
    }

    /// SHA-256 of the canonical JSON text, hex encoded.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}

impl std::fmt::Debug for PartitionedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PartitionedGraph")
            .field("parts", &self.part_sizes)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Interchange document `{"parts":[..], "edges":[[u,v],..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub parts: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
}

impl GraphDoc {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph documents always serialize")
    }
}

/// A partition of the universe into `r ≥ 1` disjoint classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexSet>", into = "Vec<VertexSet>")]
pub struct ClassPartition {
    classes: Vec<VertexSet>,
}

impl TryFrom<Vec<VertexSet>> for ClassPartition {
    type Error = Error;

    fn try_from(classes: Vec<VertexSet>) -> Result<Self> {
        Self::new(classes)
    }
}

impl From<ClassPartition> for Vec<VertexSet> {
    fn from(p: ClassPartition) -> Self {
        p.classes
    }
}

impl ClassPartition {
    pub fn new(classes: Vec<VertexSet>) -> Result<Self> {
        let Some(first) = classes.first() else {
            return Err(Error::InvalidParams("a class partition needs at least one class".into()));
        };
        let n = first.capacity();
        let mut seen = BitSet::new(n);
        for c in &classes {
            if c.capacity() != n || !seen.is_disjoint(c) {
                return Err(Error::InvalidParams("classes must be disjoint subsets of one universe".into()));
            }
            seen.union_with(c);
        }
        if seen.count() != n {
            return Err(Error::InvalidParams("classes do not cover the universe".into()));
        }
        Ok(ClassPartition { classes })
    }

    /// Builds the partition from a per-vertex class label in `0..r`.
    pub fn from_labels(labels: &[usize], r: usize) -> Result<Self> {
        let n = labels.len();
        let mut classes = vec![BitSet::new(n); r];
        for (v, &c) in labels.iter().enumerate() {
            if c >= r {
                return Err(Error::InvalidParams(format!("vertex {v} has class {c} >= {r}")));
            }
            classes[c].insert(v);
        }
        Self::new(classes)
    }

    pub fn r(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &VertexSet {
        &self.classes[i]
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(v))
            .expect("partition covers the universe")
    }

    pub fn labels(&self) -> Vec<usize> {
        let n = self.classes[0].capacity();
        let mut labels = vec![0; n];
        for (i, c) in self.classes.iter().enumerate() {
            for v in c.iter() {
                labels[v] = i;
            }
        }
        labels
    }
}
