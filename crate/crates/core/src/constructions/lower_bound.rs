//! The two lower-bound constructions for `K_{r+1}(t)`-free `k`-partite
//! graphs with `r < k ≤ 2r`.
//!
//! Host part `i < r` is the first cluster of row `i`; host part `r + i`
//! (`i < b = k − r`) is its second cluster. Rows are the classes of the
//! underlying complete `r`-partite blow-up.

use crate::constructions::{regular_c4free_bipartite, template_graph, turan_count, ConstructionParams};
use crate::detect::{find_biclique, Budget};
use crate::error::{Error, Result};
use crate::graph::{ClassPartition, PartitionedGraph};

/// A built graph together with its row partition and the closed-form edge
/// count it must meet.
#[derive(Clone, Debug)]
pub struct Construction {
    pub graph: PartitionedGraph,
    pub rows: ClassPartition,
    pub expected_edges: u64,
}

/// Adds `h` (two parts) between the listed vertices of `g`.
fn overlay(g: &mut PartitionedGraph, left: &[usize], right: &[usize], h: &PartitionedGraph) -> Result<()> {
    if h.part_sizes() != [left.len(), right.len()] {
        return Err(Error::InvalidParams(format!(
            "overlay expects parts [{}, {}], got {:?}",
            left.len(),
            right.len(),
            h.part_sizes()
        )));
    }
    for (x, y) in h.edges() {
        g.add_edge(left[x], right[y - left.len()])?;
    }
    Ok(())
}

fn check_class1(p: &ConstructionParams, class1: &PartitionedGraph) -> Result<()> {
    if class1.part_sizes() != [p.n, p.n] {
        return Err(Error::InvalidParams(format!(
            "class-1 graph must have parts [{0}, {0}], got {1:?}",
            p.n,
            class1.part_sizes()
        )));
    }
    let d = find_biclique(class1, &class1.universe(), p.t, Budget::default());
    if !d.outcome.is_free() {
        return Err(Error::NotFree("class-1 graph", format!("K_{{{0},{0}}}", p.t)));
    }
    Ok(())
}

fn check_overlay_size(size: usize, degree: usize) -> Result<()> {
    if degree >= 2 && size < 8 * degree * degree {
        return Err(Error::InvalidParams(format!(
            "a {degree}-regular C4-free overlay needs {} vertices per side, rows have {size}",
            8 * degree * degree
        )));
    }
    Ok(())
}

fn host_edges(p: &ConstructionParams, rows: &ClassPartition, class1: &PartitionedGraph) -> Result<PartitionedGraph> {
    let mut g = template_graph(&vec![p.n; p.k], rows)?;
    let part = |i: usize| -> Vec<usize> { (i * p.n..(i + 1) * p.n).collect() };
    overlay(&mut g, &part(0), &part(p.r), class1)?;
    Ok(g)
}

fn row_labels(p: &ConstructionParams) -> Vec<usize> {
    (0..p.k * p.n).map(|v| (v / p.n) % p.r).collect()
}

/// Complete `r`-partite blow-up with rows `V_i ∪ V_{i+r}`, the class-1 graph
/// on row 1 and `(t−1)`-regular `C_4`-free graphs on rows `2..b`.
///
/// Edge count `t_r(k)n² + e(B) + (t−1)(k−r−1)n`.
pub fn basic_construction(p: &ConstructionParams, class1: &PartitionedGraph) -> Result<Construction> {
    check_class1(p, class1)?;
    let b = p.b();
    if b >= 2 {
        check_overlay_size(p.n, p.t - 1)?;
    }
    let rows = ClassPartition::from_labels(&row_labels(p), p.r)?;
    let mut g = host_edges(p, &rows, class1)?;
    let part = |i: usize| -> Vec<usize> { (i * p.n..(i + 1) * p.n).collect() };
    for i in 1..b {
        let h = regular_c4free_bipartite(p.n, p.t - 1)?;
        overlay(&mut g, &part(i), &part(p.r + i), &h)?;
    }
    let n = p.n as u64;
    let expected = turan_count(p.r, p.k)? * n * n + class1.edge_count() as u64 + (p.t as u64 - 1) * (b as u64 - 1) * n;
    Ok(Construction {
        graph: g,
        rows,
        expected_edges: expected,
    })
}

/// The improved construction: for each of the `b′` donor rows `i ∈ [2, b′+1]`
/// the first `t′` vertices of both clusters move to row `i+b−1`, where they
/// become centres of disjoint `K_{1,t−1}` stars and are joined by a
/// `K_{t′,t′}`.
///
/// Edge count `t_r(k)n² + e(B) + (t−1)(b−1)n + b′⌊(t−1)²/4⌋`. When `b′ = 0`
/// nothing moves and the result equals [`basic_construction`].
pub fn improved_construction(p: &ConstructionParams, class1: &PartitionedGraph) -> Result<Construction> {
    let bp = p.b_prime();
    if bp == 0 {
        return basic_construction(p, class1);
    }
    check_class1(p, class1)?;
    if p.n < 8 * p.t * p.t {
        return Err(Error::InvalidParams(format!(
            "improved construction needs n >= 8t^2 = {}, got {}",
            8 * p.t * p.t,
            p.n
        )));
    }
    let (b, tp, n, r) = (p.b(), p.t_prime(), p.n, p.r);
    let moved = |part: usize| -> Vec<usize> { (part * n..part * n + tp).collect() };
    let kept = |part: usize, donor: bool| -> Vec<usize> { (part * n + if donor { tp } else { 0 }..(part + 1) * n).collect() };

    let mut labels = row_labels(p);
    for j in 1..=bp {
        for v in moved(j).into_iter().chain(moved(r + j)) {
            labels[v] = j + b - 1;
        }
    }
    let rows = ClassPartition::from_labels(&labels, r)?;
    let mut g = host_edges(p, &rows, class1)?;

    for i in 1..b {
        let donor = i <= bp;
        let size = if donor { n - tp } else { n };
        check_overlay_size(size, p.t - 1)?;
        let h = regular_c4free_bipartite(size, p.t - 1)?;
        overlay(&mut g, &kept(i, donor), &kept(r + i, donor), &h)?;
    }
    for j in 1..=bp {
        let dest = j + b - 1;
        let (s1, s2) = (moved(j), moved(r + j));
        let leaves = dest * n;
        for (c, &centre) in s1.iter().chain(&s2).enumerate() {
            for l in 0..p.t - 1 {
                g.add_edge(centre, leaves + c * (p.t - 1) + l)?;
            }
        }
        for &x in &s1 {
            for &y in &s2 {
                g.add_edge(x, y)?;
            }
        }
    }
    let n64 = n as u64;
    let expected = turan_count(r, p.k)? * n64 * n64
        + class1.edge_count() as u64
        + (p.t as u64 - 1) * (b as u64 - 1) * n64
        + bp as u64 * p.gain_per_row();
    Ok(Construction {
        graph: g,
        rows,
        expected_edges: expected,
    })
}
