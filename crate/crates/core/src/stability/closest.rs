use serde::{Deserialize, Serialize};

use super::{cluster_assignments, AnalysisParams};
use crate::constructions::{Piece, TemplateSpec};
use crate::error::{Error, Result};
use crate::graph::{ClassPartition, PartitionedGraph};

/// Above this many (assignment, piece map) pairs the search switches to
/// local moves.
pub const MAX_EXHAUSTIVE_SHAPES: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosestTemplate {
    /// Shape and piece sizes; pieces of a cluster are not necessarily
    /// consecutive, `partition` holds the actual classes.
    pub spec: TemplateSpec,
    pub partition: ClassPartition,
    pub distance: u64,
    /// `distance ≤ γn²`.
    pub gamma_close: bool,
    pub exhaustive: bool,
}

/// Number of ways to split `a·r` labelled clusters into `r` unlabelled
/// classes of `a`, saturating.
fn assignment_count(r: usize, a: usize) -> u64 {
    let mut count: u128 = 1;
    let mut left = (a * r) as u128;
    for _ in 0..r {
        // C(left, a), then divide by r! at the end.
        let mut c: u128 = 1;
        for i in 0..a as u128 {
            c = c * (left - i) / (i + 1);
        }
        count = count.saturating_mul(c);
        left -= a as u128;
    }
    for i in 2..=r as u128 {
        count /= i;
    }
    count.min(u64::MAX as u128) as u64
}

struct Costs {
    r: usize,
    k: usize,
    n: usize,
    zc: usize,
    /// `e[p][q]` between clusters.
    e: Vec<Vec<u64>>,
    /// Leftover vertex degrees into each assigned cluster.
    deg: Vec<Vec<u64>>,
    /// Cluster of each leftover vertex, relative to `zc`.
    home: Vec<usize>,
    leftover: Vec<usize>,
    fixed: u64,
}

impl Costs {
    fn new(g: &PartitionedGraph, r: usize) -> Self {
        let (k, n) = (g.n_parts(), g.part_sizes()[0]);
        let zc = k / r * r;
        let sets: Vec<_> = (0..k).map(|p| g.part_set(p)).collect();
        let mut e = vec![vec![0u64; k]; k];
        for p in 0..k {
            for q in p + 1..k {
                e[p][q] = g.pair_count(&sets[p], &sets[q]) as u64;
                e[q][p] = e[p][q];
            }
        }
        let leftover: Vec<usize> = (zc * n..k * n).collect();
        let deg = leftover
            .iter()
            .map(|&v| (0..zc).map(|p| g.degree_into(v, &sets[p]) as u64).collect())
            .collect();
        let home = leftover.iter().map(|&v| g.part_of(v) - zc).collect();
        // Pairs of distinct leftover clusters are template edges in every shape.
        let nn = (n * n) as u64;
        let mut fixed = 0;
        for (p, row) in e.iter().enumerate().skip(zc) {
            fixed += row[p + 1..].iter().map(|&x| nn - x).sum::<u64>();
        }
        Costs {
            r,
            k,
            n,
            zc,
            e,
            deg,
            home,
            leftover,
            fixed,
        }
    }

    fn zz(&self, assign: &[usize]) -> u64 {
        let nn = (self.n * self.n) as u64;
        let mut s = 0;
        for p in 0..self.zc {
            for q in p + 1..self.zc {
                s += if assign[p] == assign[q] { self.e[p][q] } else { nn - self.e[p][q] };
            }
        }
        s
    }

    /// `vc[x][i]`: cost of leftover vertex `x` joining class `i`.
    fn vertex_costs(&self, assign: &[usize]) -> Vec<Vec<u64>> {
        let n = self.n as u64;
        self.deg
            .iter()
            .map(|d| {
                let total_missing: u64 = d.iter().map(|&x| n - x).sum();
                let mut c = vec![total_missing; self.r];
                for (p, &class) in assign.iter().enumerate() {
                    // Moving cluster p into the same class flips its term.
                    c[class] = c[class] + d[p] - (n - d[p]);
                }
                c
            })
            .collect()
    }

    /// Best vertex placement for a piece map; `None` if some leftover
    /// cluster has no class.
    fn place(&self, vc: &[Vec<u64>], f: &[Option<usize>]) -> Option<(u64, Vec<usize>)> {
        let b = self.k - self.zc;
        let mut by_cluster = vec![Vec::new(); b];
        for (i, c) in f.iter().enumerate() {
            if let Some(c) = c {
                by_cluster[*c].push(i);
            }
        }
        if by_cluster.iter().any(Vec::is_empty) {
            return None;
        }
        let mut cost = 0;
        let mut choice = Vec::with_capacity(vc.len());
        for (x, costs) in vc.iter().enumerate() {
            let opts = &by_cluster[self.home[x]];
            let best = *opts.iter().min_by_key(|&&i| (costs[i], i)).unwrap();
            cost += costs[best];
            choice.push(best);
        }
        Some((cost, choice))
    }
}

/// Maps `[r] → {none} ∪ leftover clusters` in lexicographic order.
fn next_map(f: &mut [Option<usize>], b: usize) -> bool {
    for slot in f.iter_mut() {
        match *slot {
            None => {
                *slot = Some(0);
                return true;
            }
            Some(c) if c + 1 < b => {
                *slot = Some(c + 1);
                return true;
            }
            Some(_) => *slot = None,
        }
    }
    false
}

struct Best {
    cost: u64,
    assign: Vec<usize>,
    choice: Vec<usize>,
}

fn best_map(costs: &Costs, assign: &[usize], exhaustive: bool) -> Option<Best> {
    let zz = costs.zz(assign) + costs.fixed;
    let vc = costs.vertex_costs(assign);
    let b = costs.k - costs.zc;
    let eval = |f: &[Option<usize>]| costs.place(&vc, f).map(|(c, choice)| (zz + c, choice));
    let mut best: Option<Best> = None;
    let consider = |f: &[Option<usize>], best: &mut Option<Best>| -> bool {
        match eval(f) {
            Some((cost, choice)) if best.as_ref().is_none_or(|x| cost < x.cost) => {
                *best = Some(Best {
                    cost,
                    assign: assign.to_vec(),
                    choice,
                });
                true
            }
            _ => false,
        }
    };
    let mut f = vec![None; costs.r];
    if b == 0 {
        consider(&f, &mut best);
        return best;
    }
    if exhaustive {
        while next_map(&mut f, b) {
            consider(&f, &mut best);
        }
        return best;
    }
    // Standard map, then single-slot changes until nothing improves.
    for (i, slot) in f.iter_mut().enumerate().take(b) {
        *slot = Some(i);
    }
    consider(&f, &mut best);
    loop {
        let mut improved = false;
        for i in 0..costs.r {
            let keep = f[i];
            for c in std::iter::once(None).chain((0..b).map(Some)) {
                if c == keep {
                    continue;
                }
                f[i] = c;
                if consider(&f, &mut best) {
                    improved = true;
                    break;
                }
                f[i] = keep;
            }
        }
        if !improved {
            return best;
        }
    }
}

/// The template closest to `g` in edit distance.
///
/// Whole clusters are the first `a·r` parts. For a fixed shape the cost
/// splits into a constant plus one independent term per leftover vertex, so
/// each vertex takes its cheapest admissible class and the optimum over
/// piece sizes is exact. When the shapes are too many to list, cluster
/// swaps and single piece-map changes are applied until a fixpoint and
/// `exhaustive` is false.
pub fn closest_template(g: &PartitionedGraph, params: &AnalysisParams) -> Result<ClosestTemplate> {
    let (r, k, n) = (params.r, params.k, params.n);
    if g.part_sizes() != vec![n; k].as_slice() {
        return Err(Error::PartMismatch);
    }
    TemplateSpec::standard(r, k, n)?;
    let costs = Costs::new(g, r);
    let a = k / r;
    let b = k - costs.zc;
    let maps = ((b + 1) as u64).saturating_pow(r as u32);
    let exhaustive = assignment_count(r, a).saturating_mul(maps) <= MAX_EXHAUSTIVE_SHAPES;

    let best = if exhaustive {
        cluster_assignments(r, a)
            .into_iter()
            .filter_map(|assign| best_map(&costs, &assign, true))
            .min_by_key(|b| b.cost)
    } else {
        let mut assign: Vec<usize> = (0..costs.zc).map(|c| c / a).collect();
        let mut best = best_map(&costs, &assign, false);
        loop {
            let mut improved = false;
            'swap: for p in 0..costs.zc {
                for q in p + 1..costs.zc {
                    if assign[p] == assign[q] {
                        continue;
                    }
                    assign.swap(p, q);
                    if let Some(cand) = best_map(&costs, &assign, false) {
                        if best.as_ref().is_none_or(|b| cand.cost < b.cost) {
                            best = Some(cand);
                            improved = true;
                            break 'swap;
                        }
                    }
                    assign.swap(p, q);
                }
            }
            if !improved {
                break best;
            }
        }
    };
    let best = best.ok_or_else(|| Error::InvalidParams("no admissible template shape".into()))?;

    let mut labels = vec![0; n * k];
    for (p, &class) in best.assign.iter().enumerate() {
        labels[p * n..(p + 1) * n].fill(class);
    }
    let mut sizes = vec![vec![0usize; r]; b];
    for (x, &class) in best.choice.iter().enumerate() {
        labels[costs.leftover[x]] = class;
        sizes[costs.home[x]][class] += 1;
    }
    let mut pieces = Vec::new();
    for (c, row) in sizes.iter().enumerate() {
        for (class, &size) in row.iter().enumerate() {
            if size > 0 {
                pieces.push(Piece {
                    class,
                    cluster: costs.zc + c,
                    size,
                });
            }
        }
    }
    let spec = TemplateSpec {
        r,
        k,
        n,
        cluster_assignment: best.assign,
        pieces,
    };
    spec.validate()?;
    let gamma = params.gamma;
    let limit = (*gamma.numer() as u128) * (n * n) as u128;
    Ok(ClosestTemplate {
        spec,
        partition: ClassPartition::from_labels(&labels, r)?,
        distance: best.cost,
        gamma_close: (best.cost as u128) * (*gamma.denom() as u128) <= limit,
        exhaustive,
    })
}
