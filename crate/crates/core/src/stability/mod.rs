//! Structure of near-extremal graphs: distance to templates, atypical
//! vertices, the high-degree core and class-wise freeness.

mod closest;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::constructions::{Piece, TemplateSpec};
use crate::detect::{find_biclique, find_star, Budget, Outcome};
use crate::error::{Error, Result};
use crate::graph::{ClassPartition, PartitionedGraph, VertexSet};

pub use closest::{closest_template, ClosestTemplate, MAX_EXHAUSTIVE_SHAPES};

pub type Rational = Ratio<u64>;

/// Largest `k` for exhaustive template enumeration.
pub const MAX_ENUMERATION_K: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisParams {
    pub gamma: Rational,
    pub epsilon: Rational,
    pub t: usize,
    pub r: usize,
    pub k: usize,
    pub n: usize,
}

/// `d < ε·n`, exactly.
fn below(d: usize, rate: Rational, n: usize) -> bool {
    (d as u128) * (*rate.denom() as u128) < (*rate.numer() as u128) * (n as u128)
}

impl AnalysisParams {
    /// Defaults `ε = 1/8`, `γ = 1/1024`.
    pub fn new(r: usize, k: usize, n: usize, t: usize) -> Result<Self> {
        Self::with_rates(r, k, n, t, Ratio::new(1, 1024), Ratio::new(1, 8))
    }

    pub fn with_rates(r: usize, k: usize, n: usize, t: usize, gamma: Rational, epsilon: Rational) -> Result<Self> {
        let zero = Ratio::from_integer(0);
        let one = Ratio::from_integer(1);
        if !(zero < gamma && gamma < epsilon && epsilon < one) {
            return Err(Error::InvalidParams(format!(
                "need 0 < gamma < epsilon < 1, got gamma={gamma}, epsilon={epsilon}"
            )));
        }
        if r == 0 || k < r || n == 0 || t == 0 {
            return Err(Error::InvalidParams(format!(
                "need 1 <= r <= k and n, t >= 1, got r={r}, k={k}, n={n}, t={t}"
            )));
        }
        Ok(AnalysisParams {
            gamma,
            epsilon,
            t,
            r,
            k,
            n,
        })
    }

    pub fn a(&self) -> usize {
        self.k / self.r
    }

    /// `C₀ = 2(t−1)·ε^{−rt}`, as a float for reports.
    pub fn c0(&self) -> f64 {
        let e = *self.epsilon.numer() as f64 / *self.epsilon.denom() as f64;
        2.0 * (self.t as f64 - 1.0) * e.powi(-((self.r * self.t) as i32))
    }

    /// `size ≤ C₀`, decided exactly.
    pub fn within_c0(&self, size: usize) -> bool {
        let p = (self.r * self.t) as u32;
        let num = (*self.epsilon.numer() as u128).checked_pow(p);
        let den = (*self.epsilon.denom() as u128).checked_pow(p);
        match (num, den) {
            (Some(num), Some(den)) => match (size as u128).checked_mul(num) {
                Some(lhs) => lhs <= 2 * (self.t as u128 - 1) * den,
                None => (size as f64) <= self.c0(),
            },
            _ => (size as f64) <= self.c0(),
        }
    }

    /// `2tγn`.
    pub fn degree_slack(&self) -> Rational {
        self.gamma * Ratio::from_integer((2 * self.t * self.n) as u64)
    }

    /// `ε² > 3r²t²γ`.
    pub fn core_hypothesis(&self) -> bool {
        let rt = (self.r * self.t) as u64;
        self.epsilon * self.epsilon > self.gamma * Ratio::from_integer(3 * rt * rt)
    }
}

fn check_aligned(g: &PartitionedGraph, spec: &TemplateSpec) -> Result<()> {
    if g.part_sizes() != spec.part_sizes().as_slice() {
        return Err(Error::PartMismatch);
    }
    Ok(())
}

/// Restricted-growth assignments of `clusters` to `r` classes of `a` each.
fn cluster_assignments(r: usize, a: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, r: usize, a: usize, cur: &mut Vec<usize>, counts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == r * a {
            out.push(cur.clone());
            return;
        }
        let used = counts.iter().filter(|&&c| c > 0).count();
        for c in 0..r.min(used + 1) {
            if counts[c] < a {
                counts[c] += 1;
                cur.push(c);
                go(i + 1, r, a, cur, counts, out);
                cur.pop();
                counts[c] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    go(0, r, a, &mut Vec::new(), &mut vec![0; r], &mut out);
    out
}

/// Piece layouts for leftover clusters `from..k`, each class used at most once.
fn piece_layouts(spec: &TemplateSpec, allowed: &dyn Fn(usize) -> bool) -> Vec<Vec<Piece>> {
    fn compositions(total: usize, parts: usize, allowed: &dyn Fn(usize) -> bool) -> Vec<Vec<usize>> {
        if parts == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for first in 1..=total {
            if !allowed(first) {
                continue;
            }
            for mut rest in compositions(total - first, parts - 1, allowed) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    fn go(
        spec: &TemplateSpec,
        cluster: usize,
        used: u64,
        cur: &mut Vec<Piece>,
        allowed: &dyn Fn(usize) -> bool,
        out: &mut Vec<Vec<Piece>>,
    ) {
        if cluster == spec.k {
            out.push(cur.clone());
            return;
        }
        let free: Vec<usize> = (0..spec.r).filter(|&c| used >> c & 1 == 0).collect();
        for subset in 1u64..(1 << free.len()) {
            let classes: Vec<usize> = free
                .iter()
                .enumerate()
                .filter(|(i, _)| subset >> i & 1 == 1)
                .map(|(_, &c)| c)
                .collect();
            let mask = classes.iter().fold(used, |m, &c| m | 1 << c);
            for sizes in compositions(spec.n, classes.len(), allowed) {
                let len = cur.len();
                cur.extend(classes.iter().zip(&sizes).map(|(&class, &size)| Piece { class, cluster, size }));
                go(spec, cluster + 1, mask, cur, allowed, out);
                cur.truncate(len);
            }
        }
    }
    let mut out = Vec::new();
    go(spec, spec.a() * spec.r, 0, &mut Vec::new(), allowed, &mut out);
    out
}

/// Every template shape on `k` clusters of size `n` with `r` classes.
///
/// Classes are labelled by their first cluster, so assignments are counted
/// up to relabelling. Pieces of one cluster are listed in class order. With
/// `size_grid`, piece sizes other than `n` must come from the grid.
pub fn enumerate_templates(r: usize, k: usize, n: usize, size_grid: Option<&[usize]>) -> Result<Vec<TemplateSpec>> {
    if k > MAX_ENUMERATION_K {
        return Err(Error::InvalidParams(format!(
            "exhaustive enumeration is limited to k <= {MAX_ENUMERATION_K}, got {k}"
        )));
    }
    TemplateSpec::standard(r, k, n)?;
    let allowed = |s: usize| s == n || size_grid.is_none_or(|g| g.contains(&s));
    let mut out = Vec::new();
    for assignment in cluster_assignments(r, k / r) {
        let base = TemplateSpec {
            r,
            k,
            n,
            cluster_assignment: assignment,
            pieces: Vec::new(),
        };
        for pieces in piece_layouts(&base, &allowed) {
            let spec = TemplateSpec { pieces, ..base.clone() };
            spec.validate()?;
            out.push(spec);
        }
    }
    Ok(out)
}

/// Every class holds the same number of whole clusters and meets at most
/// one further cluster partially.
pub fn stable_partition_check(p: &ClassPartition, g: &PartitionedGraph) -> bool {
    if p.classes()[0].capacity() != g.n_vertices() {
        return false;
    }
    let mut whole_counts = Vec::with_capacity(p.r());
    for class in p.classes() {
        let (mut whole, mut partial) = (0, 0);
        for part in 0..g.n_parts() {
            let inside = class.intersection_count(&g.part_set(part));
            if inside == g.part_sizes()[part] {
                whole += 1;
            } else if inside > 0 {
                partial += 1;
            }
        }
        if partial > 1 {
            return false;
        }
        whole_counts.push(whole);
    }
    whole_counts.windows(2).all(|w| w[0] == w[1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexRole {
    Z,
    W,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeViolation {
    pub vertex: usize,
    pub class: usize,
    pub role: VertexRole,
    pub degree: usize,
    pub threshold: f64,
}

/// Vertices below `(k−a)n − |W_i| − 2tγn` (in `Z_i`) or
/// `(k−1−a)n − 2tγn` (in `W`).
pub fn min_degree_audit(g: &PartitionedGraph, spec: &TemplateSpec, params: &AnalysisParams) -> Result<Vec<DegreeViolation>> {
    check_aligned(g, spec)?;
    let layout = spec.layout()?;
    let (k, a, n) = (spec.k as i64, spec.a() as i64, spec.n as i64);
    let slack = params.degree_slack();
    let slack = Ratio::new(*slack.numer() as i64, *slack.denom() as i64);
    let mut out = Vec::new();
    for i in 0..spec.r {
        let checks = [
            (VertexRole::Z, &layout.z[i], (k - a) * n - layout.w[i].count() as i64),
            (VertexRole::W, &layout.w[i], (k - 1 - a) * n),
        ];
        for (role, set, base) in checks {
            let threshold = Ratio::from_integer(base) - slack;
            for v in set.iter() {
                let degree = g.degree(v);
                if Ratio::from_integer(degree as i64) < threshold {
                    out.push(DegreeViolation {
                        vertex: v,
                        class: i,
                        role,
                        degree,
                        threshold: *threshold.numer() as f64 / *threshold.denom() as f64,
                    });
                }
            }
        }
    }
    out.sort_by_key(|v| v.vertex);
    Ok(out)
}

/// Atypical vertices relative to a template.
///
/// `z_cross[i][j]` is `Z_i^j`; `u_tilde[i] = ⋃_j Z_j^i ∪ W′_i`. Vertices that
/// meet several membership conditions at once are listed in `ambiguous` and
/// nowhere else.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtypicalDecomposition {
    pub w_doubleprime: VertexSet,
    pub w_prime: Vec<VertexSet>,
    pub z_doubleprime: VertexSet,
    pub z_doubleprime_by_class: Vec<VertexSet>,
    pub z_cross: Vec<Vec<VertexSet>>,
    pub u_tilde: Vec<VertexSet>,
    pub ambiguous: VertexSet,
    /// `εn ≥ 1`; below it every "fewer than εn" test means "none".
    pub precondition_met: bool,
}

impl AtypicalDecomposition {
    /// The partition identities, checked on the non-ambiguous vertices.
    pub fn check_partitions(&self, spec: &TemplateSpec) -> Result<()> {
        let layout = spec.layout()?;
        let fail = |m: &str| Err(Error::Malformed(m.to_string()));
        let all_w = layout.w.iter().fold(BitSet::new(self.ambiguous.capacity()), |acc, w| acc.union(w));
        let mut seen = self.w_doubleprime.clone();
        for w in &self.w_prime {
            if !seen.is_disjoint(w) {
                return fail("W'' and the W'_i overlap");
            }
            seen.union_with(w);
        }
        if seen != all_w.difference(&self.ambiguous) {
            return fail("W'' and the W'_i do not cover W");
        }
        for i in 0..spec.r {
            let mut seen = BitSet::new(self.ambiguous.capacity());
            for zij in &self.z_cross[i] {
                if !seen.is_disjoint(zij) {
                    return fail("the Z_i^j overlap");
                }
                seen.union_with(zij);
            }
            let expected = layout.z[i].difference(&self.z_doubleprime_by_class[i]).difference(&self.ambiguous);
            if seen != expected {
                return fail("the Z_i^j do not cover Z_i'");
            }
        }
        let mut seen = self.z_doubleprime.union(&self.w_doubleprime).union(&self.ambiguous);
        for u in &self.u_tilde {
            if !seen.is_disjoint(u) {
                return fail("refined classes overlap");
            }
            seen.union_with(u);
        }
        if seen.count() != seen.capacity() {
            return fail("refined classes do not cover the universe");
        }
        Ok(())
    }
}

pub fn classify_atypical(g: &PartitionedGraph, spec: &TemplateSpec, params: &AnalysisParams) -> Result<AtypicalDecomposition> {
    check_aligned(g, spec)?;
    let layout = spec.layout()?;
    let (r, n, nv) = (spec.r, spec.n, g.n_vertices());
    let eps = params.epsilon;
    let empty = BitSet::new(nv);
    let mut d = AtypicalDecomposition {
        w_doubleprime: empty.clone(),
        w_prime: vec![empty.clone(); r],
        z_doubleprime: empty.clone(),
        z_doubleprime_by_class: vec![empty.clone(); r],
        z_cross: vec![vec![empty.clone(); r]; r],
        u_tilde: vec![empty.clone(); r],
        ambiguous: empty.clone(),
        precondition_met: (*eps.numer() as u128) * (n as u128) >= *eps.denom() as u128,
    };
    let low = |v: usize, set: &VertexSet| below(g.degree_into(v, set), eps, n);

    for i in 0..r {
        for v in layout.w[i].iter() {
            let lows: Vec<usize> = (0..r).filter(|&j| low(v, &layout.z[j])).collect();
            match lows.as_slice() {
                [] => d.w_doubleprime.insert(v),
                [j] => d.w_prime[*j].insert(v),
                _ => d.ambiguous.insert(v),
            }
        }
        let u_i = layout.partition.class(i);
        for v in layout.z[i].iter() {
            let lows: Vec<usize> = (0..r)
                .filter(|&j| if j == i { low(v, u_i) } else { low(v, &layout.z[j]) })
                .collect();
            match lows.as_slice() {
                [] => {
                    d.z_doubleprime_by_class[i].insert(v);
                    d.z_doubleprime.insert(v);
                }
                [j] => d.z_cross[i][*j].insert(v),
                _ => d.ambiguous.insert(v),
            }
        }
    }
    for i in 0..r {
        let mut u = d.w_prime[i].clone();
        for j in 0..r {
            u.union_with(&d.z_cross[j][i]);
        }
        d.u_tilde[i] = u;
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HighDegreeCore {
    pub core: VertexSet,
    /// Pairwise class densities at least `1 − γ` and `ε² > 3r²t²γ`.
    pub hypothesis_met: bool,
    pub bound: f64,
    pub within_bound: bool,
}

/// `X = {v : d(v, U_i) ≥ ε|U_i| for every class}`, with the size bound
/// `2(t−1)ε^{−rt}` when the hypothesis holds.
pub fn high_degree_core(g: &PartitionedGraph, p: &ClassPartition, params: &AnalysisParams) -> Result<HighDegreeCore> {
    if p.r() != params.r || p.classes()[0].capacity() != g.n_vertices() {
        return Err(Error::PartMismatch);
    }
    let eps = params.epsilon;
    let mut core = g.empty_set();
    for v in 0..g.n_vertices() {
        if p.classes().iter().all(|u| !below(g.degree_into(v, u), eps, u.count())) {
            core.insert(v);
        }
    }
    let one = Ratio::from_integer(1);
    let mut dense = true;
    for i in 0..p.r() {
        for j in i + 1..p.r() {
            match g.density(p.class(i), p.class(j)) {
                Ok(d) => dense &= d >= one - params.gamma,
                Err(Error::EmptyDensity) => dense = false,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(HighDegreeCore {
        hypothesis_met: dense && params.core_hypothesis(),
        bound: params.c0(),
        within_bound: params.within_c0(core.count()),
        core,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairDensity {
    pub i: usize,
    pub j: usize,
    pub edges: usize,
    pub pairs: usize,
    pub density: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub densities: Vec<PairDensity>,
    /// `K_{t,t}` verdict on the first class minus `Z`.
    pub first_class: Outcome,
    /// `K_{1,t}` verdicts on the other classes minus `Z`; `None` means free.
    pub other_classes: Vec<Option<Vec<usize>>>,
    pub exceptional_size: usize,
    pub c0: f64,
    pub exceptional_within_c0: bool,
}

impl StructureReport {
    pub fn all_free(&self) -> bool {
        self.first_class.is_free() && self.other_classes.iter().all(Option::is_none)
    }
}

/// Densities between the classes outside `z`, and the class-wise pattern
/// verdicts.
pub fn structure_report(
    g: &PartitionedGraph,
    p: &ClassPartition,
    z: &VertexSet,
    params: &AnalysisParams,
    budget: Budget,
) -> Result<StructureReport> {
    if p.classes()[0].capacity() != g.n_vertices() || z.capacity() != g.n_vertices() {
        return Err(Error::PartMismatch);
    }
    let t = params.t;
    let parts: Vec<VertexSet> = p.classes().iter().map(|c| c.difference(z)).collect();
    let mut densities = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let pairs = parts[i].count() * parts[j].count();
            let edges = g.pair_count(&parts[i], &parts[j]);
            densities.push(PairDensity {
                i,
                j,
                edges,
                pairs,
                density: (pairs > 0).then(|| edges as f64 / pairs as f64),
            });
        }
    }
    let first_class = find_biclique(g, &parts[0], t, budget).outcome;
    let other_classes = parts[1..]
        .iter()
        .map(|u| find_star(g, u, t).map(|w| w.vertices().collect()))
        .collect();
    Ok(StructureReport {
        densities,
        first_class,
        other_classes,
        exceptional_size: z.count(),
        c0: params.c0(),
        exceptional_within_c0: params.within_c0(z.count()),
    })
}
