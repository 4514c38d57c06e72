use serde::{Deserialize, Serialize};

use crate::detect::ForbiddenPattern;
use crate::error::{Error, Result};

/// `t_r(k)`: edges of the Turán graph `T_r(k)`.
///
/// With `k = ar + b`, the `C(r,2)·a²` edges among the first `a` vertices of
/// every class plus the `b(k−a−1)` edges at the `b` leftover vertices count
/// the `C(b,2)` edges among leftover vertices twice.
pub fn turan_count(r: usize, k: usize) -> Result<u64> {
    if r == 0 || r > k {
        return Err(Error::InvalidParams(format!("turan_count needs 1 <= r <= k, got r={r}, k={k}")));
    }
    let (a, b) = ((k / r) as u64, (k % r) as u64);
    let r = r as u64;
    let k = k as u64;
    let leftover = if b == 0 { 0 } else { b * (k - a - 1) - b * (b - 1) / 2 };
    Ok(r * (r - 1) / 2 * a * a + leftover)
}

/// Parameters shared by the two lower-bound constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub t: usize,
}

impl ConstructionParams {
    pub fn new(n: usize, r: usize, k: usize, t: usize) -> Result<Self> {
        let p = ConstructionParams { n, r, k, t };
        if r == 0 || r >= k || k > 2 * r {
            return Err(Error::InvalidParams(format!("need r < k <= 2r, got r={r}, k={k}")));
        }
        if t < 1 || n < 1 {
            return Err(Error::InvalidParams(format!("need n, t >= 1, got n={n}, t={t}")));
        }
        Ok(p)
    }

    /// Rows carrying a second part: `b = k − r`.
    pub fn b(&self) -> usize {
        self.k - self.r
    }

    /// Size of each moved set: `⌈(t−1)/2⌉`.
    pub fn t_prime(&self) -> usize {
        self.t.saturating_sub(1).div_ceil(2)
    }

    /// Number of rows that donate moved vertices: `min{b−1, r−b}`.
    pub fn b_prime(&self) -> usize {
        (self.b() - 1).min(self.r - self.b())
    }

    /// `⌊(t−1)²/4⌋`.
    pub fn gain_per_row(&self) -> u64 {
        let x = self.t.saturating_sub(1) as u64;
        x * x / 4
    }
}

/// `t_r(k)n² + z + (t−1)(k−r−1)n + min{k−r−1, 2r−k}·⌊(t−1)²/4⌋` with the
/// supplied value `z` standing in for `z_t(n, n)`.
pub fn g_value(n: usize, r: usize, k: usize, t: usize, z_value: u64) -> Result<u64> {
    let p = ConstructionParams::new(n, r, k, t)?;
    if t < 2 {
        return Err(Error::InvalidParams("g(n,r,k,t) is defined for t >= 2".into()));
    }
    let n64 = n as u64;
    Ok(turan_count(r, k)? * n64 * n64 + z_value + (t as u64 - 1) * (p.b() as u64 - 1) * n64 + p.b_prime() as u64 * p.gain_per_row())
}

/// Coefficient `C(k,2)` of `n²` when the pattern's chromatic number exceeds
/// `k` (every `k`-partite graph is then pattern-free).
pub fn chromatic_trivial_value(k: usize, pattern: &ForbiddenPattern) -> Option<u64> {
    (pattern.chromatic_number() > k).then(|| (k * k.saturating_sub(1) / 2) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_counts() {
        assert_eq!(turan_count(2, 3).unwrap(), 2);
        assert_eq!(turan_count(3, 4).unwrap(), 5);
        assert_eq!(turan_count(2, 4).unwrap(), 4);
        assert_eq!(turan_count(3, 5).unwrap(), 8);
        assert_eq!(turan_count(1, 4).unwrap(), 0);
        assert!(turan_count(0, 3).is_err());
        assert!(turan_count(4, 3).is_err());
    }

    #[test]
    fn turan_count_matches_complete_partite_graph() {
        for k in 1..=9 {
            for r in 1..=k {
                let sizes: Vec<u64> = (0..r).map(|i| (k / r + usize::from(i < k % r)) as u64).collect();
                let total: u64 = sizes.iter().sum();
                let brute = (total * total - sizes.iter().map(|s| s * s).sum::<u64>()) / 2;
                assert_eq!(turan_count(r, k).unwrap(), brute, "r={r} k={k}");
            }
        }
    }

    #[test]
    fn g_formula() {
        // k = r + 1 kills both correction terms; at t = 2 the floor term is zero.
        for n in [1, 2, 5] {
            assert_eq!(g_value(n, 2, 3, 2, 7).unwrap(), 2 * (n * n) as u64 + 7);
        }
        assert_eq!(g_value(2, 2, 3, 2, 3).unwrap(), 11);
        // t_3(5)·n² + z + 2n + 1 at r = 3, k = 5, t = 3; T_3(5) = K_{2,2,1}.
        let n = 10u64;
        assert_eq!(turan_count(3, 5).unwrap(), 8);
        assert_eq!(g_value(10, 3, 5, 3, 40).unwrap(), 8 * n * n + 40 + 2 * n + 1);
        assert!(g_value(3, 2, 5, 2, 0).is_err());
        assert!(g_value(3, 2, 3, 1, 0).is_err());
    }

    #[test]
    fn derived_construction_constants() {
        let p = ConstructionParams::new(72, 5, 8, 3).unwrap();
        assert_eq!((p.b(), p.t_prime(), p.b_prime()), (3, 1, 2));
        let p = ConstructionParams::new(72, 5, 8, 4).unwrap();
        assert_eq!((p.t_prime(), p.gain_per_row()), (2, 2));
    }

    #[test]
    fn chromatic_trivial() {
        let p = |q, t| ForbiddenPattern::CompleteMultipartite { q, t };
        assert_eq!(chromatic_trivial_value(2, &p(3, 1)), Some(1));
        assert_eq!(chromatic_trivial_value(3, &p(3, 2)), None);
        assert_eq!(chromatic_trivial_value(3, &p(4, 2)), Some(3));
    }
}
