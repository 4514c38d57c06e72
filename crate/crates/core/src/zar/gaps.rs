use serde::{Deserialize, Serialize};

use crate::detect::Budget;
use crate::error::{Error, Result};
use crate::io::Cache;
use crate::zar::{z_exact, Status, ZarKey, ZarRecord};

/// Range for the finite-difference checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapRange {
    pub t: usize,
    /// Bipartite grid `1 ≤ m, n ≤ max_side`.
    pub max_side: usize,
    /// Multipartite differences for `2 ≤ a < max_parts`.
    pub max_parts: usize,
    /// ... and part sizes `1 ≤ n ≤ max_part_size`.
    pub max_part_size: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RowStep {
    pub m: usize,
    pub n: usize,
    pub diff: i64,
    /// A new vertex can only receive `t − 1` edges when `n ≥ t − 1`.
    pub applicable: bool,
    pub holds: bool,
}

/// `z_t(n, n) − z_t(m, n)` for `m < n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColumnDeficit {
    pub m: usize,
    pub n: usize,
    pub diff: i64,
}

/// `z_t^{(a+1)}(n) − z_t^{(a)}(n)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartStep {
    pub a: usize,
    pub n: usize,
    pub lower: u64,
    pub upper: u64,
    pub diff: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapReport {
    pub range: GapRange,
    /// `grid[m−1][n−1] = z_t(m, n)`.
    pub grid: Vec<Vec<u64>>,
    pub row_steps: Vec<RowStep>,
    pub rows_hold: bool,
    pub column_deficits: Vec<ColumnDeficit>,
    pub part_steps: Vec<PartStep>,
    pub monotone: bool,
}

/// Exact record from the cache, or computed and stored.
pub fn cached_z_exact(key: &ZarKey, budget: Budget, cache: Option<&mut Cache>) -> Result<ZarRecord> {
    if let Some(c) = cache.as_deref() {
        if let Some(r) = c.get_zar(key) {
            return Ok(r);
        }
    }
    let rec = z_exact(key, budget)?;
    if rec.status == Status::Exact {
        if let Some(c) = cache {
            c.put_zar(&rec)?;
        }
    }
    Ok(rec)
}

/// Tabulates the exact grid and checks `z_t(m, n) − z_t(m−1, n) ≥ t − 1`
/// on every cell with `n ≥ t − 1`; the two other differences are reported
/// only.
pub fn gap_checks(range: &GapRange, budget: Budget, mut cache: Option<&mut Cache>) -> Result<GapReport> {
    let t = range.t;
    let mut value = |key: ZarKey| -> Result<u64> {
        let rec = cached_z_exact(&key, budget, cache.as_deref_mut())?;
        match rec.status {
            Status::Exact => Ok(rec.value),
            Status::LowerBoundOnly => Err(Error::BudgetExceeded(budget.max_nodes)),
        }
    };
    let s = range.max_side;
    let mut grid = vec![vec![0u64; s]; s];
    for m in 1..=s {
        for n in 1..=m {
            grid[m - 1][n - 1] = value(ZarKey::bipartite(m, n, t)?)?;
            grid[n - 1][m - 1] = grid[m - 1][n - 1];
        }
    }
    let z = |m: usize, n: usize| grid[m - 1][n - 1] as i64;
    let mut row_steps = Vec::new();
    for m in 2..=s {
        for n in 1..=s {
            let diff = z(m, n) - z(m - 1, n);
            row_steps.push(RowStep {
                m,
                n,
                diff,
                applicable: n + 1 >= t,
                holds: diff >= t as i64 - 1,
            });
        }
    }
    let mut column_deficits = Vec::new();
    for n in 2..=s {
        for m in 1..n {
            column_deficits.push(ColumnDeficit {
                m,
                n,
                diff: z(n, n) - z(m, n),
            });
        }
    }
    let mut monotone = true;
    for m in 1..=s {
        for n in 1..=s {
            if (m < s && grid[m - 1][n - 1] > grid[m][n - 1]) || (n < s && grid[m - 1][n - 1] > grid[m - 1][n]) {
                monotone = false;
            }
        }
    }
    let mut part_steps = Vec::new();
    for n in 1..=range.max_part_size {
        for a in 2..range.max_parts {
            let lower = value(ZarKey::balanced(a, n, t)?)?;
            let upper = value(ZarKey::balanced(a + 1, n, t)?)?;
            part_steps.push(PartStep {
                a,
                n,
                lower,
                upper,
                diff: upper as i64 - lower as i64,
            });
        }
    }
    Ok(GapReport {
        range: range.clone(),
        rows_hold: row_steps.iter().all(|e| e.holds || !e.applicable),
        grid,
        row_steps,
        column_deficits,
        part_steps,
        monotone,
    })
}
