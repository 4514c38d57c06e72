mod common;

use common::{naive_extremal, naive_z};
use turan_core::ex::{ex_exact, ExInstance};
use turan_core::zar::{z_exact, ZarKey};
use turan_core::{Budget, ForbiddenPattern};

// z_t(m, n) for 1 ≤ n ≤ m ≤ 4, rows by m.
const Z2: [&[u64]; 4] = [&[1], &[2, 3], &[3, 4, 6], &[4, 5, 7, 9]];
const Z3: [&[u64]; 4] = [&[1], &[2, 4], &[3, 6, 8], &[4, 8, 10, 13]];

#[test]
fn naive_oracle_matches_frozen_table() {
    for (t, table) in [(2, Z2), (3, Z3)] {
        for (m, row) in table.iter().enumerate() {
            for (n, &z) in row.iter().enumerate() {
                assert_eq!(naive_z(m + 1, n + 1, t), z, "z_{t}({}, {})", m + 1, n + 1);
            }
        }
    }
}

#[test]
fn exact_search_matches_frozen_table() {
    for (t, table) in [(2, Z2), (3, Z3)] {
        for (m, row) in table.iter().enumerate() {
            for (n, &z) in row.iter().enumerate() {
                let r = z_exact(&ZarKey::bipartite(m + 1, n + 1, t).unwrap(), Budget::default()).unwrap();
                assert_eq!(r.value, z);
                // Orientation does not matter.
                let s = z_exact(&ZarKey::bipartite(n + 1, m + 1, t).unwrap(), Budget::default()).unwrap();
                assert_eq!(s.value, z);
            }
        }
    }
}

#[test]
fn multipartite_zarankiewicz_against_exhaustion() {
    assert_eq!(naive_extremal(&[2, 2, 2], &[2, 2]), 7);
    assert_eq!(naive_extremal(&[1, 1, 1, 1], &[2, 2]), 4);
    for parts in [vec![2, 2, 2], vec![1, 1, 1, 1], vec![2, 2, 1], vec![3, 2, 1]] {
        let want = naive_extremal(&parts, &[2, 2]);
        let got = z_exact(&ZarKey::new(parts.clone(), 2).unwrap(), Budget::default()).unwrap();
        assert_eq!(got.value, want, "{parts:?}");
    }
}

#[test]
fn extremal_numbers_against_exhaustion() {
    let cases: [(&[usize], ForbiddenPattern, u64); 6] = [
        (&[1, 1, 1], ForbiddenPattern::CompleteMultipartite { q: 3, t: 1 }, 2),
        (&[2, 2, 2], ForbiddenPattern::CompleteMultipartite { q: 3, t: 1 }, 8),
        (&[1, 1, 1, 1], ForbiddenPattern::CompleteMultipartite { q: 3, t: 1 }, 4),
        (&[1, 1, 1, 1], ForbiddenPattern::CompleteMultipartite { q: 4, t: 1 }, 5),
        (&[1, 1, 1, 1, 1], ForbiddenPattern::CompleteMultipartite { q: 4, t: 1 }, 8),
        (&[2, 2, 2], ForbiddenPattern::CompleteMultipartite { q: 3, t: 2 }, 11),
    ];
    for (parts, pattern, frozen) in cases {
        assert_eq!(naive_extremal(parts, &pattern.class_sizes()), frozen, "{parts:?} {pattern}");
        let rec = ex_exact(&ExInstance::new(parts.to_vec(), pattern, Budget::default())).unwrap();
        assert_eq!(rec.value, frozen, "{parts:?} {pattern}");
    }
}
