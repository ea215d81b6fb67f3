use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::ContingencyTable;

/// Exact Stirling numbers of the second kind `S(n, k)`, built row by row from
/// `S(n, k) = k S(n-1, k) + S(n-1, k-1)` with `S(0, 0) = 1`.
///
/// Only rows `first_row..=max_n` are retained, so the two rows needed for a
/// large `m` cost memory proportional to those rows alone.
#[derive(Debug, Clone)]
pub struct StirlingCache {
    first_row: usize,
    max_k: usize,
    rows: Vec<Vec<BigUint>>,
}

impl StirlingCache {
    /// Every `S(n, k)` with `n <= max_n`, `k <= max_k`.
    pub fn new(max_n: usize, max_k: usize) -> Self {
        Self::rows(0, max_n, max_k)
    }

    /// Rows `first_row..=max_n` only.
    pub fn rows(first_row: usize, max_n: usize, max_k: usize) -> Self {
        assert!(first_row <= max_n, "empty row range");
        let mut row: Vec<BigUint> = vec![BigUint::zero(); max_k + 1];
        row[0] = BigUint::one();
        let mut kept = Vec::with_capacity(max_n - first_row + 1);
        if first_row == 0 {
            kept.push(row.clone());
        }
        for n in 1..=max_n {
            // Walk k downwards so row[k - 1] still holds S(n - 1, k - 1).
            for k in (1..=max_k.min(n)).rev() {
                let prev = std::mem::take(&mut row[k]);
                row[k] = prev * BigUint::from(k) + &row[k - 1];
            }
            row[0] = BigUint::zero();
            if n >= first_row {
                kept.push(row.clone());
            }
        }
        StirlingCache {
            first_row,
            max_k,
            rows: kept,
        }
    }

    /// The two rows `m - 1` and `m` needed for the expected Rand index of
    /// `table`, up to its number of predicted clusters.
    pub fn for_table(table: &ContingencyTable) -> Self {
        let m = table.total();
        Self::rows(m.saturating_sub(1), m, table.rows())
    }

    /// `S(n, k)`, or `None` outside the retained range.
    pub fn get(&self, n: usize, k: usize) -> Option<&BigUint> {
        if n < self.first_row || k > self.max_k {
            return None;
        }
        self.rows.get(n - self.first_row).map(|row| &row[k])
    }

    pub fn max_n(&self) -> usize {
        self.first_row + self.rows.len() - 1
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }
}
