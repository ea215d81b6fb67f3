use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Intersection counts `n_ij = |A_i ∩ B_j|` of two partitions of the same
/// points, with row sums `a_i` and column sums `b_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    counts: Vec<usize>,
    rows: usize,
    cols: usize,
    row_sums: Vec<usize>,
    col_sums: Vec<usize>,
    total: usize,
}

impl ContingencyTable {
    /// Table from a row-major count matrix.
    pub fn from_counts(counts: Vec<usize>, rows: usize, cols: usize) -> Result<Self> {
        if counts.len() != rows * cols || rows == 0 || cols == 0 {
            return Err(Error::InvalidDimension(format!(
                "{} counts for a {rows}x{cols} table",
                counts.len()
            )));
        }
        let row_sums: Vec<usize> = counts.chunks_exact(cols).map(|r| r.iter().sum()).collect();
        let col_sums: Vec<usize> = (0..cols)
            .map(|j| counts.iter().skip(j).step_by(cols).sum())
            .collect();
        let total = row_sums.iter().sum();
        Ok(ContingencyTable {
            counts,
            rows,
            cols,
            row_sums,
            col_sums,
            total,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.counts[i * self.cols + j]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn row_sums(&self) -> &[usize] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[usize] {
        &self.col_sums
    }

    /// Number of points `m`.
    pub fn total(&self) -> usize {
        self.total
    }
}

/// Cross-tabulate two labelings. Rows follow the sorted distinct values of
/// `pred`, columns those of `truth`.
pub fn contingency<A: Ord + Clone, B: Ord + Clone>(pred: &[A], truth: &[B]) -> Result<ContingencyTable> {
    if pred.len() != truth.len() {
        return Err(Error::InvalidInput(format!(
            "label vectors differ in length: {} vs {}",
            pred.len(),
            truth.len()
        )));
    }
    if pred.is_empty() {
        return Err(Error::InvalidInput("label vectors are empty".into()));
    }
    let rows = dense_codes(pred);
    let cols = dense_codes(truth);
    let (nr, nc) = (
        rows.iter().max().map_or(0, |&r| r + 1),
        cols.iter().max().map_or(0, |&c| c + 1),
    );
    let mut counts = vec![0usize; nr * nc];
    for (&r, &c) in rows.iter().zip(&cols) {
        counts[r * nc + c] += 1;
    }
    ContingencyTable::from_counts(counts, nr, nc)
}

/// Map labels to `0..distinct` in sorted label order.
pub(crate) fn dense_codes<T: Ord + Clone>(labels: &[T]) -> Vec<usize> {
    let mut codes: BTreeMap<T, usize> = labels.iter().map(|l| (l.clone(), 0)).collect();
    for (i, v) in codes.values_mut().enumerate() {
        *v = i;
    }
    labels.iter().map(|l| codes[l]).collect()
}
