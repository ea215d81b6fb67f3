//! External clustering metrics: contingency tables, the Rand index, its
//! adjusted form under the one-sided fixed-cluster-count random model, and
//! accuracy under the best cluster-to-class matching.
//!
//! Throughout, `pred` (the algorithm's output) indexes table rows and
//! `truth` indexes columns. The random model behind the expected Rand index
//! randomizes the row partition while keeping its number of clusters.

mod accuracy;
mod assignment;
mod contingency;
mod rand_index;
mod stirling;

use std::fmt;

pub use accuracy::accuracy;
pub use assignment::max_weight_assignment;
pub use contingency::{contingency, ContingencyTable};
pub use rand_index::{adjusted_rand_index, adjusted_rand_index_table, expected_rand_index, rand_index};
pub use stirling::StirlingCache;

use crate::error::Result;

/// Every metric for one (prediction, truth) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub acc: f64,
    pub ri: f64,
    pub e_ri: f64,
    /// `None` when the expected index is 1 and the adjustment is undefined.
    pub ari: Option<f64>,
    pub m: usize,
    pub n_clusters_pred: usize,
    pub n_clusters_truth: usize,
}

impl MetricsReport {
    pub fn evaluate<A: Ord + Clone, B: Ord + Clone>(pred: &[A], truth: &[B]) -> Result<Self> {
        let table = contingency(pred, truth)?;
        let stirling = StirlingCache::for_table(&table);
        let ri = rand_index(&table)?;
        let e_ri = expected_rand_index(&table, &stirling)?;
        let ari = adjusted_rand_index_table(&table, &stirling).ok();
        Ok(MetricsReport {
            acc: accuracy(pred, truth)?,
            ri,
            e_ri,
            ari,
            m: table.total(),
            n_clusters_pred: table.rows(),
            n_clusters_truth: table.cols(),
        })
    }
}

impl fmt::Display for MetricsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "acc={}", self.acc)?;
        writeln!(f, "ri={}", self.ri)?;
        writeln!(f, "e_ri={}", self.e_ri)?;
        match self.ari {
            Some(a) => writeln!(f, "ari={a}")?,
            None => writeln!(f, "ari=undefined")?,
        }
        writeln!(f, "m={}", self.m)?;
        writeln!(f, "n_clusters_pred={}", self.n_clusters_pred)?;
        write!(f, "n_clusters_truth={}", self.n_clusters_truth)
    }
}
