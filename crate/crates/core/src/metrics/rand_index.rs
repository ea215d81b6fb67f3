use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::{contingency, ContingencyTable, StirlingCache};
use crate::error::{Error, Result};

fn pairs(n: usize) -> u128 {
    let n = n as u128;
    n * n.saturating_sub(1) / 2
}

struct PairCounts {
    /// `sum_ij C(n_ij, 2)`
    joint: u128,
    /// `sum_i C(a_i, 2)`
    rows: u128,
    /// `sum_j C(b_j, 2)`
    cols: u128,
    /// `C(m, 2)`
    total: u128,
}

impl PairCounts {
    fn of(table: &ContingencyTable) -> Result<Self> {
        let m = table.total();
        if m < 2 {
            return Err(Error::InsufficientData(format!(
                "pair-counting metrics need two points, got {m}"
            )));
        }
        Ok(PairCounts {
            joint: table.counts().iter().map(|&n| pairs(n)).sum(),
            rows: table.row_sums().iter().map(|&a| pairs(a)).sum(),
            cols: table.col_sums().iter().map(|&b| pairs(b)).sum(),
            total: pairs(m),
        })
    }

    /// Number of pairs on which the partitions agree.
    fn agreements(&self) -> u128 {
        self.total + 2 * self.joint - self.rows - self.cols
    }
}

/// Fraction of point pairs that both partitions put together or both put
/// apart.
pub fn rand_index(table: &ContingencyTable) -> Result<f64> {
    let p = PairCounts::of(table)?;
    Ok(p.agreements() as f64 / p.total as f64)
}

/// Exact expected Rand index as a fraction `num / den`:
/// with `r = S(m-1, k) / S(m, k)` and `beta = sum_j C(b_j,2) / C(m,2)`,
/// `E = r beta + (1 - r)(1 - beta)`.
fn expected_fraction(table: &ContingencyTable, stirling: &StirlingCache) -> Result<(BigUint, BigUint)> {
    let p = PairCounts::of(table)?;
    let m = table.total();
    let k = table.rows();
    if k > m {
        return Err(Error::InvalidInput(format!("{k} clusters for {m} points")));
    }
    let missing = || {
        Error::InvalidInput(format!(
            "Stirling cache lacks S({}, {k}) or S({m}, {k})",
            m - 1
        ))
    };
    let s_prev = stirling.get(m - 1, k).ok_or_else(missing)?;
    let s_m = stirling.get(m, k).ok_or_else(missing)?;
    let together = BigUint::from(p.cols);
    let apart = BigUint::from(p.total - p.cols);
    let num = s_prev * &together + (s_m - s_prev) * apart;
    let den = s_m * BigUint::from(p.total);
    Ok((num, den))
}

/// Expected Rand index when the predicted (row) partition is replaced by a
/// uniformly random partition with the same number of clusters.
pub fn expected_rand_index(table: &ContingencyTable, stirling: &StirlingCache) -> Result<f64> {
    let (num, den) = expected_fraction(table, stirling)?;
    Ok(ratio_to_f64(&BigInt::from(num), &BigInt::from(den)))
}

/// `(RI - E[RI]) / (1 - E[RI])`, evaluated exactly before the final rounding.
pub fn adjusted_rand_index_table(table: &ContingencyTable, stirling: &StirlingCache) -> Result<f64> {
    let p = PairCounts::of(table)?;
    let (e_num, e_den) = expected_fraction(table, stirling)?;
    if e_num == e_den {
        return Err(Error::UndefinedMetric(
            "expected Rand index is 1, adjustment divides by zero".into(),
        ));
    }
    let (e_num, e_den) = (BigInt::from(e_num), BigInt::from(e_den));
    let ri_num = BigInt::from(p.agreements());
    let total = BigInt::from(p.total);
    let num = &ri_num * &e_den - &e_num * &total;
    let den = total * (e_den - e_num);
    Ok(ratio_to_f64(&num, &den))
}

/// Adjusted Rand index of `pred` against `truth` under the one-sided model.
pub fn adjusted_rand_index<A: Ord + Clone, B: Ord + Clone>(pred: &[A], truth: &[B]) -> Result<f64> {
    let table = contingency(pred, truth)?;
    adjusted_rand_index_table(&table, &StirlingCache::for_table(&table))
}

/// `num / den` rounded once, for integers of any size.
fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let bits = num.bits().max(den.bits());
    let shift = bits.saturating_sub(1000);
    let n = (num >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (den >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}
