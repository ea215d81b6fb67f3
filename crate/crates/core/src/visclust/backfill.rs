//! Nearest-assigned-point completion of partial labelings.

use crate::data::Dataset;
use crate::error::{Error, Result};

/// Give every unlabeled point the label of its nearest labeled point
/// (Euclidean, ties to the lowest point index).
pub fn backfill(x_scaled: &Dataset, partial: &[Option<usize>]) -> Result<Vec<usize>> {
    if partial.len() != x_scaled.len() {
        return Err(Error::InvalidInput(format!(
            "{} labels for {} points",
            partial.len(),
            x_scaled.len()
        )));
    }
    let assigned: Vec<usize> = (0..partial.len()).filter(|&i| partial[i].is_some()).collect();
    if assigned.is_empty() {
        return Err(Error::CannotBackfill);
    }
    if assigned.len() == partial.len() {
        return Ok(partial.iter().map(|l| l.expect("all assigned")).collect());
    }
    let tree = KdTree::build(x_scaled, assigned);
    Ok(partial
        .iter()
        .enumerate()
        .map(|(i, l)| match l {
            Some(l) => *l,
            None => partial[tree.nearest(x_scaled.row(i))].expect("tree holds assigned points"),
        })
        .collect())
}

/// Static k-d tree over a subset of rows, stored implicitly: each node is the
/// median of its index range, split along the axis of largest spread.
struct KdTree<'a> {
    data: &'a Dataset,
    order: Vec<usize>,
    axes: Vec<usize>,
}

impl<'a> KdTree<'a> {
    fn build(data: &'a Dataset, mut order: Vec<usize>) -> Self {
        let mut axes = vec![0; order.len()];
        Self::split(data, &mut order, &mut axes, 0);
        KdTree { data, order, axes }
    }

    fn split(data: &Dataset, order: &mut [usize], axes: &mut [usize], offset: usize) {
        let n = order.len();
        if n <= 1 {
            return;
        }
        let d = data.dims();
        let axis = (0..d)
            .max_by(|&a, &b| {
                let spread = |j: usize| {
                    let (lo, hi) = order.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| {
                        let v = data.row(i)[j];
                        (lo.min(v), hi.max(v))
                    });
                    hi - lo
                };
                spread(a).total_cmp(&spread(b))
            })
            .unwrap_or(0);
        let mid = n / 2;
        order.select_nth_unstable_by(mid, |&a, &b| {
            data.row(a)[axis].total_cmp(&data.row(b)[axis]).then(a.cmp(&b))
        });
        axes[offset + mid] = axis;
        let (left, rest) = order.split_at_mut(mid);
        Self::split(data, left, &mut axes[..], offset);
        Self::split(data, &mut rest[1..], axes, offset + mid + 1);
    }

    /// Row index of the nearest stored point to `q`.
    fn nearest(&self, q: &[f64]) -> usize {
        let mut best = (f64::INFINITY, usize::MAX);
        self.search(q, 0, self.order.len(), &mut best);
        best.1
    }

    fn search(&self, q: &[f64], lo: usize, hi: usize, best: &mut (f64, usize)) {
        if lo >= hi {
            return;
        }
        let mid = lo + (hi - lo) / 2;
        let idx = self.order[mid];
        let p = self.data.row(idx);
        let dist: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
        if dist < best.0 || (dist == best.0 && idx < best.1) {
            *best = (dist, idx);
        }
        let axis = self.axes[mid];
        let diff = q[axis] - p[axis];
        let (near, far) = if diff < 0.0 {
            ((lo, mid), (mid + 1, hi))
        } else {
            ((mid + 1, hi), (lo, mid))
        };
        self.search(q, near.0, near.1, best);
        // Equal distances must still be visited for the index tie-break.
        if diff * diff <= best.0 {
            self.search(q, far.0, far.1, best);
        }
    }
}
