use std::collections::BinaryHeap;

use rand::seq::index;

use super::PIXELS_PER_UNIT;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::rng::Rng;

/// Larger point sets are subsampled to this many points.
pub const SIGMA_SUBSAMPLE: usize = 500;
/// Number of shortest pairwise distances whose median sets the filter width.
pub const SIGMA_MAX_PAIRS: usize = 1000;

fn squared(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(u, v)| (u - v) * (u - v)).sum()
}

/// Squared pairwise distances containing at least the `want` smallest (all
/// of them when there are no more than `want` pairs).
fn shortest_squared(pts: &[&[f64]], want: usize) -> Vec<f64> {
    let n = pts.len();
    if n * (n - 1) / 2 <= want {
        let mut all = Vec::with_capacity(n * (n - 1) / 2);
        for (a, p) in pts.iter().enumerate() {
            all.extend(pts[a + 1..].iter().map(|q| squared(p, q)));
        }
        return all;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pts[a][0].total_cmp(&pts[b][0]));

    // Neighbors along the first axis give `want` real pairs, so their
    // `want`-th smallest distance bounds the true one from above.
    let mut bound = Vec::with_capacity(want + n);
    let mut gap = 1;
    while bound.len() < want {
        bound.extend((0..n - gap).map(|a| squared(pts[order[a]], pts[order[a + gap]])));
        gap += 1;
    }
    bound.select_nth_unstable_by(want - 1, f64::total_cmp);
    let limit = bound[want - 1];

    // Max-heap of the smallest values seen; its top tightens the cutoff.
    let mut heap: BinaryHeap<Ordered> = BinaryHeap::with_capacity(want + 1);
    let mut cutoff = limit;
    for a in 0..n {
        let p = pts[order[a]];
        for &b in &order[a + 1..] {
            let q = pts[b];
            let dx = q[0] - p[0];
            if dx * dx > cutoff {
                break;
            }
            let v = squared(p, q);
            if v <= cutoff {
                heap.push(Ordered(v));
                if heap.len() > want {
                    heap.pop();
                }
                if heap.len() == want {
                    cutoff = cutoff.min(heap.peek().expect("heap is full").0);
                }
            }
        }
    }
    heap.into_iter().map(|o| o.0).collect()
}

#[derive(PartialEq)]
struct Ordered(f64);

impl Eq for Ordered {}

impl PartialOrd for Ordered {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordered {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Filter width in pixels for one projection: the median of the shortest
/// pairwise distances, converted to pixel units and weighted by `s`.
/// Falls back to one pixel when that median is zero.
pub fn estimate_sigma(projected: &Dataset, s: f64, rng: &mut Rng) -> Result<f64> {
    let m = projected.len();
    if m < 2 {
        return Err(Error::InsufficientData(format!(
            "filter width needs two points, got {m}"
        )));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidInput(format!("scale factor must be positive, got {s}")));
    }
    let sample: Vec<usize> = if m > SIGMA_SUBSAMPLE {
        let mut idx = index::sample(rng, m, SIGMA_SUBSAMPLE).into_vec();
        idx.sort_unstable();
        idx
    } else {
        (0..m).collect()
    };

    let pts: Vec<&[f64]> = sample.iter().map(|&i| projected.row(i)).collect();
    let mut dists = shortest_squared(&pts, SIGMA_MAX_PAIRS);
    // Select on squared distances; the root is monotone.
    let keep = dists.len().min(SIGMA_MAX_PAIRS);
    if keep < dists.len() {
        dists.select_nth_unstable_by(keep - 1, f64::total_cmp);
        dists.truncate(keep);
    }
    dists.iter_mut().for_each(|v| *v = v.sqrt());
    dists.sort_unstable_by(f64::total_cmp);
    let median = if keep % 2 == 1 {
        dists[keep / 2]
    } else {
        0.5 * (dists[keep / 2 - 1] + dists[keep / 2])
    };
    if median > 0.0 {
        Ok(median * PIXELS_PER_UNIT * s)
    } else {
        Ok(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::from_seed;
    use rand::Rng as _;

    #[test]
    fn two_points_give_their_distance_in_pixels() {
        let x = Dataset::from_rows(&[[0.0, 0.0], [0.03, 0.0]]).unwrap();
        let sigma = estimate_sigma(&x, 1.0, &mut from_seed(0)).unwrap();
        assert!((sigma - 3.0).abs() < 1e-12);
    }

    #[test]
    fn coincident_points_fall_back_to_one_pixel() {
        let x = Dataset::from_rows(&[[0.2, 0.1]; 10]).unwrap();
        assert_eq!(estimate_sigma(&x, 1.25, &mut from_seed(0)).unwrap(), 1.0);
    }

    #[test]
    fn linear_in_scale_factor() {
        let mut rng = from_seed(4);
        let values: Vec<f64> = (0..1400).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = Dataset::new(values, 700, 2).unwrap();
        let one = estimate_sigma(&x, 1.0, &mut from_seed(5)).unwrap();
        let two = estimate_sigma(&x, 2.0, &mut from_seed(5)).unwrap();
        assert!((two - 2.0 * one).abs() < 1e-12);
    }

    #[test]
    fn median_of_shortest_thousand_pairs() {
        // 60 points -> 1770 pairs; brute-force the median of the 1000 smallest.
        let mut rng = from_seed(6);
        let values: Vec<f64> = (0..180).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = Dataset::new(values, 60, 3).unwrap();
        let mut all = Vec::new();
        for i in 0..60 {
            for j in i + 1..60 {
                let d: f64 = x.row(i).iter().zip(x.row(j)).map(|(a, b)| (a - b).powi(2)).sum();
                all.push(d.sqrt());
            }
        }
        all.sort_by(f64::total_cmp);
        let want = 0.5 * (all[499] + all[500]) * 100.0;
        let got = estimate_sigma(&x, 1.0, &mut from_seed(0)).unwrap();
        assert!((got - want).abs() < 1e-9);
    }

    #[test]
    fn errors_on_single_point() {
        let x = Dataset::from_rows(&[[0.0, 0.0]]).unwrap();
        assert!(matches!(
            estimate_sigma(&x, 1.0, &mut from_seed(0)),
            Err(Error::InsufficientData(_))
        ));
    }
}
