//! Lloyd's k-means with k-means++ seeding, the comparison baseline.

use rand::{Rng as _, RngCore};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::rng::{self, Rng};

pub const DEFAULT_RESTARTS: usize = 10;
pub const DEFAULT_MAX_ITER: usize = 300;

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansResult {
    /// Cluster of each point, `1..=n_c`.
    pub labels: Vec<usize>,
    pub centers: Vec<Vec<f64>>,
    /// Sum of squared distances to the assigned centers.
    pub inertia: f64,
    pub iterations: usize,
    /// Inertia after every assignment step of the winning restart.
    pub inertia_trace: Vec<f64>,
}

/// Best of `restarts` independent Lloyd runs. Ties in inertia go to the
/// earlier restart.
pub fn kmeans(x: &Dataset, n_c: usize, restarts: usize, max_iter: usize, rng: &mut Rng) -> Result<KMeansResult> {
    if n_c == 0 {
        return Err(Error::InvalidInput("k-means needs at least one cluster".into()));
    }
    if n_c > x.len() {
        return Err(Error::Infeasible(format!("{n_c} clusters for {} points", x.len())));
    }
    if restarts == 0 {
        return Err(Error::InvalidInput("k-means needs at least one restart".into()));
    }
    let seeds: Vec<u64> = (0..restarts).map(|_| rng.next_u64()).collect();
    let mut best: Option<KMeansResult> = None;
    for seed in seeds {
        let run = lloyd(x, n_c, max_iter, &mut rng::from_seed(seed));
        if best.as_ref().is_none_or(|b| run.inertia < b.inertia) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one restart"))
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn plus_plus(x: &Dataset, n_c: usize, rng: &mut Rng) -> Vec<Vec<f64>> {
    let m = x.len();
    let mut centers = vec![x.row(rng.gen_range(0..m)).to_vec()];
    let mut nearest: Vec<f64> = x.rows().map(|r| sq_dist(r, &centers[0])).collect();
    while centers.len() < n_c {
        let total: f64 = nearest.iter().sum();
        let pick = if total > 0.0 {
            let mut target = rng.gen::<f64>() * total;
            let mut chosen = m - 1;
            for (i, &w) in nearest.iter().enumerate() {
                if target < w {
                    chosen = i;
                    break;
                }
                target -= w;
            }
            chosen
        } else {
            rng.gen_range(0..m)
        };
        let c = x.row(pick).to_vec();
        for (n, r) in nearest.iter_mut().zip(x.rows()) {
            *n = n.min(sq_dist(r, &c));
        }
        centers.push(c);
    }
    centers
}

fn lloyd(x: &Dataset, n_c: usize, max_iter: usize, rng: &mut Rng) -> KMeansResult {
    let (m, d) = (x.len(), x.dims());
    let mut centers = plus_plus(x, n_c, rng);
    let mut assign = vec![usize::MAX; m];
    let mut dist = vec![0.0; m];
    let mut trace = Vec::new();
    let mut iterations = 0;

    loop {
        let mut changed = false;
        for (i, row) in x.rows().enumerate() {
            let (c, dd) = centers
                .iter()
                .enumerate()
                .map(|(c, ctr)| (c, sq_dist(row, ctr)))
                .fold((0, f64::INFINITY), |acc, cur| if cur.1 < acc.1 { cur } else { acc });
            if assign[i] != c {
                assign[i] = c;
                changed = true;
            }
            dist[i] = dd;
        }
        trace.push(dist.iter().sum());
        if !changed || iterations >= max_iter {
            break;
        }
        iterations += 1;

        let mut sums = vec![vec![0.0; d]; n_c];
        let mut counts = vec![0usize; n_c];
        for (row, &c) in x.rows().zip(&assign) {
            counts[c] += 1;
            for (s, v) in sums[c].iter_mut().zip(row) {
                *s += v;
            }
        }
        for c in 0..n_c {
            if counts[c] > 0 {
                centers[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            } else {
                // Move the empty center onto the worst-served point.
                let far = (0..m).fold(0, |b, i| if dist[i] > dist[b] { i } else { b });
                centers[c] = x.row(far).to_vec();
                dist[far] = 0.0;
            }
        }
    }

    KMeansResult {
        labels: assign.iter().map(|c| c + 1).collect(),
        centers,
        inertia: *trace.last().expect("one assignment step"),
        iterations,
        inertia_trace: trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::gen_blobs;
    use crate::projections::total_variance;
    use crate::rng::from_seed;

    #[test]
    fn one_center_per_point() {
        let x = Dataset::from_rows(&[[0.0, 0.0], [1.0, 0.0], [0.0, 3.0], [5.0, 5.0]]).unwrap();
        let r = kmeans(&x, 4, 3, 100, &mut from_seed(1)).unwrap();
        assert_eq!(r.inertia, 0.0);
        let mut l = r.labels.clone();
        l.sort();
        assert_eq!(l, vec![1, 2, 3, 4]);
    }

    #[test]
    fn single_cluster_is_the_mean() {
        let blobs = gen_blobs(90, 3, 3, 0.2, &mut from_seed(2)).unwrap();
        let x = &blobs.data;
        let r = kmeans(x, 1, 2, 100, &mut from_seed(3)).unwrap();
        for j in 0..3 {
            let mean = x.column(j).sum::<f64>() / 90.0;
            assert!((r.centers[0][j] - mean).abs() < 1e-12);
        }
        let want = 89.0 * total_variance(x).unwrap();
        assert!((r.inertia - want).abs() < 1e-9 * want.max(1.0));
    }

    #[test]
    fn inertia_never_increases() {
        let blobs = gen_blobs(400, 4, 5, 0.6, &mut from_seed(4)).unwrap();
        let r = kmeans(&blobs.data, 5, 5, 300, &mut from_seed(5)).unwrap();
        for w in r.inertia_trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-9);
        }
    }

    #[test]
    fn points_sit_with_their_nearest_center() {
        let blobs = gen_blobs(300, 2, 3, 0.3, &mut from_seed(6)).unwrap();
        let r = kmeans(&blobs.data, 3, 4, 300, &mut from_seed(7)).unwrap();
        for (row, &l) in blobs.data.rows().zip(&r.labels) {
            let own = sq_dist(row, &r.centers[l - 1]);
            assert!(r.centers.iter().all(|c| own <= sq_dist(row, c) + 1e-9));
        }
    }

    #[test]
    fn too_many_clusters_is_infeasible() {
        let x = Dataset::from_rows(&[[0.0], [1.0]]).unwrap();
        assert!(matches!(kmeans(&x, 3, 1, 10, &mut from_seed(0)), Err(Error::Infeasible(_))));
    }
}
