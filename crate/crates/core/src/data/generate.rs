//! Synthetic benchmark data.

use rand::Rng as _;
use rand_distr::{Distribution, Normal, StandardNormal};

use super::Dataset;
use crate::error::{Error, Result};
use crate::rng::Rng;

/// Distance between a new blob center and the center it is attached to.
pub const BLOB_CENTER_SPACING: f64 = 2.5;

const MAX_PLACEMENT_ATTEMPTS: usize = 100_000;

/// Blob data together with the centers it was drawn around.
#[derive(Debug, Clone)]
pub struct BlobSet {
    pub data: Dataset,
    pub centers: Vec<Vec<f64>>,
}

/// Isotropic Gaussian blobs. The first center sits at the origin; every later
/// center is exactly [`BLOB_CENTER_SPACING`] from a randomly chosen earlier
/// center and at least that far from all of them. Points are grouped by
/// cluster; label `i` means "drawn around center `i`" (1-based).
pub fn gen_blobs(m: usize, d: usize, n_c: usize, std: f64, rng: &mut Rng) -> Result<BlobSet> {
    if n_c == 0 || d == 0 {
        return Err(Error::InvalidInput("blobs need n_c >= 1 and d >= 1".into()));
    }
    if m < n_c {
        return Err(Error::Infeasible(format!("{m} points cannot fill {n_c} clusters")));
    }
    let noise = normal(std)?;

    let mut centers: Vec<Vec<f64>> = vec![vec![0.0; d]];
    while centers.len() < n_c {
        let mut placed = false;
        for _ in 0..MAX_PLACEMENT_ATTEMPTS {
            let anchor = &centers[rng.gen_range(0..centers.len())];
            let dir = unit_vector(d, rng);
            let candidate: Vec<f64> = anchor
                .iter()
                .zip(&dir)
                .map(|(a, u)| a + BLOB_CENTER_SPACING * u)
                .collect();
            let clear = centers
                .iter()
                .all(|c| distance(c, &candidate) >= BLOB_CENTER_SPACING - 1e-12);
            if clear {
                centers.push(candidate);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::Generation(format!(
                "could not place center {} after {MAX_PLACEMENT_ATTEMPTS} attempts",
                centers.len() + 1
            )));
        }
    }

    let mut values = Vec::with_capacity(m * d);
    let mut labels = Vec::with_capacity(m);
    for (i, center) in centers.iter().enumerate() {
        let size = m / n_c + usize::from(i < m % n_c);
        for _ in 0..size {
            values.extend(center.iter().map(|c| c + noise.sample(rng)));
            labels.push(i as i64 + 1);
        }
    }
    let data = Dataset::new(values, m, d)?.with_labels(labels)?;
    Ok(BlobSet { data, centers })
}

/// Append `new_d - d` columns drawn uniformly between the smallest and the
/// largest entry of the whole matrix.
pub fn pad_dimensions(x: &Dataset, new_d: usize, rng: &mut Rng) -> Result<Dataset> {
    let d = x.dims();
    if new_d <= d {
        return Err(Error::InvalidInput(format!(
            "padding must grow the dimension: {new_d} <= {d}"
        )));
    }
    let lo = x.values().iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = x.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut values = Vec::with_capacity(x.len() * new_d);
    for row in x.rows() {
        values.extend_from_slice(row);
        for _ in d..new_d {
            let u: f64 = rng.gen();
            values.push((lo + (hi - lo) * u).clamp(lo, hi));
        }
    }
    x.replace_values(values, new_d)
}

/// Two concentric circles of radius 1 (label 1) and 0.5 (label 2).
pub fn gen_circles(m: usize, noise_std: f64, rng: &mut Rng) -> Result<Dataset> {
    check_two_class(m)?;
    let noise = normal(noise_std)?;
    let n_out = m / 2;
    let n_in = m - n_out;
    let mut rows = Vec::with_capacity(m);
    let mut labels = Vec::with_capacity(m);
    for (count, radius, label) in [(n_out, 1.0, 1), (n_in, 0.5, 2)] {
        for i in 0..count {
            let t = 2.0 * std::f64::consts::PI * i as f64 / count as f64;
            rows.push([radius * t.cos(), radius * t.sin()]);
            labels.push(label);
        }
    }
    jitter(rows, labels, &noise, rng)
}

/// Two interleaved half circles: the upper one centered at the origin
/// (label 1), the lower one shifted by `(1, 0.5)` and flipped (label 2).
pub fn gen_moons(m: usize, noise_std: f64, rng: &mut Rng) -> Result<Dataset> {
    check_two_class(m)?;
    let noise = normal(noise_std)?;
    let n_out = m / 2;
    let n_in = m - n_out;
    let mut rows = Vec::with_capacity(m);
    let mut labels = Vec::with_capacity(m);
    for i in 0..n_out {
        let t = std::f64::consts::PI * i as f64 / (n_out.max(2) - 1) as f64;
        rows.push([t.cos(), t.sin()]);
        labels.push(1);
    }
    for i in 0..n_in {
        let t = std::f64::consts::PI * i as f64 / (n_in.max(2) - 1) as f64;
        rows.push([1.0 - t.cos(), 0.5 - t.sin()]);
        labels.push(2);
    }
    jitter(rows, labels, &noise, rng)
}

/// One isotropic Gaussian at the origin; every label is 1.
pub fn gen_single_gaussian(m: usize, d: usize, std: f64, rng: &mut Rng) -> Result<Dataset> {
    if m < 2 || d == 0 {
        return Err(Error::InvalidInput("need m >= 2 and d >= 1".into()));
    }
    let noise = normal(std)?;
    let values = (0..m * d).map(|_| noise.sample(rng)).collect();
    Dataset::new(values, m, d)?.with_labels(vec![1; m])
}

fn check_two_class(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidInput("need at least two points".into()));
    }
    Ok(())
}

fn normal(std: f64) -> Result<Normal<f64>> {
    if !(std >= 0.0 && std.is_finite()) {
        return Err(Error::InvalidInput(format!("invalid standard deviation {std}")));
    }
    Ok(Normal::new(0.0, std).expect("validated standard deviation"))
}

fn jitter(rows: Vec<[f64; 2]>, labels: Vec<i64>, noise: &Normal<f64>, rng: &mut Rng) -> Result<Dataset> {
    let m = rows.len();
    let values = rows
        .into_iter()
        .flat_map(|r| r.into_iter())
        .map(|v| v + noise.sample(rng))
        .collect();
    Dataset::new(values, m, 2)?.with_labels(labels)
}

fn unit_vector(d: usize, rng: &mut Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
