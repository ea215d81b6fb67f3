//! Random orthonormal projection bases, their application to data, total
//! variance, and a Monte-Carlo covering-radius estimate.

use rand_distr::{Distribution, StandardNormal};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::qr::thin_q;
use crate::rng::{self, Purpose, Rng};

/// Tolerance used when validating user-supplied bases.
const ORTHONORMAL_TOL: f64 = 1e-8;

/// A `k x d` matrix `q` with orthonormal rows. The induced orthogonal
/// projector onto its row space is `p = q^T q`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionBasis {
    k: usize,
    d: usize,
    q: Vec<f64>,
}

impl ProjectionBasis {
    /// Wrap a row-major `k x d` matrix, checking `q q^T = I`.
    pub fn from_rows(k: usize, d: usize, q: Vec<f64>) -> Result<Self> {
        check_dims(k, d)?;
        if q.len() != k * d {
            return Err(Error::InvalidDimension(format!(
                "{} entries for a {k}x{d} basis",
                q.len()
            )));
        }
        let basis = ProjectionBasis { k, d, q };
        let dev = basis.orthonormality_defect();
        if dev.is_nan() || dev > ORTHONORMAL_TOL {
            return Err(Error::InvalidInput(format!(
                "rows are not orthonormal (deviation {dev:.3e})"
            )));
        }
        Ok(basis)
    }

    /// The first `k` coordinate axes of `R^d`.
    pub fn coordinate(k: usize, d: usize) -> Result<Self> {
        check_dims(k, d)?;
        let mut q = vec![0.0; k * d];
        for i in 0..k {
            q[i * d + i] = 1.0;
        }
        Ok(ProjectionBasis { k, d, q })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.q[i * self.d..(i + 1) * self.d]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.q
    }

    /// `q x` for a single point.
    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate().take(self.k) {
            *o = self.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    /// The `d x d` projector `q^T q`, row-major.
    pub fn projector(&self) -> Vec<f64> {
        let d = self.d;
        let mut p = vec![0.0; d * d];
        for r in 0..self.k {
            let row = self.row(r);
            for i in 0..d {
                for j in 0..d {
                    p[i * d + j] += row[i] * row[j];
                }
            }
        }
        p
    }

    /// Frobenius norm of `q q^T - I`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.k {
            for j in 0..self.k {
                let dot: f64 = self.row(i).iter().zip(self.row(j)).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                sum += (dot - target) * (dot - target);
            }
        }
        sum.sqrt()
    }
}

fn check_dims(k: usize, d: usize) -> Result<()> {
    if k == 0 || k > d {
        return Err(Error::InvalidDimension(format!(
            "target dimension {k} must satisfy 1 <= k <= d = {d}"
        )));
    }
    Ok(())
}

/// Draw a basis uniformly from the Stiefel manifold: orthonormalize a
/// `k x d` standard normal matrix by QR, with the triangular factor's
/// diagonal forced nonnegative so the result is a function of the draw.
pub fn sample_stiefel(k: usize, d: usize, rng: &mut Rng) -> Result<ProjectionBasis> {
    check_dims(k, d)?;
    // Row i of the k x d Gaussian matrix is column i of its d x k transpose.
    let gaussian: Vec<f64> = (0..k * d).map(|_| StandardNormal.sample(rng)).collect();
    let q = thin_q(gaussian, d, k);
    Ok(ProjectionBasis { k, d, q })
}

/// An ordered list of bases sharing `(k, d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionSet {
    k: usize,
    d: usize,
    seed: u64,
    bases: Vec<ProjectionBasis>,
}

impl ProjectionSet {
    /// `n` bases drawn from per-index streams of `seed`; basis `l` equals
    /// [`ProjectionSet::nth`]`(seed, k, d, l)`.
    pub fn sample(n: usize, k: usize, d: usize, seed: u64) -> Result<Self> {
        let bases = (0..n)
            .map(|l| Self::nth(seed, k, d, l))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProjectionSet { k, d, seed, bases })
    }

    /// The `l`-th basis of the seeded sequence, without drawing the others.
    pub fn nth(seed: u64, k: usize, d: usize, l: usize) -> Result<ProjectionBasis> {
        let index = ((k as u64) << 40) | l as u64;
        sample_stiefel(k, d, &mut rng::stream(seed, Purpose::Projection, index))
    }

    /// Wrap explicit bases. All must share one `(k, d)`.
    pub fn from_bases(bases: Vec<ProjectionBasis>, seed: u64) -> Result<Self> {
        let first = bases
            .first()
            .ok_or_else(|| Error::InvalidInput("projection set is empty".into()))?;
        let (k, d) = (first.k, first.d);
        if let Some(b) = bases.iter().find(|b| (b.k, b.d) != (k, d)) {
            return Err(Error::InvalidDimension(format!(
                "mixed shapes in projection set: {k}x{d} and {}x{}",
                b.k, b.d
            )));
        }
        Ok(ProjectionSet { k, d, seed, bases })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn bases(&self) -> &[ProjectionBasis] {
        &self.bases
    }

    /// Nested prefix of the first `n` bases.
    pub fn prefix(&self, n: usize) -> ProjectionSet {
        ProjectionSet {
            bases: self.bases[..n.min(self.bases.len())].to_vec(),
            ..*self
        }
    }
}

/// Map every point to `R^k` by `q x_i`.
pub fn project(q: &ProjectionBasis, x: &Dataset) -> Result<Dataset> {
    if x.dims() != q.d {
        return Err(Error::InvalidDimension(format!(
            "basis expects {} columns, data has {}",
            q.d,
            x.dims()
        )));
    }
    let mut values = vec![0.0; x.len() * q.k];
    for (row, out) in x.rows().zip(values.chunks_exact_mut(q.k)) {
        q.apply_into(row, out);
    }
    Dataset::new(values, x.len(), q.k)
}

/// Unbiased total variance `1/(m-1) * sum ||x_i - mean||^2`.
pub fn total_variance(x: &Dataset) -> Result<f64> {
    let m = x.len();
    if m < 2 {
        return Err(Error::InsufficientData(format!(
            "total variance needs two points, got {m}"
        )));
    }
    let d = x.dims();
    let mut mean = vec![0.0; d];
    for row in x.rows() {
        for (mu, v) in mean.iter_mut().zip(row) {
            *mu += v;
        }
    }
    mean.iter_mut().for_each(|mu| *mu /= m as f64);
    let ss: f64 = x
        .rows()
        .map(|row| row.iter().zip(&mean).map(|(v, mu)| (v - mu) * (v - mu)).sum::<f64>())
        .sum();
    Ok(ss / (m - 1) as f64)
}

/// Frobenius distance between the projectors of two bases of equal shape.
pub fn projector_distance(a: &ProjectionBasis, b: &ProjectionBasis) -> Result<f64> {
    if (a.k, a.d) != (b.k, b.d) {
        return Err(Error::InvalidDimension("bases have different shapes".into()));
    }
    Ok(frobenius_distance(&a.projector(), &b.projector()))
}

fn frobenius_distance(p: &[f64], r: &[f64]) -> f64 {
    p.iter().zip(r).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// Covering radius of `set`, with the supremum over all projectors replaced
/// by a maximum over `probes` uniformly drawn ones.
pub fn covering_radius_estimate(set: &ProjectionSet, probes: usize, rng: &mut Rng) -> Result<f64> {
    let probe_list = (0..probes)
        .map(|_| sample_stiefel(set.k, set.d, rng))
        .collect::<Result<Vec<_>>>()?;
    covering_radius_against(set, &probe_list)
}

/// Covering radius of `set` measured against an explicit probe list.
pub fn covering_radius_against(set: &ProjectionSet, probes: &[ProjectionBasis]) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::InvalidInput("projection set is empty".into()));
    }
    if probes.is_empty() {
        return Err(Error::InvalidInput("at least one probe is required".into()));
    }
    if let Some(b) = probes.iter().find(|b| (b.k, b.d) != (set.k, set.d)) {
        return Err(Error::InvalidDimension(format!(
            "probe is {}x{}, set is {}x{}",
            b.k, b.d, set.k, set.d
        )));
    }
    let members: Vec<Vec<f64>> = set.bases.iter().map(ProjectionBasis::projector).collect();
    let mut radius = 0.0f64;
    for probe in probes {
        let p = probe.projector();
        let nearest = members
            .iter()
            .map(|q| frobenius_distance(&p, q))
            .fold(f64::INFINITY, f64::min);
        radius = radius.max(nearest);
    }
    Ok(radius)
}
