use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::projections::ProjectionSet;

/// Tolerance on the division vector summing to one.
pub const DIVISION_TOLERANCE: f64 = 1e-9;

/// Where the low-dimensional views come from.
#[derive(Debug, Clone, Default)]
pub enum ProjectionSource {
    /// Fresh random orthonormal bases, k = 2 first and k = 3 after.
    #[default]
    Random,
    /// A fixed, user-supplied set, tried in order.
    Given(ProjectionSet),
    /// A precomputed m×k embedding (k = 2 or 3), viewed as-is and then
    /// under random rotations.
    Embedding(Dataset),
}

/// Parameters of a clustering run.
#[derive(Debug, Clone)]
pub struct VisClustConfig {
    /// Requested cluster count; `None` lets `auto_cluster_count` choose.
    pub n_clusters: Option<usize>,
    /// Largest accepted L1 gap between requested and realized division.
    pub threshold: f64,
    /// Initial weight on the filter width.
    pub scale: f64,
    /// Number of points pushed through the image stage; `None` means all.
    pub subsample: Option<usize>,
    /// Requested relative cluster sizes; `None` means uniform.
    pub division: Option<Vec<f64>>,
    pub projections: ProjectionSource,
    pub seed: u64,
    pub max_projections_2d: usize,
    pub max_projections_3d: usize,
    /// Projections scanned when the cluster count is chosen automatically.
    pub auto_scans: usize,
}

impl Default for VisClustConfig {
    fn default() -> Self {
        VisClustConfig {
            n_clusters: None,
            threshold: 0.1,
            scale: 1.25,
            subsample: None,
            division: None,
            projections: ProjectionSource::Random,
            seed: 0,
            max_projections_2d: 5000,
            max_projections_3d: 2000,
            auto_scans: 500,
        }
    }
}

impl VisClustConfig {
    pub fn new(n_clusters: usize) -> Self {
        VisClustConfig {
            n_clusters: Some(n_clusters),
            ..Default::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_division(mut self, division: Vec<f64>) -> Self {
        self.division = Some(division);
        self
    }

    /// The division to aim for with `n_c` clusters.
    pub fn division_for(&self, n_c: usize) -> Result<Vec<f64>> {
        match &self.division {
            None => Ok(vec![1.0 / n_c as f64; n_c]),
            Some(eta) => {
                check_division(eta, n_c)?;
                Ok(eta.clone())
            }
        }
    }

    /// Checks the scalar parameters against a dataset of `m` points.
    pub fn validate(&self, m: usize) -> Result<()> {
        if !(self.threshold > 0.0 && self.threshold.is_finite()) {
            return Err(Error::InvalidInput(format!("threshold must be positive, got {}", self.threshold)));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidInput(format!("scale must be positive, got {}", self.scale)));
        }
        if let Some(u) = self.subsample {
            if u == 0 || u > m {
                return Err(Error::InvalidInput(format!("subsample size {u} outside 1..={m}")));
            }
        }
        if let ProjectionSource::Embedding(e) = &self.projections {
            if e.len() != m {
                return Err(Error::InvalidInput(format!("embedding has {} rows for {m} points", e.len())));
            }
            if !(2..=3).contains(&e.dims()) {
                return Err(Error::InvalidDimension(format!(
                    "embedding must have 2 or 3 columns, got {}",
                    e.dims()
                )));
            }
        }
        if let ProjectionSource::Given(set) = &self.projections {
            if set.is_empty() {
                return Err(Error::InvalidInput("projection set is empty".into()));
            }
        }
        Ok(())
    }
}

/// A division must have `n_c` nonnegative entries summing to one.
pub fn check_division(eta: &[f64], n_c: usize) -> Result<()> {
    if eta.len() != n_c {
        return Err(Error::InvalidInput(format!(
            "division has {} entries for {n_c} clusters",
            eta.len()
        )));
    }
    if eta.iter().any(|&e| !(e >= 0.0 && e.is_finite())) {
        return Err(Error::InvalidInput("division entries must be nonnegative".into()));
    }
    let sum: f64 = eta.iter().sum();
    if (sum - 1.0).abs() > DIVISION_TOLERANCE {
        return Err(Error::InvalidInput(format!("division sums to {sum}, not 1")));
    }
    Ok(())
}
