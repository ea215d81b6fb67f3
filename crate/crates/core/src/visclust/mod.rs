//! The projection search.
//!
//! Each iteration projects the scaled data with one basis, turns the
//! projection into a smoothed binary image and counts the connected
//! components. The first projection whose component count equals the target
//! and whose cluster sizes are close enough to the requested division wins.

mod adapt;
mod backfill;
mod config;
mod outliers;

pub use adapt::{adapt_scale, Outcome, ADAPT_MAJORITY, ADAPT_WINDOW, SCALE_MAX, SCALE_MIN};
pub use backfill::backfill;
pub use config::{check_division, ProjectionSource, VisClustConfig, DIVISION_TOLERANCE};
pub use outliers::{outlier_mask, OUTLIER_SIGMAS};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;

use crate::data::{scale_minmax, Dataset};
use crate::error::{Error, Result};
use crate::imaging::{
    assign_points, estimate_sigma, gaussian_filter, label_components, min_component_size, quantize,
    rasterize, threshold_mean,
};
use crate::projections::{project, ProjectionBasis, ProjectionSet};
use crate::rng::{stream, Purpose};

/// How a partition was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// A single projection met both the count and the division.
    Satisfied,
    /// Nothing met the division; the labels are the closest candidate.
    DivisionNotSatisfied,
    /// Obtained by peeling off one cluster at a time.
    FallbackBinary,
    /// The cluster count was chosen from the data.
    AutoCount,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Satisfied => "satisfied",
            Status::DivisionNotSatisfied => "division-not-satisfied",
            Status::FallbackBinary => "fallback-binary",
            Status::AutoCount => "auto-count",
        }
    }

    /// Whether the run produced a partition that met its target.
    pub fn is_success(self) -> bool {
        self != Status::DivisionNotSatisfied
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Status::Satisfied,
            Status::DivisionNotSatisfied,
            Status::FallbackBinary,
            Status::AutoCount,
        ]
        .into_iter()
        .find(|st| st.as_str() == s)
        .ok_or_else(|| Error::InvalidInput(format!("unknown status {s:?}")))
    }
}

/// Output of a clustering run.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    /// One label per point, drawn from `1..=n_clusters()`.
    pub labels: Vec<usize>,
    /// Fraction of points carrying each label.
    pub division: Vec<f64>,
    pub status: Status,
    pub iterations_used: usize,
    pub k_used: usize,
    pub final_scale: f64,
}

impl Partition {
    fn from_labels(labels: Vec<usize>, status: Status, iterations_used: usize, k_used: usize, final_scale: f64) -> Self {
        let division = division_of(&labels);
        Partition {
            labels,
            division,
            status,
            iterations_used,
            k_used,
            final_scale,
        }
    }

    pub fn n_clusters(&self) -> usize {
        self.division.len()
    }

    /// L1 distance between the realized and the given division.
    pub fn division_error(&self, eta: &[f64]) -> f64 {
        l1(&self.division, eta)
    }

    /// Flat `key=value` lines.
    pub fn report(&self) -> String {
        let division: Vec<String> = self.division.iter().map(|v| format!("{v}")).collect();
        format!(
            "status={}\nn_clusters={}\niterations_used={}\nk_used={}\nfinal_s={}\ndivision={}\n",
            self.status,
            self.n_clusters(),
            self.iterations_used,
            self.k_used,
            self.final_scale,
            division.join(",")
        )
    }
}

fn division_of(labels: &[usize]) -> Vec<f64> {
    let n = labels.iter().copied().max().unwrap_or(0);
    let mut sizes = vec![0usize; n];
    for &l in labels {
        sizes[l - 1] += 1;
    }
    sizes.iter().map(|&c| c as f64 / labels.len() as f64).collect()
}

fn l1(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0)).abs())
        .sum()
}

/// Cluster `x` into `cfg.n_clusters` groups.
pub fn cluster(x: &Dataset, cfg: &VisClustConfig) -> Result<Partition> {
    let n_c = cfg
        .n_clusters
        .ok_or_else(|| Error::InvalidInput("a cluster count is required; use auto_cluster_count otherwise".into()))?;
    let eta = prepare(x, cfg, n_c)?;
    if n_c == 1 {
        return Ok(Partition::from_labels(vec![1; x.len()], Status::Satisfied, 0, 2, cfg.scale));
    }
    let problem = Problem::new(x, &cfg.projections, cfg)?;
    let main = problem.search(n_c, &eta, cfg)?;
    if main.status.is_success() {
        return Ok(main);
    }
    // With two clusters the binary fallback would replay the same search.
    if n_c > 2 {
        let fallback = recursive(x, &cfg.projections, n_c, &eta, cfg)?;
        if fallback.status.is_success() {
            return Ok(Partition {
                iterations_used: fallback.iterations_used + main.iterations_used,
                ..fallback
            });
        }
        return Ok(Partition {
            iterations_used: main.iterations_used + fallback.iterations_used,
            ..main
        });
    }
    Ok(main)
}

/// Peel off the presumed smallest cluster with a two-way run, then recurse
/// on the remaining points with the rest of the division.
pub fn recursive_binary(x: &Dataset, cfg: &VisClustConfig) -> Result<Partition> {
    let n_c = cfg
        .n_clusters
        .ok_or_else(|| Error::InvalidInput("a cluster count is required".into()))?;
    let eta = prepare(x, cfg, n_c)?;
    if n_c < 2 {
        return Err(Error::InvalidInput("binary recursion needs at least two clusters".into()));
    }
    recursive(x, &cfg.projections, n_c, &eta, cfg)
}

/// Choose the cluster count as the most frequent component count over a
/// scan of two-dimensional projections (ties go to the smaller count), then
/// cluster with it.
pub fn auto_cluster_count(x: &Dataset, cfg: &VisClustConfig) -> Result<Partition> {
    if x.len() < 2 {
        return Err(Error::InsufficientData(format!("need two points, got {}", x.len())));
    }
    cfg.validate(x.len())?;
    let problem = Problem::new(x, &cfg.projections, cfg)?;
    let counts = problem.scan_counts(cfg.auto_scans, cfg.scale)?;
    let n_c = mode_of_counts(&counts).ok_or(Error::NoStructure)?;
    let scans = counts.len();
    if n_c == 1 {
        return Ok(Partition::from_labels(vec![1; x.len()], Status::AutoCount, scans, problem.first_k(), cfg.scale));
    }
    let mut inner = cfg.clone();
    inner.n_clusters = Some(n_c);
    if inner.division.as_ref().is_some_and(|d| d.len() != n_c) {
        inner.division = None;
    }
    let p = cluster(x, &inner)?;
    let status = if p.status.is_success() { Status::AutoCount } else { p.status };
    Ok(Partition {
        status,
        iterations_used: p.iterations_used + scans,
        ..p
    })
}

/// Most frequent positive count, smaller count on ties.
pub fn mode_of_counts(counts: &[usize]) -> Option<usize> {
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in counts.iter().filter(|&&c| c > 0) {
        *freq.entry(c).or_default() += 1;
    }
    let top = freq.values().copied().max()?;
    freq.into_iter().find(|&(_, f)| f == top).map(|(c, _)| c)
}

fn prepare(x: &Dataset, cfg: &VisClustConfig, n_c: usize) -> Result<Vec<f64>> {
    if x.is_empty() {
        return Err(Error::InvalidInput("empty dataset".into()));
    }
    if n_c == 0 {
        return Err(Error::InvalidInput("cluster count must be at least 1".into()));
    }
    if n_c > x.len() {
        return Err(Error::Infeasible(format!("{n_c} clusters requested from {} points", x.len())));
    }
    cfg.validate(x.len())?;
    cfg.division_for(n_c)
}

fn recursive(x: &Dataset, source: &ProjectionSource, n_c: usize, eta: &[f64], cfg: &VisClustConfig) -> Result<Partition> {
    let m = x.len();
    let mut labels = vec![0usize; m];
    let mut remaining: Vec<usize> = (0..m).collect();
    let mut open: Vec<usize> = (0..n_c).collect();
    let mut iterations = 0;
    let mut k_used = 2;
    let mut final_scale = cfg.scale;
    let mut failed = false;

    while open.len() > 1 {
        let mass: f64 = open.iter().map(|&j| eta[j]).sum();
        // Smallest remaining share; the lowest index on ties.
        let small = *open
            .iter()
            .min_by(|&&a, &&b| eta[a].total_cmp(&eta[b]).then(a.cmp(&b)))
            .expect("open is nonempty");
        let share = if mass > 0.0 { eta[small] / mass } else { 0.5 };
        let level_eta = [share, 1.0 - share];

        if remaining.len() < 2 {
            failed = true;
            break;
        }
        let sub = x.select(&remaining)?;
        let sub_source = match source {
            ProjectionSource::Embedding(e) => ProjectionSource::Embedding(e.select(&remaining)?),
            other => other.clone(),
        };
        let problem = Problem::new(&sub, &sub_source, cfg)?;
        let level = problem.search(2, &level_eta, cfg)?;
        iterations += level.iterations_used;
        k_used = level.k_used;
        final_scale = level.final_scale;
        if !level.status.is_success() {
            failed = true;
            break;
        }
        let mut rest = Vec::with_capacity(remaining.len());
        for (&i, &l) in remaining.iter().zip(&level.labels) {
            if l == 1 {
                labels[i] = small + 1;
            } else {
                rest.push(i);
            }
        }
        remaining = rest;
        open.retain(|&j| j != small);
    }
    let last = if failed {
        // Everything not yet peeled off stays together.
        open.iter().copied().min().expect("open is nonempty") + 1
    } else {
        open[0] + 1
    };
    for &i in &remaining {
        labels[i] = last;
    }
    let status = if failed { Status::DivisionNotSatisfied } else { Status::FallbackBinary };
    let labels = if failed { compress_labels(&labels) } else { labels };
    Ok(Partition::from_labels(labels, status, iterations, k_used, final_scale))
}

/// Renumber labels to `1..=n` keeping their relative order.
fn compress_labels(labels: &[usize]) -> Vec<usize> {
    let used: BTreeMap<usize, usize> = labels
        .iter()
        .copied()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, l)| (l, i + 1))
        .collect();
    labels.iter().map(|l| used[l]).collect()
}

/// Where the iteration-`l` view comes from.
enum View<'a> {
    Random { d: usize },
    Given(&'a ProjectionSet),
    Embedding { k: usize },
}

/// Per-run state shared by all iterations.
struct Problem<'a> {
    x: Dataset,
    view: View<'a>,
    /// Rows fed into the image stage (inliers, possibly subsampled).
    active: Vec<usize>,
    /// Coordinates the views act on, restricted to `active`.
    source: Dataset,
    seed: u64,
    phases: Vec<(usize, usize)>,
}

/// Components found by one projection.
struct Found {
    /// Per active point: component number in `0..count`.
    assign: Vec<Option<usize>>,
    count: usize,
}

impl<'a> Problem<'a> {
    fn new(x: &Dataset, source: &'a ProjectionSource, cfg: &VisClustConfig) -> Result<Self> {
        let m = x.len();
        let d = x.dims();
        let x = scale_minmax(x);
        let mask = outlier_mask(&x);
        let mut active: Vec<usize> = (0..m).filter(|&i| !mask[i]).collect();
        if let Some(u) = cfg.subsample {
            if u < active.len() {
                let mut rng = stream(cfg.seed, Purpose::Subsample, 0);
                let mut pick = index::sample(&mut rng, active.len(), u).into_vec();
                pick.sort_unstable();
                active = pick.into_iter().map(|i| active[i]).collect();
            }
        }
        if active.len() < 2 {
            active = (0..m).collect();
        }

        let (view, coords, phases) = match source {
            ProjectionSource::Random => {
                if d < 2 {
                    return Err(Error::InvalidDimension(
                        "random projections need at least two features".into(),
                    ));
                }
                let mut phases = vec![(2, cfg.max_projections_2d)];
                if d >= 3 {
                    phases.push((3, cfg.max_projections_3d));
                }
                (View::Random { d }, x.clone(), phases)
            }
            ProjectionSource::Given(set) => {
                if set.d() != d {
                    return Err(Error::InvalidDimension(format!(
                        "projections act on {} features, data has {d}",
                        set.d()
                    )));
                }
                (View::Given(set), x.clone(), vec![(set.k(), set.len())])
            }
            ProjectionSource::Embedding(e) => {
                let k = e.dims();
                let budget = if k == 2 { cfg.max_projections_2d } else { cfg.max_projections_3d };
                (View::Embedding { k }, scale_minmax(e), vec![(k, budget)])
            }
        };
        let source = coords.select(&active)?;
        Ok(Problem {
            x,
            view,
            active,
            source,
            seed: cfg.seed,
            phases,
        })
    }

    fn first_k(&self) -> usize {
        self.phases[0].0
    }

    fn basis(&self, k: usize, l: usize) -> Result<ProjectionBasis> {
        match &self.view {
            View::Random { d } => ProjectionSet::nth(self.seed, k, *d, l),
            View::Given(set) => Ok(set.bases()[l].clone()),
            View::Embedding { k } if l == 0 => ProjectionBasis::coordinate(*k, *k),
            View::Embedding { k } => ProjectionSet::nth(self.seed, *k, *k, l),
        }
    }

    /// Image pipeline for projection `l` of dimension `k` at scale `s`.
    fn components(&self, k: usize, l: usize, s: f64) -> Result<Found> {
        let q = self.basis(k, l)?;
        let y = project(&q, &self.source)?;
        let mut rng = stream(self.seed, Purpose::Sigma, ((k as u64) << 40) | l as u64);
        // The median distance is scaled down by the data dimension before s weights it.
        let weight = s / self.source.dims() as f64;
        let sigma = estimate_sigma(&y, weight, &mut rng)?;
        let img = rasterize(&quantize(&y)?);
        let min_size = min_component_size(sigma, k);
        if min_size >= img.shape().len() {
            // No component can be larger than the whole image.
            return Ok(Found {
                assign: vec![None; self.active.len()],
                count: 0,
            });
        }
        let smooth = threshold_mean(&gaussian_filter(&img, sigma));
        let cc = label_components(&smooth, min_size);
        let raw = assign_points(&cc, &img)?;

        // Keep only components that own a point, in component order.
        let mut owned = vec![false; cc.count() + 1];
        for &c in raw.iter().flatten() {
            owned[c] = true;
        }
        let mut renumber = vec![usize::MAX; owned.len()];
        let mut count = 0;
        for (c, &o) in owned.iter().enumerate() {
            if o {
                renumber[c] = count;
                count += 1;
            }
        }
        let assign = raw.into_iter().map(|c| c.map(|c| renumber[c])).collect();
        Ok(Found { assign, count })
    }

    /// Labels for all points from one projection's components. With
    /// `n_c` components the labels are matched to `eta` by size rank;
    /// otherwise they are ranked by size.
    fn complete(&self, found: &Found, eta: &[f64]) -> Result<Vec<usize>> {
        let m = self.x.len();
        if found.count == 0 {
            return Ok(vec![1; m]);
        }
        let mut partial = vec![None; m];
        for (&i, &c) in self.active.iter().zip(&found.assign) {
            partial[i] = c;
        }
        let comp = backfill(&self.x, &partial)?;
        let mut sizes = vec![0usize; found.count];
        for &c in &comp {
            sizes[c] += 1;
        }
        let mut by_size: Vec<usize> = (0..found.count).collect();
        by_size.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));
        let mut target: Vec<usize> = (0..found.count).collect();
        if found.count == eta.len() {
            target.sort_by(|&a, &b| eta[b].total_cmp(&eta[a]).then(a.cmp(&b)));
        }
        let mut label_of = vec![0usize; found.count];
        for (&c, &t) in by_size.iter().zip(&target) {
            label_of[c] = t + 1;
        }
        Ok(comp.into_iter().map(|c| label_of[c]).collect())
    }

    fn search(&self, n_c: usize, eta: &[f64], cfg: &VisClustConfig) -> Result<Partition> {
        let mut s = cfg.scale;
        let mut history = Vec::with_capacity(ADAPT_WINDOW);
        let mut iterations = 0;
        // Best projection with the right count: (error, labels, k).
        let mut best_match: Option<(f64, Vec<usize>, usize)> = None;
        // Otherwise the projection whose count is closest: (gap, k, l, s).
        let mut best_miss: Option<(usize, usize, usize, f64)> = None;

        for &(k, budget) in &self.phases {
            for l in 0..budget {
                iterations += 1;
                let found = self.components(k, l, s)?;
                history.push(Outcome::classify(found.count, n_c));
                if found.count == n_c {
                    let labels = self.complete(&found, eta)?;
                    let err = l1(&division_of(&labels), eta);
                    if err < cfg.threshold {
                        return Ok(Partition::from_labels(labels, Status::Satisfied, iterations, k, s));
                    }
                    if best_match.as_ref().is_none_or(|b| err < b.0) {
                        best_match = Some((err, labels, k));
                    }
                } else {
                    let gap = found.count.abs_diff(n_c);
                    if best_miss.is_none_or(|b| gap < b.0) {
                        best_miss = Some((gap, k, l, s));
                    }
                }
                if history.len() == ADAPT_WINDOW {
                    s = adapt_scale(&history, s);
                    history.clear();
                }
            }
        }

        let (labels, k) = match (best_match, best_miss) {
            (Some((_, labels, k)), _) => (labels, k),
            (None, Some((_, k, l, s_then))) => {
                let found = self.components(k, l, s_then)?;
                (self.complete(&found, eta)?, k)
            }
            (None, None) => (vec![1; self.x.len()], self.first_k()),
        };
        Ok(Partition::from_labels(labels, Status::DivisionNotSatisfied, iterations, k, s))
    }

    /// Component counts of the first `scans` views of the first dimension.
    fn scan_counts(&self, scans: usize, s: f64) -> Result<Vec<usize>> {
        let (k, budget) = self.phases[0];
        (0..scans.min(budget)).map(|l| Ok(self.components(k, l, s)?.count)).collect()
    }
}
