use std::path::PathBuf;
use std::time::Instant;

use visclust::baselines::kmeans;
use visclust::data::{load_delimited, save_labels, ColumnRef, LoadOptions};
use visclust::metrics::MetricsReport;
use visclust::rng::{stream, Purpose};
use visclust::visclust::{auto_cluster_count, cluster, ProjectionSource, VisClustConfig};

use crate::args::{Algo, ClusterArgs, PlotProjection};
use crate::plot;
use crate::report::{join, Report};
use crate::Failure;

/// Tolerance on a division given on the command line.
const DIVISION_SUM_TOLERANCE: f64 = 1e-6;

struct Outcome {
    labels: Vec<usize>,
    status: String,
    success: bool,
    iterations: usize,
    k_used: String,
    final_s: String,
    division: Vec<f64>,
}

fn checked_division(a: &ClusterArgs) -> Result<Option<Vec<f64>>, Failure> {
    let Some(eta) = &a.division else {
        return Ok(None);
    };
    let Some(n_c) = a.clusters else {
        return Err(Failure::Usage("--division needs --clusters".into()));
    };
    if eta.len() as u64 != n_c {
        return Err(Failure::Usage(format!(
            "division length mismatch: {} entries for {n_c} clusters",
            eta.len()
        )));
    }
    if eta.iter().any(|&e| !(e >= 0.0 && e.is_finite())) {
        return Err(Failure::Usage("division entries must be nonnegative".into()));
    }
    let sum: f64 = eta.iter().sum();
    if (sum - 1.0).abs() > DIVISION_SUM_TOLERANCE {
        return Err(Failure::Usage(format!("division sums to {sum}, not 1")));
    }
    Ok(Some(eta.iter().map(|e| e / sum).collect()))
}

pub fn run(a: &ClusterArgs) -> Result<(), Failure> {
    let division = checked_division(a)?;
    if a.algo == Algo::Kmeans && a.clusters.is_none() {
        return Err(Failure::Usage("k-means needs --clusters".into()));
    }
    let options = LoadOptions {
        label_column: a.truth_column.as_deref().map(|c| c.parse::<ColumnRef>().expect("infallible")),
        ..Default::default()
    };
    let x = load_delimited(&a.input, &options)?;
    let embedding = match &a.embedding {
        Some(p) => Some(load_delimited(p, &LoadOptions::default())?),
        None => None,
    };
    let cfg = VisClustConfig {
        n_clusters: a.clusters.map(|c| c as usize),
        threshold: a.threshold,
        scale: a.scale,
        subsample: a.subsample,
        division,
        projections: match &embedding {
            Some(e) => ProjectionSource::Embedding(e.clone()),
            None => ProjectionSource::Random,
        },
        seed: a.seed.seed,
        max_projections_2d: a.projections_2d,
        max_projections_3d: a.projections_3d,
        ..VisClustConfig::default()
    };

    let start = Instant::now();
    let outcome = match a.algo {
        Algo::Visclust => {
            let p = match cfg.n_clusters {
                Some(_) => cluster(&x, &cfg)?,
                None => auto_cluster_count(&x, &cfg)?,
            };
            Outcome {
                success: p.status.is_success(),
                status: p.status.to_string(),
                iterations: p.iterations_used,
                k_used: p.k_used.to_string(),
                final_s: p.final_scale.to_string(),
                division: p.division.clone(),
                labels: p.labels,
            }
        }
        Algo::Kmeans => {
            let n_c = cfg.n_clusters.expect("checked above");
            let mut rng = stream(a.seed.seed, Purpose::KMeans, 0);
            let r = kmeans(&x, n_c, a.restarts, a.max_iter, &mut rng)?;
            let mut sizes = vec![0usize; n_c];
            for &l in &r.labels {
                sizes[l - 1] += 1;
            }
            Outcome {
                success: true,
                status: "satisfied".into(),
                iterations: r.iterations,
                k_used: "none".into(),
                final_s: "none".into(),
                division: sizes.iter().map(|&s| s as f64 / x.len() as f64).collect(),
                labels: r.labels,
            }
        }
    };
    let wall = start.elapsed().as_secs_f64();

    let output = a.output.clone().unwrap_or_else(|| {
        let mut p = a.input.clone().into_os_string();
        p.push(".labels");
        PathBuf::from(p)
    });
    save_labels(&output, &outcome.labels, None)?;
    if let Some(path) = &a.plot {
        let how = if embedding.is_some() {
            PlotProjection::Embedding
        } else if x.dims() <= 2 {
            PlotProjection::First2
        } else {
            PlotProjection::SeededRandom
        };
        let points = plot::coordinates(&x, how, a.seed.seed, embedding.as_ref())?;
        plot::write_svg(path, &points, &outcome.labels)?;
    }

    let mut r = Report::default();
    r.push("status", &outcome.status)
        .push("iterations_used", outcome.iterations)
        .push("k_used", &outcome.k_used)
        .push("final_s", &outcome.final_s)
        .push("wall_time_seconds", wall)
        .push("seed", a.seed.seed)
        .push("algo", a.algo.name())
        .push("input", a.input.display())
        .push("output", output.display())
        .push("m", x.len())
        .push("d", x.dims())
        .push(
            "n_clusters",
            cfg.n_clusters.map_or_else(|| format!("auto:{}", outcome.division.len()), |c| c.to_string()),
        )
        .push("threshold", cfg.threshold)
        .push("scale", cfg.scale)
        .push("subsample", cfg.subsample.unwrap_or(x.len()))
        .push(
            "division_requested",
            join(&cfg.division.clone().unwrap_or_else(|| {
                let n = outcome.division.len().max(1);
                vec![1.0 / n as f64; n]
            })),
        )
        .push("division_found", join(&outcome.division))
        .push("projections", if embedding.is_some() { "embedding" } else { "random" })
        .push("max_projections_2d", cfg.max_projections_2d)
        .push("max_projections_3d", cfg.max_projections_3d);
    if a.algo == Algo::Kmeans {
        r.push("restarts", a.restarts).push("max_iter", a.max_iter);
    }
    if let Some(truth) = x.labels() {
        r.metrics(&MetricsReport::evaluate(&outcome.labels, truth)?);
    }
    print!("{r}");
    if outcome.success {
        Ok(())
    } else {
        Err(Failure::Unsatisfied(String::new()))
    }
}
