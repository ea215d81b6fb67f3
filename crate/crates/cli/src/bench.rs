use std::time::Instant;

use visclust::baselines::{kmeans, DEFAULT_MAX_ITER, DEFAULT_RESTARTS};
use visclust::data::gen_blobs;
use visclust::metrics::adjusted_rand_index;
use visclust::rng::{stream, Purpose};
use visclust::visclust::{cluster, VisClustConfig};

use crate::args::{Algo, BenchArgs};
use crate::Failure;

/// One timed run.
#[derive(Debug, Clone)]
pub struct Record {
    pub m: usize,
    pub d: usize,
    pub n_c: usize,
    pub repeat: u64,
    pub algo: Algo,
    pub seed: u64,
    pub wall_time_seconds: f64,
    pub ari: Option<f64>,
    pub status: String,
}

impl Record {
    fn line(&self) -> String {
        format!(
            "m={} d={} n_c={} repeat={} algo={} seed={} wall_time_seconds={} ari={} status={}",
            self.m,
            self.d,
            self.n_c,
            self.repeat,
            self.algo.name(),
            self.seed,
            self.wall_time_seconds,
            self.ari.map_or("undefined".into(), |a| a.to_string()),
            self.status
        )
    }
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = if v.len() > 1 {
        v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (mean, var.sqrt())
}

fn run_one(m: usize, d: usize, n_c: usize, repeat: u64, algo: Algo, a: &BenchArgs) -> Result<Record, Failure> {
    let seed = a.seed.seed.wrapping_add(repeat);
    let data = gen_blobs(m, d, n_c, a.std, &mut stream(seed, Purpose::Generate, 0))?.data;
    let truth = data.labels().expect("generated data carry labels").to_vec();
    let start = Instant::now();
    let (labels, status) = match algo {
        Algo::Visclust => {
            let p = cluster(&data, &VisClustConfig::new(n_c).with_seed(seed))?;
            (p.labels, p.status.to_string())
        }
        Algo::Kmeans => {
            let r = kmeans(&data, n_c, DEFAULT_RESTARTS, DEFAULT_MAX_ITER, &mut stream(seed, Purpose::KMeans, 0))?;
            (r.labels, "satisfied".to_string())
        }
    };
    let wall_time_seconds = start.elapsed().as_secs_f64();
    Ok(Record {
        m,
        d,
        n_c,
        repeat,
        algo,
        seed,
        wall_time_seconds,
        ari: adjusted_rand_index(&labels, &truth).ok(),
        status,
    })
}

pub fn run(a: &BenchArgs) -> Result<(), Failure> {
    if a.points.is_empty() || a.dims.is_empty() || a.clusters.is_empty() || a.algos.is_empty() {
        return Err(Failure::Usage("empty benchmark matrix".into()));
    }
    for &m in &a.points {
        for &d in &a.dims {
            for &n_c in &a.clusters {
                for &algo in &a.algos {
                    let mut records = Vec::new();
                    for repeat in 0..a.repeats {
                        let r = run_one(m, d, n_c, repeat, algo, a)?;
                        println!("{}", r.line());
                        records.push(r);
                    }
                    if a.summary {
                        let aris: Vec<f64> = records.iter().filter_map(|r| r.ari).collect();
                        let times: Vec<f64> = records.iter().map(|r| r.wall_time_seconds).collect();
                        let (am, asd) = if aris.is_empty() { (f64::NAN, f64::NAN) } else { mean_std(&aris) };
                        let (tm, tsd) = mean_std(&times);
                        println!(
                            "summary m={m} d={d} n_c={n_c} algo={} runs={} ari_mean={am} ari_std={asd} wall_time_mean={tm} wall_time_std={tsd}",
                            algo.name(),
                            records.len()
                        );
                    }
                }
            }
        }
    }
    Ok(())
}
