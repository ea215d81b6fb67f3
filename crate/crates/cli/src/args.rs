use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "visclust", version, about = "Cluster data by looking at random 2-D and 3-D pictures of it")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster the points in a delimited text file.
    Cluster(ClusterArgs),
    /// Compare a label file against ground truth.
    Eval(EvalArgs),
    /// Generate a synthetic dataset with ground-truth labels.
    Synth(SynthArgs),
    /// Time and score clustering runs over a grid of synthetic datasets.
    Bench(BenchArgs),
    /// Draw a labeled scatter plot as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct SeedArg {
    /// Random seed.
    #[arg(long, env = "VISCLUST_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Visclust,
    Kmeans,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Visclust => "visclust",
            Algo::Kmeans => "kmeans",
        }
    }
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Comma- or tab-separated file, one point per row.
    pub input: PathBuf,
    /// Number of clusters; chosen from the data when omitted.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub clusters: Option<u64>,
    /// Largest accepted L1 gap between requested and found cluster sizes.
    #[arg(long, default_value_t = 0.1)]
    pub threshold: f64,
    /// Initial weight on the smoothing width.
    #[arg(long, default_value_t = 1.25)]
    pub scale: f64,
    /// Points used for the image stage (default: all).
    #[arg(long)]
    pub subsample: Option<usize>,
    /// Relative cluster sizes, e.g. 0.2,0.3,0.5 (default: equal).
    #[arg(long, value_delimiter = ',')]
    pub division: Option<Vec<f64>>,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Precomputed m×2 or m×3 embedding to cluster on instead of projections.
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Algo::Visclust)]
    pub algo: Algo,
    /// Also write a scatter plot of the result here.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// Label file to write (default: INPUT.labels).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Column holding ground-truth labels, by header name or 0-based index.
    #[arg(long)]
    pub truth_column: Option<String>,
    /// Projections tried in two dimensions.
    #[arg(long, default_value_t = 5000)]
    pub projections_2d: usize,
    /// Projections tried in three dimensions.
    #[arg(long, default_value_t = 2000)]
    pub projections_3d: usize,
    /// k-means restarts.
    #[arg(long, default_value_t = visclust::baselines::DEFAULT_RESTARTS)]
    pub restarts: usize,
    /// k-means iteration cap per restart.
    #[arg(long, default_value_t = visclust::baselines::DEFAULT_MAX_ITER)]
    pub max_iter: usize,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Predicted labels, one per line.
    pub pred: PathBuf,
    /// Ground-truth labels, one per line.
    pub truth: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Blobs,
    Circles,
    Moons,
    Gaussian,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 1000)]
    pub points: usize,
    /// Feature count (blobs default 5, others 2). Circles and moons are
    /// padded with uniform noise columns beyond 2.
    #[arg(long)]
    pub dims: Option<usize>,
    /// Blob count.
    #[arg(long, default_value_t = 4)]
    pub clusters: usize,
    /// Noise standard deviation (blobs and circles/moons 0.05, gaussian 1).
    #[arg(long)]
    pub std: Option<f64>,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Output file (default: standard output).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Point counts.
    #[arg(long, value_delimiter = ',', default_value = "1000")]
    pub points: Vec<usize>,
    /// Feature counts.
    #[arg(long, value_delimiter = ',', default_value = "5")]
    pub dims: Vec<usize>,
    /// Cluster counts.
    #[arg(long, value_delimiter = ',', default_value = "4")]
    pub clusters: Vec<usize>,
    /// Runs per configuration.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    pub repeats: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "visclust")]
    pub algos: Vec<Algo>,
    /// Blob standard deviation.
    #[arg(long, default_value_t = 0.05)]
    pub std: f64,
    /// Append mean and standard deviation per configuration.
    #[arg(long)]
    pub summary: bool,
    #[command(flatten)]
    pub seed: SeedArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotProjection {
    /// The first two features.
    First2,
    /// A random orthonormal 2-D projection drawn from the seed.
    SeededRandom,
    /// The first two columns of `--embedding`.
    Embedding,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Data file.
    pub input: PathBuf,
    /// Label file, one label per point.
    pub labels: PathBuf,
    #[arg(long, value_enum, default_value_t = PlotProjection::First2)]
    pub projection: PlotProjection,
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    #[command(flatten)]
    pub seed: SeedArg,
    /// SVG file to write.
    #[arg(long)]
    pub output: PathBuf,
}
