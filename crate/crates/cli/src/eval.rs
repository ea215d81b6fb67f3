use visclust::data::load_labels;
use visclust::metrics::MetricsReport;

use crate::args::EvalArgs;
use crate::report::Report;
use crate::Failure;

pub fn run(a: &EvalArgs) -> Result<(), Failure> {
    let pred = load_labels(&a.pred)?;
    let truth = load_labels(&a.truth)?;
    if pred.len() != truth.len() {
        return Err(Failure::Usage(format!(
            "{} predicted labels but {} truth labels",
            pred.len(),
            truth.len()
        )));
    }
    let m = MetricsReport::evaluate(&pred, &truth)?;
    let mut r = Report::default();
    r.metrics(&m)
        .push("m", m.m)
        .push("n_clusters_pred", m.n_clusters_pred)
        .push("n_clusters_truth", m.n_clusters_truth);
    print!("{r}");
    Ok(())
}
