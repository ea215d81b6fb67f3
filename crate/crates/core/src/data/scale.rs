use super::Dataset;

/// Component-wise affine map of each column's `[min, max]` onto `[-1, 1]`.
/// Constant columns map to 0.
pub fn scale_minmax(x: &Dataset) -> Dataset {
    let d = x.dims();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for row in x.rows() {
        for (j, &v) in row.iter().enumerate() {
            lo[j] = lo[j].min(v);
            hi[j] = hi[j].max(v);
        }
    }
    let mut values = Vec::with_capacity(x.values().len());
    for row in x.rows() {
        for (j, &v) in row.iter().enumerate() {
            let span = hi[j] - lo[j];
            values.push(if span > 0.0 {
                2.0 * (v - lo[j]) / span - 1.0
            } else {
                0.0
            });
        }
    }
    x.replace_values(values, d)
        .expect("scaling finite data yields finite data")
}
