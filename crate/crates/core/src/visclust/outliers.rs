use crate::data::Dataset;

/// Distance from the coordinate mean, in sample standard deviations, beyond
/// which a point is held out of the image stage.
pub const OUTLIER_SIGMAS: f64 = 4.0;

/// Flags points with any coordinate more than four sample standard
/// deviations from that coordinate's mean. Constant coordinates flag nothing.
pub fn outlier_mask(x_scaled: &Dataset) -> Vec<bool> {
    let m = x_scaled.len();
    let mut mask = vec![false; m];
    if m < 2 {
        return mask;
    }
    for j in 0..x_scaled.dims() {
        let mean = x_scaled.column(j).sum::<f64>() / m as f64;
        let var = x_scaled.column(j).map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1) as f64;
        let std = var.sqrt();
        if std == 0.0 {
            continue;
        }
        for (flag, v) in mask.iter_mut().zip(x_scaled.column(j)) {
            if (v - mean).abs() > OUTLIER_SIGMAS * std {
                *flag = true;
            }
        }
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::from_seed;
    use rand_distr::{Distribution, Normal};

    #[test]
    fn identical_points_flag_nothing() {
        let x = Dataset::from_rows(&[[0.3, -0.2]; 20]).unwrap();
        assert!(outlier_mask(&x).iter().all(|&f| !f));
    }

    #[test]
    fn flags_exactly_the_far_point() {
        let mut rng = from_seed(1);
        let n = Normal::new(0.0, 0.1).unwrap();
        let mut values: Vec<f64> = (0..999 * 2).map(|_| n.sample(&mut rng)).collect();
        values.extend([10.0, 0.0]);
        let x = Dataset::new(values, 1000, 2).unwrap();
        let mask = outlier_mask(&x);
        // z-scores computed directly: only the appended point exceeds 4.
        let flagged: Vec<usize> = (0..1000).filter(|&i| mask[i]).collect();
        assert_eq!(flagged, vec![999]);
    }

    #[test]
    fn invariant_under_affine_rescaling() {
        let mut rng = from_seed(2);
        let n = Normal::new(0.0, 1.0).unwrap();
        let mut values: Vec<f64> = (0..300 * 3).map(|_| n.sample(&mut rng)).collect();
        values[5] = 9.0;
        values[400] = -7.5;
        let x = Dataset::new(values.clone(), 300, 3).unwrap();
        let scaled: Vec<f64> = values
            .iter()
            .enumerate()
            .map(|(i, v)| [2.0, 0.5, 10.0][i % 3] * v + [1.0, -3.0, 0.25][i % 3])
            .collect();
        let y = Dataset::new(scaled, 300, 3).unwrap();
        assert_eq!(outlier_mask(&x), outlier_mask(&y));
        assert!(outlier_mask(&x)[1] && outlier_mask(&x)[133]);
    }
}
