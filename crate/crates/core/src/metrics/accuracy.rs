use super::{contingency, max_weight_assignment};
use crate::error::Result;

/// Fraction of points whose cluster maps to their class under the best
/// one-to-one matching of clusters to classes. Surplus clusters or classes
/// stay unmatched and score nothing.
pub fn accuracy<A: Ord + Clone, B: Ord + Clone>(pred: &[A], truth: &[B]) -> Result<f64> {
    let table = contingency(pred, truth)?;
    let n = table.rows().max(table.cols());
    let mut weights = vec![vec![0i64; n]; n];
    for (i, row) in weights.iter_mut().enumerate().take(table.rows()) {
        for (j, w) in row.iter_mut().enumerate().take(table.cols()) {
            *w = table.get(i, j) as i64;
        }
    }
    let matched: i64 = max_weight_assignment(&weights)
        .iter()
        .enumerate()
        .map(|(i, &j)| weights[i][j])
        .sum();
    Ok(matched as f64 / table.total() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::rng::from_seed;
    use rand::Rng;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Best trace over every cluster-to-class bijection of the padded table.
    fn brute_force(pred: &[usize], truth: &[usize]) -> f64 {
        let n = pred.iter().chain(truth).max().unwrap() + 1;
        let mut best = 0;
        for perm in permutations(n) {
            let hits = pred.iter().zip(truth).filter(|(&p, &t)| perm[p] == t).count();
            best = best.max(hits);
        }
        best as f64 / pred.len() as f64
    }

    #[test]
    fn perfect_and_swapped_labels() {
        assert_eq!(accuracy(&[1, 1, 2, 2, 3], &[1, 1, 2, 2, 3]).unwrap(), 1.0);
        assert_eq!(accuracy(&[2, 2, 1, 1], &[1, 1, 2, 2]).unwrap(), 1.0);
    }

    #[test]
    fn unequal_counts_leave_labels_unmatched() {
        // One cluster for two classes: at best the larger class is right.
        assert_eq!(accuracy(&[1, 1, 1, 1], &[1, 1, 1, 2]).unwrap(), 0.75);
        // Three clusters, one class: only one cluster can map to it.
        assert_eq!(accuracy(&[1, 2, 3, 3], &[5, 5, 5, 5]).unwrap(), 0.5);
    }

    #[test]
    fn matches_factorial_enumeration() {
        let mut rng = from_seed(17);
        for _ in 0..200 {
            let m = rng.gen_range(1..=50);
            let k = rng.gen_range(1..=5);
            let pred: Vec<usize> = (0..m).map(|_| rng.gen_range(0..k)).collect();
            let truth: Vec<usize> = (0..m).map(|_| rng.gen_range(0..k)).collect();
            // Relabel to dense codes so the brute force sees the same table.
            let acc = accuracy(&pred, &truth).unwrap();
            let dp = crate::metrics::contingency::dense_codes(&pred);
            let dt = crate::metrics::contingency::dense_codes(&truth);
            assert_eq!(acc, brute_force(&dp, &dt));
        }
    }

    #[test]
    fn at_least_the_identity_matching() {
        let mut rng = from_seed(2);
        let pred: Vec<usize> = (0..80).map(|_| rng.gen_range(0..4)).collect();
        let truth: Vec<usize> = (0..80).map(|_| rng.gen_range(0..4)).collect();
        let identity = pred.iter().zip(&truth).filter(|(a, b)| a == b).count() as f64 / 80.0;
        assert!(accuracy(&pred, &truth).unwrap() >= identity);
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(accuracy(&[1, 2], &[1]), Err(Error::InvalidInput(_))));
    }
}
