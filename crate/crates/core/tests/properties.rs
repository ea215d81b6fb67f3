use proptest::prelude::*;
use rand::Rng;

use visclust::baselines::kmeans;
use visclust::data::{gen_blobs, scale_minmax, Dataset};
use visclust::imaging::{gaussian_filter, quantize, BinaryImage, Shape};
use visclust::metrics::{
    accuracy, adjusted_rand_index, contingency, expected_rand_index, rand_index, StirlingCache,
};
use visclust::projections::{project, sample_stiefel, total_variance, ProjectionSet};
use visclust::rng::from_seed;
use visclust::visclust::{cluster, Status, VisClustConfig};

fn random_data(seed: u64, m: usize, d: usize, spread: f64) -> Dataset {
    let mut rng = from_seed(seed);
    let values = (0..m * d).map(|_| rng.gen_range(-spread..spread)).collect();
    Dataset::new(values, m, d).unwrap()
}

fn pairwise_variance(x: &Dataset) -> f64 {
    let m = x.len();
    let mut sum = 0.0;
    for i in 0..m {
        for j in i + 1..m {
            sum += x.row(i).iter().zip(x.row(j)).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
        }
    }
    sum / (m * (m - 1)) as f64
}

fn labels(max: usize, m: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=max, m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bases_are_orthonormal_projectors(seed in any::<u64>(), k in 2usize..=3, d in prop::sample::select(vec![3usize, 5, 10, 50])) {
        let q = sample_stiefel(k, d, &mut from_seed(seed)).unwrap();
        prop_assert!(q.orthonormality_defect() < 1e-10);
        let p = q.projector();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let pp: f64 = (0..d).map(|t| p[i * d + t] * p[t * d + j]).sum();
                worst = worst.max((pp - p[i * d + j]).abs()).max((p[i * d + j] - p[j * d + i]).abs());
            }
        }
        prop_assert!(worst < 1e-10);
        let trace: f64 = (0..d).map(|i| p[i * d + i]).sum();
        prop_assert!((trace - k as f64).abs() < 1e-8);
    }

    #[test]
    fn projection_contracts_norms(seed in any::<u64>(), k in 2usize..=3, d in 3usize..12) {
        let q = sample_stiefel(k, d, &mut from_seed(seed)).unwrap();
        let x = random_data(seed ^ 1, 30, d, 5.0);
        let y = project(&q, &x).unwrap();
        for (a, b) in x.rows().zip(y.rows()) {
            let na: f64 = a.iter().map(|v| v * v).sum();
            let nb: f64 = b.iter().map(|v| v * v).sum();
            prop_assert!(nb <= na + 1e-12);
        }
    }

    #[test]
    fn variance_forms_agree(seed in any::<u64>(), m in prop::sample::select(vec![2usize, 3, 10, 500]), d in 1usize..6) {
        let x = random_data(seed, m, d, 3.0);
        let centered = total_variance(&x).unwrap();
        let pairwise = pairwise_variance(&x);
        prop_assert!((centered - pairwise).abs() <= 1e-9 * pairwise.abs().max(1e-300));
    }

    #[test]
    fn projection_never_adds_variance(seed in any::<u64>(), k in 2usize..=3, d in 3usize..10) {
        let x = random_data(seed, 40, d, 2.0);
        let q = sample_stiefel(k, d, &mut from_seed(seed.wrapping_add(7))).unwrap();
        let y = project(&q, &x).unwrap();
        prop_assert!(total_variance(&y).unwrap() <= total_variance(&x).unwrap() + 1e-9);
    }

    #[test]
    fn projection_sets_replay_bitwise(seed in any::<u64>(), n in 1usize..20) {
        let a = ProjectionSet::sample(n, 2, 6, seed).unwrap();
        let b = ProjectionSet::sample(n, 2, 6, seed).unwrap();
        for (p, q) in a.bases().iter().zip(b.bases()) {
            prop_assert_eq!(p.as_slice(), q.as_slice());
        }
    }

    #[test]
    fn quantization_stays_in_range(seed in any::<u64>(), k in 2usize..=3, d in 3usize..30) {
        let bound = (d as f64).sqrt();
        let y = random_data(seed, 50, k, bound);
        let z = quantize(&y).unwrap();
        let top = (200.0 * bound).floor() as u32;
        for i in 0..z.len() {
            prop_assert!(z.point(i).iter().all(|&c| c <= top));
        }
    }

    #[test]
    fn quantization_shifts_by_at_most_one(seed in any::<u64>(), c0 in -3.0f64..3.0, c1 in -3.0f64..3.0) {
        let y = random_data(seed, 40, 2, 1.0);
        let shifted: Vec<f64> = y.rows().flat_map(|r| [r[0] + c0, r[1] + c1]).collect();
        let shifted = Dataset::new(shifted, 40, 2).unwrap();
        let (a, b) = (quantize(&y).unwrap(), quantize(&shifted).unwrap());
        for i in 0..a.len() {
            for (u, v) in a.point(i).iter().zip(b.point(i)) {
                prop_assert!((*u as i64 - *v as i64).abs() <= 1);
            }
        }
    }

    #[test]
    fn interior_mass_is_conserved(pixels in prop::collection::btree_set((15usize..25, 15usize..25), 1..30), sigma in 0.3f64..4.0) {
        let shape = Shape::new(&[40, 40]);
        let fg: Vec<usize> = pixels.iter().map(|&(i, j)| shape.index(&[i, j])).collect();
        let out = gaussian_filter(&BinaryImage::new(shape, fg), sigma);
        prop_assert!((out.sum() - pixels.len() as f64).abs() < 1e-9);
    }

    #[test]
    fn metrics_ignore_label_names(pred in labels(4, 40), truth in labels(3, 40), shift in 1usize..50) {
        let renamed: Vec<usize> = pred.iter().map(|&l| 100 - l * shift % 97).collect();
        let ri = rand_index(&contingency(&pred, &truth).unwrap()).unwrap();
        prop_assert_eq!(ri, rand_index(&contingency(&renamed, &truth).unwrap()).unwrap());
        prop_assert_eq!(accuracy(&pred, &truth).unwrap(), accuracy(&renamed, &truth).unwrap());
        let a = adjusted_rand_index(&pred, &truth).ok();
        let b = adjusted_rand_index(&renamed, &truth).ok();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn self_agreement_scores_one(pred in labels(5, 30)) {
        if let Ok(ari) = adjusted_rand_index(&pred, &pred) {
            prop_assert!((ari - 1.0).abs() < 1e-12);
        }
        prop_assert_eq!(accuracy(&pred, &pred).unwrap(), 1.0);
    }

    #[test]
    fn expected_index_is_a_probability(pred in labels(4, 25), truth in labels(4, 25)) {
        let table = contingency(&pred, &truth).unwrap();
        let e = expected_rand_index(&table, &StirlingCache::for_table(&table)).unwrap();
        prop_assert!((0.0..=1.0).contains(&e));
    }

    #[test]
    fn accuracy_beats_the_identity_matching(pred in labels(3, 30), truth in labels(3, 30)) {
        let diag = pred.iter().zip(&truth).filter(|(a, b)| a == b).count();
        prop_assert!(accuracy(&pred, &truth).unwrap() + 1e-12 >= diag as f64 / 30.0);
    }

    #[test]
    fn minmax_scaling_is_idempotent(seed in any::<u64>(), d in 1usize..5) {
        let once = scale_minmax(&random_data(seed, 25, d, 10.0));
        let twice = scale_minmax(&once);
        for (a, b) in once.values().iter().zip(twice.values()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn lloyd_never_increases_inertia(seed in any::<u64>(), n_c in 1usize..5) {
        let x = random_data(seed, 60, 3, 1.0);
        let r = kmeans(&x, n_c, 2, 100, &mut from_seed(seed)).unwrap();
        for w in r.inertia_trace.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn satisfied_partitions_recheck(seed in 0u64..1000, n_c in 2usize..5) {
        let blobs = gen_blobs(300, 4, n_c, 0.05, &mut from_seed(seed)).unwrap();
        let cfg = VisClustConfig::new(n_c).with_seed(seed);
        let p = cluster(&blobs.data, &cfg).unwrap();
        prop_assert!(p.iterations_used <= cfg.max_projections_2d + cfg.max_projections_3d);
        if p.status == Status::Satisfied {
            prop_assert_eq!(p.n_clusters(), n_c);
            prop_assert!(p.division_error(&cfg.division_for(n_c).unwrap()) < cfg.threshold);
            let mut seen: Vec<usize> = p.labels.clone();
            seen.sort_unstable();
            seen.dedup();
            prop_assert_eq!(seen, (1..=n_c).collect::<Vec<_>>());
        }
    }
}

#[test]
fn stirling_rows_follow_the_recurrence() {
    let s = StirlingCache::new(20, 20);
    for n in 1..=20 {
        for k in 1..=n {
            let want = s.get(n - 1, k).unwrap() * k + s.get(n - 1, k - 1).unwrap();
            assert_eq!(s.get(n, k).unwrap(), &want);
        }
    }
}
