use super::grid::{PixelMap, DENSE_PIXEL_LIMIT};
use super::{BinaryImage, Shape};

/// A nonnegative-valued image, either as a full grid or as its sorted
/// nonzero entries.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    shape: Shape,
    storage: Storage,
}

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    Dense(Vec<f64>),
    Sparse(Vec<(usize, f64)>),
}

impl GrayImage {
    pub fn from_dense(shape: Shape, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), shape.len(), "grid does not match shape");
        GrayImage {
            shape,
            storage: Storage::Dense(values),
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn get(&self, index: usize) -> f64 {
        match &self.storage {
            Storage::Dense(v) => v[index],
            Storage::Sparse(e) => e
                .binary_search_by_key(&index, |&(i, _)| i)
                .map_or(0.0, |p| e[p].1),
        }
    }

    pub fn to_dense(&self) -> Vec<f64> {
        match &self.storage {
            Storage::Dense(v) => v.clone(),
            Storage::Sparse(e) => {
                let mut v = vec![0.0; self.shape.len()];
                for &(i, x) in e {
                    v[i] = x;
                }
                v
            }
        }
    }

    /// Sum over all pixels, accumulated in index order.
    pub fn sum(&self) -> f64 {
        match &self.storage {
            Storage::Dense(v) => v.iter().sum(),
            Storage::Sparse(e) => e.iter().map(|&(_, x)| x).sum(),
        }
    }

    pub fn mean(&self) -> f64 {
        self.sum() / self.shape.len() as f64
    }

    /// Smallest and largest pixel value, counting implicit zeros.
    fn range(&self) -> (f64, f64) {
        let fold = |it: &mut dyn Iterator<Item = f64>, init: (f64, f64)| {
            it.fold(init, |(lo, hi), x| (lo.min(x), hi.max(x)))
        };
        match &self.storage {
            Storage::Dense(v) => fold(&mut v.iter().copied(), (f64::INFINITY, f64::NEG_INFINITY)),
            Storage::Sparse(e) => {
                let init = if e.len() < self.shape.len() {
                    (0.0, 0.0)
                } else {
                    (f64::INFINITY, f64::NEG_INFINITY)
                };
                fold(&mut e.iter().map(|&(_, x)| x), init)
            }
        }
    }

    pub fn max(&self) -> f64 {
        match &self.storage {
            Storage::Dense(v) => v.iter().cloned().fold(0.0, f64::max),
            Storage::Sparse(e) => e.iter().map(|&(_, x)| x).fold(0.0, f64::max),
        }
    }
}

/// Half-width of the discretized kernel: `ceil(3 sigma)`.
pub fn kernel_radius(sigma: f64) -> usize {
    (3.0 * sigma).ceil() as usize
}

/// Sampled 1-D Gaussian of width `sigma` on `[-r, r]`, normalized to sum 1.
/// The k-D isotropic kernel is the outer product of k copies.
pub fn gaussian_kernel_1d(sigma: f64) -> Vec<f64> {
    let r = kernel_radius(sigma) as isize;
    let mut w: Vec<f64> = (-r..=r)
        .map(|t| (-((t * t) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    w
}

/// Convolve with the normalized isotropic Gaussian of standard deviation
/// `sigma` pixels, treating everything outside the grid as zero.
pub fn gaussian_filter(img: &BinaryImage, sigma: f64) -> GrayImage {
    let dense = img.shape().len() <= DENSE_PIXEL_LIMIT;
    filter_with(img, sigma, dense)
}

pub(crate) fn filter_with(img: &BinaryImage, sigma: f64, dense: bool) -> GrayImage {
    assert!(sigma > 0.0 && sigma.is_finite(), "sigma must be positive");
    let shape = img.shape().clone();
    let w = gaussian_kernel_1d(sigma);
    let storage = if dense {
        let mut buf = vec![0.0; shape.len()];
        for &i in img.foreground() {
            buf[i] = 1.0;
        }
        for axis in (0..shape.ndim()).rev() {
            buf = dense_pass(&shape, &buf, axis, &w);
        }
        Storage::Dense(buf)
    } else {
        let mut entries: Vec<(usize, f64)> = img.foreground().iter().map(|&i| (i, 1.0)).collect();
        for axis in (0..shape.ndim()).rev() {
            entries = sparse_pass(&shape, &entries, axis, &w);
        }
        Storage::Sparse(entries)
    };
    GrayImage { shape, storage }
}

/// One separable pass along `axis` over a full grid. Each output sums its
/// taps in increasing offset order.
fn dense_pass(shape: &Shape, input: &[f64], axis: usize, w: &[f64]) -> Vec<f64> {
    let n = shape.dims()[axis];
    let inner = shape.strides()[axis];
    let outer = shape.len() / (n * inner);
    let r = (w.len() / 2) as isize;
    let reach = r.min(n as isize - 1);
    let mut out = vec![0.0; input.len()];
    if inner == 1 {
        for (line, dst) in input.chunks_exact(n).zip(out.chunks_exact_mut(n)) {
            line_pass(line, dst, w);
        }
        return out;
    }

    for o in 0..outer {
        let base = o * n * inner;
        let block = &input[base..base + n * inner];
        // Nonzero column span of each source row.
        let live: Vec<Option<(usize, usize)>> = block
            .chunks_exact(inner)
            .map(|row| {
                let first = row.iter().position(|&v| v != 0.0)?;
                let last = row.iter().rposition(|&v| v != 0.0)?;
                Some((first, last))
            })
            .collect();
        if live.iter().all(Option::is_none) {
            continue;
        }
        let dst = &mut out[base..base + n * inner];
        for c in 0..n as isize {
            let lo = (-reach).max(-c);
            let hi = reach.min(n as isize - 1 - c);
            let out_row = &mut dst[c as usize * inner..(c as usize + 1) * inner];
            for t in lo..=hi {
                let src = (c + t) as usize;
                let Some((a, b)) = live[src] else {
                    continue;
                };
                let weight = w[(r + t) as usize];
                let in_row = &block[src * inner + a..=src * inner + b];
                for (y, x) in out_row[a..=b].iter_mut().zip(in_row) {
                    *y += weight * x;
                }
            }
        }
    }
    out
}

/// Convolution of one contiguous line, restricted to the span its nonzero
/// entries can reach. Taps are summed in increasing offset order.
fn line_pass(line: &[f64], dst: &mut [f64], w: &[f64]) {
    let Some(first) = line.iter().position(|&v| v != 0.0) else {
        return;
    };
    let last = line.iter().rposition(|&v| v != 0.0).expect("line has a nonzero");
    let n = line.len() as isize;
    let r = (w.len() / 2) as isize;
    let (first, last) = (first as isize, last as isize);
    for t in -r..=r {
        // Outputs c whose source c + t lies in [first, last].
        let lo = (first - t).max(0);
        let hi = (last - t).min(n - 1);
        if lo > hi {
            continue;
        }
        let weight = w[(r + t) as usize];
        let src = &line[(lo + t) as usize..=(hi + t) as usize];
        for (y, x) in dst[lo as usize..=hi as usize].iter_mut().zip(src) {
            *y += weight * x;
        }
    }
}

/// Same pass over sorted nonzero entries, scattering each into its
/// neighbors. Sources are visited in index order, so every output again
/// accumulates its taps in increasing offset order.
fn sparse_pass(shape: &Shape, input: &[(usize, f64)], axis: usize, w: &[f64]) -> Vec<(usize, f64)> {
    let n = shape.dims()[axis] as isize;
    let stride = shape.strides()[axis] as isize;
    let r = (w.len() / 2) as isize;
    let reach = r.min(n - 1);
    let mut slot: PixelMap<u32> = PixelMap::for_shape(shape);
    let mut out: Vec<(usize, f64)> = Vec::with_capacity(input.len() * 2);

    for &(i, v) in input {
        let c = shape.coord(i, axis) as isize;
        let lo = (-reach).max(-c);
        let hi = reach.min(n - 1 - c);
        for t in lo..=hi {
            let j = (i as isize + t * stride) as usize;
            let s = slot.get_mut(j);
            if *s == 0 {
                out.push((j, 0.0));
                *s = out.len() as u32;
            }
            out[*s as usize - 1].1 += v * w[(r - t) as usize];
        }
    }
    out.sort_unstable_by_key(|&(j, _)| j);
    out
}

/// Keep the pixels strictly brighter than the image mean.
pub fn threshold_mean(img: &GrayImage) -> BinaryImage {
    let shape = img.shape.clone();
    let (lo, hi) = img.range();
    if hi <= lo {
        return BinaryImage::new(shape, Vec::new());
    }
    // Rounding in the sum can leave the mean just outside the value range.
    let mean = img.mean().clamp(lo, hi);
    let foreground: Vec<usize> = match &img.storage {
        Storage::Dense(v) => v
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > mean)
            .map(|(i, _)| i)
            .collect(),
        Storage::Sparse(e) if mean >= 0.0 => {
            e.iter().filter(|&&(_, x)| x > mean).map(|&(i, _)| i).collect()
        }
        // Implicit zeros clear a negative mean.
        Storage::Sparse(_) => {
            let dense = img.to_dense();
            return threshold_mean(&GrayImage::from_dense(shape, dense));
        }
    };
    BinaryImage::new(shape, foreground)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::from_seed;
    use rand::Rng;

    /// Direct k-D convolution, one full kernel window per output pixel.
    fn brute_force(shape: &Shape, input: &[f64], sigma: f64) -> Vec<f64> {
        let w = gaussian_kernel_1d(sigma);
        let r = (w.len() / 2) as isize;
        let k = shape.ndim();
        let window: Vec<Vec<isize>> = (0..(w.len().pow(k as u32)))
            .map(|mut code| {
                (0..k)
                    .map(|_| {
                        let t = (code % w.len()) as isize - r;
                        code /= w.len();
                        t
                    })
                    .collect()
            })
            .collect();
        (0..shape.len())
            .map(|i| {
                window
                    .iter()
                    .filter_map(|delta| {
                        let j = shape.offset(i, delta)?;
                        let weight: f64 = delta.iter().map(|&t| w[(r + t) as usize]).product();
                        Some(weight * input[j])
                    })
                    .sum()
            })
            .collect()
    }

    fn random_image(shape: &Shape, density: f64, seed: u64) -> BinaryImage {
        let mut rng = from_seed(seed);
        let grid: Vec<u8> = (0..shape.len()).map(|_| u8::from(rng.gen_bool(density))).collect();
        BinaryImage::from_dense(shape.clone(), &grid)
    }

    #[test]
    fn zeros_stay_zero() {
        let img = BinaryImage::new(Shape::new(&[10, 12]), vec![]);
        let out = gaussian_filter(&img, 2.0);
        assert!(out.to_dense().iter().all(|&v| v == 0.0));
        assert!(threshold_mean(&out).foreground().is_empty());
    }

    #[test]
    fn interior_impulse_conserves_mass() {
        let shape = Shape::new(&[21, 21]);
        let center = shape.index(&[10, 10]);
        let out = gaussian_filter(&BinaryImage::new(shape.clone(), vec![center]), 1.0);
        let dense = out.to_dense();
        assert!((out.sum() - 1.0).abs() < 1e-9);
        let argmax = (0..dense.len()).max_by(|&a, &b| dense[a].total_cmp(&dense[b])).unwrap();
        assert_eq!(argmax, center);
    }

    #[test]
    fn matches_direct_convolution_2d() {
        let shape = Shape::new(&[40, 40]);
        for (seed, sigma) in [(1, 0.8), (2, 1.7), (3, 4.2), (4, 15.0)] {
            let img = random_image(&shape, 0.1, seed);
            let want = brute_force(&shape, &img.to_dense().iter().map(|&b| b as f64).collect::<Vec<_>>(), sigma);
            for dense in [true, false] {
                let got = filter_with(&img, sigma, dense).to_dense();
                for (a, b) in got.iter().zip(&want) {
                    assert!((a - b).abs() < 1e-9, "sigma {sigma}, dense {dense}");
                }
            }
        }
    }

    #[test]
    fn matches_direct_convolution_3d() {
        let shape = Shape::new(&[9, 11, 7]);
        let img = random_image(&shape, 0.05, 5);
        let input: Vec<f64> = img.to_dense().iter().map(|&b| b as f64).collect();
        let want = brute_force(&shape, &input, 1.3);
        let dense = filter_with(&img, 1.3, true);
        let sparse = filter_with(&img, 1.3, false);
        for (i, w) in want.iter().enumerate() {
            assert!((dense.get(i) - w).abs() < 1e-9);
            assert!((sparse.get(i) - w).abs() < 1e-9);
        }
        assert_eq!(threshold_mean(&dense), threshold_mean(&sparse));
    }

    #[test]
    fn constant_image_thresholds_to_nothing() {
        let img = GrayImage::from_dense(Shape::new(&[4, 4]), vec![0.3; 16]);
        assert!(threshold_mean(&img).foreground().is_empty());
    }

    #[test]
    fn single_bright_pixel_survives() {
        let mut v = vec![0.0; 25];
        v[24] = 1.0;
        let out = threshold_mean(&GrayImage::from_dense(Shape::new(&[5, 5]), v));
        assert_eq!(out.foreground(), &[24]);
    }

    #[test]
    fn threshold_matches_elementwise_oracle() {
        let mut rng = from_seed(12);
        let v: Vec<f64> = (0..400).map(|_| rng.gen::<f64>()).collect();
        let mean = v.iter().sum::<f64>() / 400.0;
        let out = threshold_mean(&GrayImage::from_dense(Shape::new(&[20, 20]), v.clone()));
        for (i, x) in v.iter().enumerate() {
            assert_eq!(out.is_set(i), *x > mean);
        }
    }

    #[test]
    fn kernel_is_normalized_and_symmetric() {
        for sigma in [0.3, 1.0, 2.5, 11.0] {
            let w = gaussian_kernel_1d(sigma);
            assert_eq!(w.len(), 2 * kernel_radius(sigma) + 1);
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            for t in 0..w.len() {
                assert_eq!(w[t], w[w.len() - 1 - t]);
            }
        }
    }
}
