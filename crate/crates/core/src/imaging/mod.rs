//! The image stage: projected points become a binary pixel grid, which is
//! smoothed with a Gaussian, thresholded at its mean, and split into
//! connected components.

mod filter;
mod grid;
mod label;
pub mod pnm;
mod quantize;
mod sigma;

use std::collections::BTreeMap;

pub use filter::{gaussian_filter, gaussian_kernel_1d, kernel_radius, threshold_mean, GrayImage};
pub use grid::Shape;
pub use label::{assign_points, label_components, min_component_size, LabeledComponents};
pub use quantize::{quantize, rasterize, QuantizedPoints, PIXELS_PER_UNIT};
pub use sigma::{estimate_sigma, SIGMA_MAX_PAIRS, SIGMA_SUBSAMPLE};


/// A binary image stored as the sorted list of its foreground pixels. Images
/// built from data also remember which pixel each point fell on.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryImage {
    shape: Shape,
    foreground: Vec<usize>,
    point_pixel: Vec<usize>,
}

impl BinaryImage {
    /// `foreground` need not be sorted or unique.
    pub fn new(shape: Shape, mut foreground: Vec<usize>) -> Self {
        foreground.sort_unstable();
        foreground.dedup();
        debug_assert!(foreground.last().is_none_or(|&i| i < shape.len()));
        BinaryImage {
            shape,
            foreground,
            point_pixel: Vec::new(),
        }
    }

    pub(crate) fn with_points(shape: Shape, foreground: Vec<usize>, point_pixel: Vec<usize>) -> Self {
        BinaryImage {
            shape,
            foreground,
            point_pixel,
        }
    }

    /// Nonzero entries of a dense row-major grid.
    pub fn from_dense(shape: Shape, grid: &[u8]) -> Self {
        assert_eq!(grid.len(), shape.len(), "grid does not match shape");
        let foreground = grid
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, _)| i)
            .collect();
        BinaryImage {
            shape,
            foreground,
            point_pixel: Vec::new(),
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Sorted linear indices of the pixels set to one.
    pub fn foreground(&self) -> &[usize] {
        &self.foreground
    }

    pub fn count_ones(&self) -> usize {
        self.foreground.len()
    }

    pub fn is_set(&self, index: usize) -> bool {
        self.foreground.binary_search(&index).is_ok()
    }

    pub fn to_dense(&self) -> Vec<u8> {
        let mut grid = vec![0u8; self.shape.len()];
        for &i in &self.foreground {
            grid[i] = 1;
        }
        grid
    }

    /// Pixel of every data point, in point order. Empty for images that were
    /// not rasterized from data.
    pub fn point_pixels(&self) -> &[usize] {
        &self.point_pixel
    }

    /// Pixel -> indices of the points that occupy it.
    pub fn point_index(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut index: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &p) in self.point_pixel.iter().enumerate() {
            index.entry(p).or_default().push(i);
        }
        index
    }
}
