//! Clustering by looking at random low-dimensional pictures of the data.
//!
//! The data are projected with random orthonormal bases onto two or three
//! dimensions, drawn as a binary image, smoothed with a Gaussian, and cut
//! into connected components. A projection whose components match the
//! requested cluster count and size division is accepted.

pub mod baselines;
pub mod data;
pub mod error;
pub mod imaging;
pub mod metrics;
pub mod projections;
mod qr;
pub mod rng;
pub mod visclust;

pub use data::Dataset;
pub use error::{Error, Result};
