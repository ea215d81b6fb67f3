use super::{BinaryImage, Shape};
use crate::data::Dataset;
use crate::error::{Error, Result};

/// Pixels per unit length of projected data.
pub const PIXELS_PER_UNIT: f64 = 100.0;

/// Projected points snapped to the integer grid.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedPoints {
    k: usize,
    coords: Vec<u32>,
    origin: Vec<f64>,
}

impl QuantizedPoints {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.k
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[u32] {
        &self.coords[i * self.k..(i + 1) * self.k]
    }

    /// Per-dimension minimum of the projected data, subtracted before scaling.
    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    /// Grid extent: one more than the largest coordinate on each axis.
    pub fn shape(&self) -> Shape {
        let mut dims = vec![1usize; self.k];
        for p in self.coords.chunks_exact(self.k) {
            for (d, &c) in dims.iter_mut().zip(p) {
                *d = (*d).max(c as usize + 1);
            }
        }
        Shape::new(&dims)
    }
}

fn check_k(k: usize) -> Result<()> {
    if !(2..=3).contains(&k) {
        return Err(Error::InvalidDimension(format!(
            "images are 2-D or 3-D, got k = {k}"
        )));
    }
    Ok(())
}

/// `z_i = floor(100 * (y_i - min_j y_j))`, per dimension.
pub fn quantize(projected: &Dataset) -> Result<QuantizedPoints> {
    let k = projected.dims();
    check_k(k)?;
    let origin: Vec<f64> = (0..k)
        .map(|r| projected.column(r).fold(f64::INFINITY, f64::min))
        .collect();
    let mut coords = Vec::with_capacity(projected.len() * k);
    for row in projected.rows() {
        for (v, lo) in row.iter().zip(&origin) {
            coords.push((PIXELS_PER_UNIT * (v - lo)).floor() as u32);
        }
    }
    Ok(QuantizedPoints { k, coords, origin })
}

/// Binary image with a one at every occupied pixel, plus the point-to-pixel map.
pub fn rasterize(z: &QuantizedPoints) -> BinaryImage {
    let shape = z.shape();
    let mut point_pixel = Vec::with_capacity(z.len());
    let mut coords = vec![0usize; z.k];
    for p in z.coords.chunks_exact(z.k) {
        for (c, &v) in coords.iter_mut().zip(p) {
            *c = v as usize;
        }
        point_pixel.push(shape.index(&coords));
    }
    let mut foreground = point_pixel.clone();
    foreground.sort_unstable();
    foreground.dedup();
    BinaryImage::with_points(shape, foreground, point_pixel)
}
