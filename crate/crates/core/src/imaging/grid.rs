use std::collections::HashMap;

/// Images with at most this many pixels get dense scratch buffers; larger
/// ones (typically 3-D) fall back to hashed storage.
pub(crate) const DENSE_PIXEL_LIMIT: usize = 1 << 23;

/// Extent of a k-dimensional pixel grid. Linear indices are row-major: the
/// last axis varies fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    dims: Vec<usize>,
    strides: Vec<usize>,
}

impl Shape {
    pub fn new(dims: &[usize]) -> Self {
        let mut strides = vec![1; dims.len()];
        for a in (0..dims.len().saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * dims[a + 1];
        }
        Shape {
            dims: dims.to_vec(),
            strides,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    /// Number of pixels `|Omega|`.
    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn coord(&self, index: usize, axis: usize) -> usize {
        (index / self.strides[axis]) % self.dims[axis]
    }

    pub fn coords(&self, index: usize) -> Vec<usize> {
        (0..self.ndim()).map(|a| self.coord(index, a)).collect()
    }

    /// Linear offset of `index` moved by `delta`, or `None` when that leaves
    /// the grid.
    pub fn offset(&self, index: usize, delta: &[isize]) -> Option<usize> {
        let mut out = index as isize;
        for (a, &step) in delta.iter().enumerate() {
            if step == 0 {
                continue;
            }
            let c = self.coord(index, a) as isize + step;
            if c < 0 || c >= self.dims[a] as isize {
                return None;
            }
            out += step * self.strides[a] as isize;
        }
        Some(out as usize)
    }
}

/// Pixel-indexed lookup table, dense for small grids and hashed otherwise.
pub(crate) enum PixelMap<T> {
    Dense(Vec<T>),
    Hashed(HashMap<usize, T>),
}

impl<T: Copy + Default + PartialEq> PixelMap<T> {
    pub(crate) fn for_shape(shape: &Shape) -> Self {
        let n = shape.len();
        if n <= DENSE_PIXEL_LIMIT {
            PixelMap::Dense(vec![T::default(); n])
        } else {
            PixelMap::Hashed(HashMap::new())
        }
    }

    pub(crate) fn get(&self, index: usize) -> T {
        match self {
            PixelMap::Dense(v) => v[index],
            PixelMap::Hashed(h) => h.get(&index).copied().unwrap_or_default(),
        }
    }

    pub(crate) fn get_mut(&mut self, index: usize) -> &mut T {
        match self {
            PixelMap::Dense(v) => &mut v[index],
            PixelMap::Hashed(h) => h.entry(index).or_default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_major_indexing() {
        let s = Shape::new(&[3, 4, 5]);
        assert_eq!(s.strides(), &[20, 5, 1]);
        let i = s.index(&[2, 1, 3]);
        assert_eq!(s.coords(i), vec![2, 1, 3]);
        assert_eq!(s.offset(i, &[-1, 1, 1]), Some(s.index(&[1, 2, 4])));
        assert_eq!(s.offset(i, &[1, 0, 0]), None);
        assert_eq!(s.offset(s.index(&[0, 0, 4]), &[0, 0, 1]), None);
    }
}
