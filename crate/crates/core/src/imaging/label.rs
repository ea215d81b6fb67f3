use super::grid::PixelMap;
use super::{kernel_radius, BinaryImage, Shape};
use crate::error::{Error, Result};

/// Foreground pixels grouped into connected components (8-neighborhood in
/// 2-D, 26-neighborhood in 3-D). Labels run `1..=count`, numbered by the
/// first pixel of each component in raster order.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledComponents {
    shape: Shape,
    pixels: Vec<(usize, u32)>,
    sizes: Vec<usize>,
}

impl LabeledComponents {
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Number of components `n_cc`.
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Pixel count of each component, indexed by `label - 1`.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Label at a pixel; 0 is background.
    pub fn label_at(&self, index: usize) -> u32 {
        self.pixels
            .binary_search_by_key(&index, |&(i, _)| i)
            .map_or(0, |p| self.pixels[p].1)
    }

    /// Labeled pixels in raster order.
    pub fn pixels(&self) -> &[(usize, u32)] {
        &self.pixels
    }

    pub fn to_dense(&self) -> Vec<u32> {
        let mut grid = vec![0; self.shape.len()];
        for &(i, l) in &self.pixels {
            grid[i] = l;
        }
        grid
    }
}

/// Smallest component that counts as a cluster is one pixel larger than this:
/// the element count `(2 ceil(3 sigma) + 1)^k` of the filter kernel.
pub fn min_component_size(sigma: f64, k: usize) -> usize {
    (2 * kernel_radius(sigma) + 1).pow(k as u32)
}

/// Offsets to the already-scanned half of the full neighborhood: those whose
/// first nonzero component is negative.
fn prior_neighbors(k: usize) -> Vec<Vec<isize>> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(k as u32) {
        let mut c = code;
        let delta: Vec<isize> = (0..k)
            .map(|_| {
                let t = (c % 3) as isize - 1;
                c /= 3;
                t
            })
            .rev()
            .collect();
        if delta.iter().find(|&&t| t != 0) == Some(&-1) {
            out.push(delta);
        }
    }
    out
}

struct Equivalences {
    parent: Vec<u32>,
}

impl Equivalences {
    fn make(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        id
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
    }
}

/// Two-pass labeling with an equivalence table. Components of at most
/// `min_size_pixels` pixels are returned to the background.
pub fn label_components(img: &BinaryImage, min_size_pixels: usize) -> LabeledComponents {
    let shape = img.shape().clone();
    let neighbors = prior_neighbors(shape.ndim());
    // Provisional label + 1 per pixel; 0 means unvisited/background.
    let mut provisional: PixelMap<u32> = PixelMap::for_shape(&shape);
    let mut eq = Equivalences { parent: Vec::new() };
    let mut first_pass = Vec::with_capacity(img.count_ones());

    for &p in img.foreground() {
        let mut label: Option<u32> = None;
        for delta in &neighbors {
            let Some(q) = shape.offset(p, delta) else { continue };
            let l = provisional.get(q);
            if l == 0 {
                continue;
            }
            match label {
                None => label = Some(l - 1),
                Some(cur) => eq.union(cur, l - 1),
            }
        }
        let label = label.unwrap_or_else(|| eq.make());
        *provisional.get_mut(p) = label + 1;
        first_pass.push(label);
    }

    let roots: Vec<u32> = first_pass.iter().map(|&l| eq.find(l)).collect();
    let mut size_of_root = vec![0usize; eq.parent.len()];
    for &r in &roots {
        size_of_root[r as usize] += 1;
    }
    let mut final_label = vec![0u32; eq.parent.len()];
    let mut sizes = Vec::new();
    for &r in &roots {
        let r = r as usize;
        if final_label[r] == 0 && size_of_root[r] > min_size_pixels {
            sizes.push(size_of_root[r]);
            final_label[r] = sizes.len() as u32;
        }
    }
    let pixels = img
        .foreground()
        .iter()
        .zip(&roots)
        .filter_map(|(&p, &r)| {
            let l = final_label[r as usize];
            (l > 0).then_some((p, l))
        })
        .collect();
    LabeledComponents {
        shape,
        pixels,
        sizes,
    }
}

/// Label of the component each point's pixel belongs to, or `None` for
/// points whose pixel ended up in the background.
pub fn assign_points(components: &LabeledComponents, img: &BinaryImage) -> Result<Vec<Option<usize>>> {
    if components.shape() != img.shape() {
        return Err(Error::InvalidDimension("components and image differ in shape".into()));
    }
    if img.point_pixels().is_empty() {
        return Err(Error::InvalidInput("image carries no point-to-pixel map".into()));
    }
    Ok(img
        .point_pixels()
        .iter()
        .map(|&p| match components.label_at(p) {
            0 => None,
            l => Some(l as usize),
        })
        .collect())
}
