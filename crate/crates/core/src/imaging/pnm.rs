//! Debug dumps of image stages as binary PGM (P5) / PBM (P4) files. 3-D
//! images are written one file per slice along the first axis, with the
//! slice number appended to the file stem.

use std::fs;
use std::path::{Path, PathBuf};

use super::{BinaryImage, GrayImage, Shape};
use crate::error::{Error, Result};

/// Grayscale dump, scaled so the brightest pixel is 255.
pub fn write_pgm(path: impl AsRef<Path>, img: &GrayImage) -> Result<Vec<PathBuf>> {
    let max = img.max();
    let scale = if max > 0.0 { 255.0 / max } else { 0.0 };
    let values = img.to_dense();
    write_slices(path.as_ref(), img.shape(), |height, width, offset| {
        let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
        out.extend(
            values[offset..offset + height * width]
                .iter()
                .map(|&v| (v * scale).round().clamp(0.0, 255.0) as u8),
        );
        out
    })
}

/// Bitmap dump; set pixels are black.
pub fn write_pbm(path: impl AsRef<Path>, img: &BinaryImage) -> Result<Vec<PathBuf>> {
    let grid = img.to_dense();
    write_slices(path.as_ref(), img.shape(), |height, width, offset| {
        let mut out = format!("P4\n{width} {height}\n").into_bytes();
        for row in grid[offset..offset + height * width].chunks_exact(width) {
            for byte in row.chunks(8) {
                let mut packed = 0u8;
                for (b, &v) in byte.iter().enumerate() {
                    packed |= (v & 1) << (7 - b);
                }
                out.push(packed);
            }
        }
        out
    })
}

fn write_slices(
    path: &Path,
    shape: &Shape,
    encode: impl Fn(usize, usize, usize) -> Vec<u8>,
) -> Result<Vec<PathBuf>> {
    let dims = shape.dims();
    let (slices, height, width) = match *dims {
        [h, w] => (None, h, w),
        [s, h, w] => (Some(s), h, w),
        _ => return Err(Error::InvalidDimension("only 2-D and 3-D images can be dumped".into())),
    };
    let mut written = Vec::new();
    match slices {
        None => {
            fs::write(path, encode(height, width, 0)).map_err(|e| Error::io(path, e))?;
            written.push(path.to_path_buf());
        }
        Some(n) => {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("slice");
            let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("pgm");
            for z in 0..n {
                let p = path.with_file_name(format!("{stem}_{z:04}.{ext}"));
                fs::write(&p, encode(height, width, z * height * width)).map_err(|e| Error::io(&p, e))?;
                written.push(p);
            }
        }
    }
    Ok(written)
}
