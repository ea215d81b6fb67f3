use std::fs;

use visclust::data::{format_dataset, gen_blobs, gen_circles, gen_moons, gen_single_gaussian, pad_dimensions};
use visclust::rng::{stream, Purpose};
use visclust::Dataset;

use crate::args::{Family, SynthArgs};
use crate::Failure;

pub fn generate(a: &SynthArgs) -> Result<Dataset, Failure> {
    let mut rng = stream(a.seed.seed, Purpose::Generate, 0);
    let planar = |x: Dataset, rng: &mut visclust::rng::Rng| -> Result<Dataset, Failure> {
        match a.dims {
            None | Some(2) => Ok(x),
            Some(d) if d > 2 => Ok(pad_dimensions(&x, d, rng)?),
            Some(d) => Err(Failure::Usage(format!("{d} dimensions is below the family's 2"))),
        }
    };
    let x = match a.family {
        Family::Blobs => gen_blobs(a.points, a.dims.unwrap_or(5), a.clusters, a.std.unwrap_or(0.05), &mut rng)?.data,
        Family::Circles => {
            let x = gen_circles(a.points, a.std.unwrap_or(0.05), &mut rng)?;
            planar(x, &mut rng)?
        }
        Family::Moons => {
            let x = gen_moons(a.points, a.std.unwrap_or(0.05), &mut rng)?;
            planar(x, &mut rng)?
        }
        Family::Gaussian => gen_single_gaussian(a.points, a.dims.unwrap_or(2), a.std.unwrap_or(1.0), &mut rng)?,
    };
    Ok(x)
}

pub fn run(a: &SynthArgs) -> Result<(), Failure> {
    let text = format_dataset(&generate(a)?);
    match &a.output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
