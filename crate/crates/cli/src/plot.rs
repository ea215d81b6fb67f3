use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use visclust::data::{load_delimited, load_labels, scale_minmax, LoadOptions};
use visclust::projections::{project, ProjectionSet};
use visclust::Dataset;

use crate::args::{PlotArgs, PlotProjection};
use crate::Failure;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
    "#17becf",
];

/// Color for the `i`-th distinct label.
fn color(i: usize) -> String {
    match PALETTE.get(i) {
        Some(c) => c.to_string(),
        // Golden-angle hue steps keep later colors apart.
        None => format!("hsl({:.1},65%,45%)", (i as f64 * 137.508) % 360.0),
    }
}

/// Two plotting coordinates per point.
pub fn coordinates(
    x: &Dataset,
    how: PlotProjection,
    seed: u64,
    embedding: Option<&Dataset>,
) -> Result<Vec<[f64; 2]>, Failure> {
    let pick = |d: &Dataset| -> Vec<[f64; 2]> {
        d.rows().map(|r| [r[0], r.get(1).copied().unwrap_or(0.0)]).collect()
    };
    match how {
        PlotProjection::First2 => Ok(pick(x)),
        PlotProjection::SeededRandom => {
            if x.dims() < 2 {
                return Ok(pick(x));
            }
            let q = ProjectionSet::nth(seed, 2, x.dims(), 0)?;
            Ok(pick(&project(&q, &scale_minmax(x))?))
        }
        PlotProjection::Embedding => {
            let e = embedding.ok_or_else(|| Failure::Usage("--projection embedding needs --embedding".into()))?;
            if e.len() != x.len() {
                return Err(Failure::Usage(format!("embedding has {} rows for {} points", e.len(), x.len())));
            }
            Ok(pick(e))
        }
    }
}

/// Scatter plot with one fill color per distinct label.
pub fn render_svg<L: Ord + Copy + std::fmt::Display>(points: &[[f64; 2]], labels: &[L]) -> String {
    let colors: BTreeMap<L, String> = labels
        .iter()
        .copied()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, l)| (l, color(i)))
        .collect();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in points {
        for a in 0..2 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let span: Vec<f64> = (0..2).map(|a| if hi[a] > lo[a] { hi[a] - lo[a] } else { 1.0 }).collect();
    let inner = SIZE - 2.0 * MARGIN;
    let sx = |v: f64| MARGIN + (v - lo[0]) / span[0] * inner;
    let sy = |v: f64| SIZE - MARGIN - (v - lo[1]) / span[1] * inner;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    let (x0, x1, y0, y1) = (MARGIN, SIZE - MARGIN, MARGIN, SIZE - MARGIN);
    for (a, b, c, d) in [(x0, y1, x1, y1), (x0, y0, x0, y1), (x0, y0, x1, y0), (x1, y0, x1, y1)] {
        writeln!(out, r##"<line x1="{a}" y1="{b}" x2="{c}" y2="{d}" stroke="#444444"/>"##).unwrap();
    }
    writeln!(out, r#"<text x="{x0}" y="{}" font-size="11">{:.3}</text>"#, y1 + 16.0, lo[0]).unwrap();
    writeln!(out, r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{:.3}</text>"#, x1, y1 + 16.0, hi[0]).unwrap();
    writeln!(out, r#"<text x="4" y="{y1}" font-size="11">{:.3}</text>"#, lo[1]).unwrap();
    writeln!(out, r#"<text x="4" y="{}" font-size="11">{:.3}</text>"#, y0 + 4.0, hi[1]).unwrap();
    for (p, l) in points.iter().zip(labels) {
        writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{}"><title>{l}</title></circle>"#,
            sx(p[0]),
            sy(p[1]),
            colors[l]
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_svg<L: Ord + Copy + std::fmt::Display>(path: &Path, points: &[[f64; 2]], labels: &[L]) -> Result<(), Failure> {
    fs::write(path, render_svg(points, labels))
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

pub fn run(a: &PlotArgs) -> Result<(), Failure> {
    let x = load_delimited(&a.input, &LoadOptions::default())?;
    let labels = load_labels(&a.labels)?;
    if labels.len() != x.len() {
        return Err(Failure::Usage(format!("{} labels for {} points", labels.len(), x.len())));
    }
    let embedding = match &a.embedding {
        Some(p) => Some(load_delimited(p, &LoadOptions::default())?),
        None => None,
    };
    let points = coordinates(&x, a.projection, a.seed.seed, embedding.as_ref())?;
    write_svg(&a.output, &points, &labels)
}
