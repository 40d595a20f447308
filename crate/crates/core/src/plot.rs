//! Static CSV and SVG renderings of the moment image.

use crate::construction::{moment_j, DelzantData};
use crate::geometry;
use crate::verify::Sample;
use nalgebra::DVector;
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlotError {
    #[error("SVG output needs a 2-dimensional polytope, got dimension {0}")]
    DimensionUnsupported(usize),
}

/// `Φ(z)` for each sample.
pub fn images(dd: &DelzantData, samples: &[Sample]) -> Vec<Vec<f64>> {
    samples
        .iter()
        .map(|s| {
            let j = DVector::from_vec(moment_j(&s.z, dd).expect("sample has length d"));
            dd.solve_mu(&j).iter().copied().collect()
        })
        .collect()
}

/// One row per sample: the drawn `μ`, then `Φ(z)`.
pub fn render_csv(dd: &DelzantData, samples: &[Sample]) -> String {
    let n = dd.dim();
    let mut out = String::new();
    let header: Vec<String> = (1..=n)
        .map(|i| format!("mu_{i}"))
        .chain((1..=n).map(|i| format!("phi_{i}")))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for (s, phi) in samples.iter().zip(images(dd, samples)) {
        let row: Vec<String> = s.mu.iter().chain(&phi).map(|x| x.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;

/// Polytope outline with the images scattered over it; n = 2 only.
pub fn render_svg(dd: &DelzantData, samples: &[Sample]) -> Result<String, PlotError> {
    if dd.dim() != 2 {
        return Err(PlotError::DimensionUnsupported(dd.dim()));
    }
    let eps = dd.precision();
    let corners: Vec<[f64; 2]> = dd
        .polytope()
        .vertices()
        .iter()
        .map(|v| [v.point[0].eval(eps).mid(), v.point[1].eval(eps).mid()])
        .collect();
    let outline = geometry::order_counter_clockwise(&corners);

    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in &outline {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let map = |p: [f64; 2]| {
        (
            MARGIN + (p[0] - lo[0]) * scale,
            SIZE - MARGIN - (p[1] - lo[1]) * scale,
        )
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let points: Vec<String> = outline
        .iter()
        .map(|&p| {
            let (x, y) = map(p);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(
        svg,
        r#"<polygon id="outline" points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        points.join(" ")
    );
    let _ = writeln!(
        svg,
        r#"<g id="images" fill="steelblue" fill-opacity="0.5">"#
    );
    for phi in images(dd, samples) {
        let (x, y) = map([phi[0], phi[1]]);
        let _ = writeln!(svg, r#"<circle cx="{x:.3}" cy="{y:.3}" r="1"/>"#);
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}
