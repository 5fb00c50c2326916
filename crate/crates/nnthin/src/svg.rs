//! Plots a 2-D dataset as an SVG document: spanning-tree edges underneath,
//! one dot per point colored by label, and a highlight ring around each
//! point that survived condensation.

use std::path::Path;

use crate::condense::RelevantSet;
use crate::geom::LabeledDataset;
use crate::mst::MstEdge;
use crate::{Error, Result};

/// Fill colors cycled by label id.
const PALETTE: [&str; 8] = [
    "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Renders the dataset to an SVG string. Only 2-D data can be drawn.
/// Output is byte-identical for identical inputs.
pub fn render_svg(data: &LabeledDataset, result: &RelevantSet, tree: &[MstEdge]) -> Result<String> {
    if data.dim() != 2 {
        return Err(Error::UnsupportedDimension {
            expected: 2,
            got: data.dim(),
        });
    }
    for e in tree {
        if e.u >= data.len() || e.v >= data.len() {
            return Err(Error::IndexOutOfBounds {
                index: e.u.max(e.v),
                len: data.len(),
            });
        }
    }
    for (i, _) in result.iter() {
        if i >= data.len() {
            return Err(Error::IndexOutOfBounds {
                index: i,
                len: data.len(),
            });
        }
    }

    let (lo, hi) = data.bounding_box();
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    // 5% margin on each side; a degenerate span still gets breathing room.
    let margin = if span > 0.0 { span * 0.05 } else { 1.0 };
    let width = (hi[0] - lo[0]) + 2.0 * margin;
    let height = (hi[1] - lo[1]) + 2.0 * margin;
    // SVG y grows downward; flip about the box midline so the plot reads
    // with y growing upward.
    let flip = |y: f64| lo[1] + hi[1] - y;

    let dot = span.max(1.0) * 0.012;
    let ring = dot * 1.9;
    let stroke = dot * 0.35;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        lo[0] - margin,
        flip(hi[1]) - margin,
        width,
        height
    ));
    out.push_str(&format!(
        "<g stroke=\"#999999\" stroke-width=\"{stroke}\">\n"
    ));
    for e in tree {
        let a = data.point(e.u).coords();
        let b = data.point(e.v).coords();
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
            a[0],
            flip(a[1]),
            b[0],
            flip(b[1])
        ));
    }
    out.push_str("</g>\n<g class=\"relevant\" fill=\"none\" stroke=\"#222222\">\n");
    for (i, _) in result.iter() {
        let p = data.point(i).coords();
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{ring}\" stroke-width=\"{stroke}\"/>\n",
            p[0],
            flip(p[1])
        ));
    }
    out.push_str("</g>\n<g class=\"points\" stroke=\"none\">\n");
    for i in 0..data.len() {
        let p = data.point(i).coords();
        let color = PALETTE[data.label_id(i) as usize % PALETTE.len()];
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{dot}\" fill=\"{color}\"/>\n",
            p[0],
            flip(p[1])
        ));
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

pub fn write_svg(
    data: &LabeledDataset,
    result: &RelevantSet,
    tree: &[MstEdge],
    path: &Path,
) -> Result<()> {
    let text = render_svg(data, result, tree)?;
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
