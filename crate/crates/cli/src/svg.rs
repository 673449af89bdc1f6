//! Static SVG drawings on an 800×800 canvas. Shapes are scaled so that the
//! polygon has unit diameter (frames: longest vector has length ½) and are
//! centred; coordinates are written with six decimals.

use std::fmt::Write;

use optiframe::frames::Frame;
use optiframe::geometry::{diameter, ConvexPolygon, Vec2};
use optiframe::numfmt::fmt_fixed;

const SIZE: f64 = 800.0;
/// Pixels per unit length after normalisation.
const SCALE: f64 = 0.8 * SIZE;
const DIAMETER_REL_TOL: f64 = 1e-9;

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#
    );
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="800" height="800" fill="#ffffff"/>"##
    );
}

fn px(p: Vec2) -> (String, String) {
    (
        fmt_fixed(SIZE / 2.0 + SCALE * p.x, 6),
        fmt_fixed(SIZE / 2.0 - SCALE * p.y, 6),
    )
}

/// Unit-diameter copy of the vertices, centred on the bounding box.
fn normalised(polygon: &ConvexPolygon) -> Vec<Vec2> {
    let d = diameter(polygon);
    let vs = polygon.vertices();
    let (mut lo, mut hi) = (vs[0], vs[0]);
    for v in vs {
        lo = Vec2::new(lo.x.min(v.x), lo.y.min(v.y));
        hi = Vec2::new(hi.x.max(v.x), hi.y.max(v.y));
    }
    let centre = (lo + hi) * 0.5;
    vs.iter().map(|&v| (v - centre) * (1.0 / d)).collect()
}

pub fn polygon_svg(polygon: &ConvexPolygon) -> String {
    let vs = normalised(polygon);
    let mut out = String::new();
    header(&mut out);
    let points: Vec<String> = vs
        .iter()
        .map(|&v| {
            let (x, y) = px(v);
            format!("{x},{y}")
        })
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="#eef3fb" stroke="#1f3b73" stroke-width="2"/>"##,
        points.join(" ")
    );
    for (i, j) in polygon.diameter_pairs(DIAMETER_REL_TOL) {
        let (x1, y1) = px(vs[i]);
        let (x2, y2) = px(vs[j]);
        let _ = writeln!(
            out,
            r##"<line class="diameter" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#b03a2e" stroke-width="1" stroke-dasharray="6 4"/>"##
        );
    }
    for &v in &vs {
        let (x, y) = px(v);
        let _ = writeln!(out, r##"<circle cx="{x}" cy="{y}" r="3" fill="#1f3b73"/>"##);
    }
    out.push_str("</svg>\n");
    out
}

pub fn frame_svg(frame: &Frame) -> String {
    let longest = frame.vectors().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let k = if longest > 0.0 { 0.5 / longest } else { 1.0 };
    let mut out = String::new();
    header(&mut out);
    out.push_str(
        r##"<defs><marker id="head" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="8" markerHeight="8" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="#1f3b73"/></marker></defs>"##,
    );
    out.push('\n');
    let (cx, cy) = px(Vec2::ZERO);
    let radius = fmt_fixed(0.5 * SCALE, 6);
    let _ = writeln!(
        out,
        r##"<circle cx="{cx}" cy="{cy}" r="{radius}" fill="none" stroke="#999999" stroke-width="1" stroke-dasharray="2 4"/>"##
    );
    for &v in frame.vectors() {
        let (x2, y2) = px(v * k);
        let _ = writeln!(
            out,
            r##"<line class="vector" x1="{cx}" y1="{cy}" x2="{x2}" y2="{y2}" stroke="#1f3b73" stroke-width="2" marker-end="url(#head)"/>"##
        );
    }
    out.push_str("</svg>\n");
    out
}
