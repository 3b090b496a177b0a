use std::fmt::Write;

use num_traits::One;

use crate::construction::{Provenance, Step};
use crate::rational::{to_f64, Q};

use super::SegmentFamily;

const SIZE: f64 = 1000.0;
const PALETTE: [&str; 5] = ["#1f3b73", "#2e7d32", "#8e44ad", "#d35400", "#00838f"];
const DIAGONAL: &str = "#c0392b";

fn color(p: Option<&Provenance>) -> &'static str {
    match p {
        Some(p) if p.is_diagonal() => DIAGONAL,
        Some(p) => {
            let depth = p
                .steps()
                .iter()
                .filter(|s| matches!(s, Step::InCopyOf(_)))
                .count();
            PALETTE[depth % PALETTE.len()]
        }
        None => PALETTE[0],
    }
}

/// Deterministic SVG 1.1 rendering. Coordinates are mapped from the unit
/// frame to a 1000-unit square with y pointing up; exact values are
/// converted to floats here only.
pub fn export_svg(f: &SegmentFamily) -> String {
    let (lo_x, lo_y, span) = frame(f);
    let px = |x: &Q| (to_f64(&(x - &lo_x)) / span) * SIZE;
    let py = |y: &Q| SIZE - (to_f64(&(y - &lo_y)) / span) * SIZE;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    for r in f.rectangles() {
        let (x, y) = (px(&r.x0), py(&r.y1));
        let (w, h) = (px(&r.x1) - x, py(&r.y0) - y);
        let _ = writeln!(
            out,
            r##"<rect x="{x:.6}" y="{y:.6}" width="{w:.6}" height="{h:.6}" fill="#3070c0" fill-opacity="0.15" stroke="none" data-probe="{}"/>"##,
            r.probe
        );
    }
    for s in f.segments() {
        let c = color(f.provenance().get(s.label as usize));
        let _ = writeln!(
            out,
            r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="{c}" stroke-width="1" data-vertex="{}" data-copy="{}"/>"#,
            px(&s.a.x),
            py(&s.a.y),
            px(&s.b.x),
            py(&s.b.y),
            s.label,
            s.copy
        );
    }
    out.push_str("</svg>\n");
    out
}

// Square frame around all segments and rectangles.
fn frame(f: &SegmentFamily) -> (Q, Q, f64) {
    let xs = f
        .segments()
        .iter()
        .flat_map(|s| [&s.a.x, &s.b.x])
        .chain(f.rectangles().iter().flat_map(|r| [&r.x0, &r.x1]));
    let ys = f
        .segments()
        .iter()
        .flat_map(|s| [&s.a.y, &s.b.y])
        .chain(f.rectangles().iter().flat_map(|r| [&r.y0, &r.y1]));
    let (min_x, max_x) = bounds(xs);
    let (min_y, max_y) = bounds(ys);
    let span = to_f64(&(&max_x - &min_x)).max(to_f64(&(&max_y - &min_y)));
    let span = if span > 0.0 { span } else { 1.0 };
    (min_x, min_y, span)
}

fn bounds<'a>(values: impl Iterator<Item = &'a Q>) -> (Q, Q) {
    let mut lo: Option<Q> = None;
    let mut hi: Option<Q> = None;
    for v in values {
        if lo.as_ref().is_none_or(|l| v < l) {
            lo = Some(v.clone());
        }
        if hi.as_ref().is_none_or(|h| v > h) {
            hi = Some(v.clone());
        }
    }
    (lo.unwrap_or_else(Q::one), hi.unwrap_or_else(Q::one))
}
