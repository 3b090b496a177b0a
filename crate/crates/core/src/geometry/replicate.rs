use num_traits::{Signed, Zero};

use crate::error::GeometryError;
use crate::graph::{blow_up, Graph, WeightMap};
use crate::rational::{qi, Q};

use super::{certify_representation, Point, Segment, SegmentFamily};

const MAX_HALVINGS: u32 = 64;

/// Replaces the segment of each vertex `v` by `w(v)` horizontal translates
/// `0, d, 2d, ...`. The offset `d` starts at the smallest gap between
/// distinct x-coordinates in the family divided by `4 * max weight`; the
/// result is certified against the blow-up of `source` and `d` is halved
/// until it passes.
pub fn replicate(
    f: &SegmentFamily,
    source: &Graph,
    w: &WeightMap,
) -> Result<SegmentFamily, GeometryError> {
    if w.len() != f.label_count() {
        return Err(GeometryError::WeightMismatch {
            weights: w.len(),
            labels: f.label_count(),
        });
    }
    let expected = blow_up(source, w).graph;
    let mut offset = initial_offset(f, w);
    for _ in 0..MAX_HALVINGS {
        let candidate = translate(f, w, &offset)?;
        if certify_representation(&candidate, &expected).passed() {
            return Ok(candidate);
        }
        offset /= qi(2);
    }
    Err(GeometryError::ReplicationCollision {
        attempts: MAX_HALVINGS,
    })
}

fn initial_offset(f: &SegmentFamily, w: &WeightMap) -> Q {
    let mut xs: Vec<&Q> = f
        .segments()
        .iter()
        .flat_map(|s| [&s.a.x, &s.b.x])
        .chain(f.rectangles().iter().flat_map(|r| [&r.x0, &r.x1]))
        .collect();
    xs.sort();
    xs.dedup();
    let gap = xs
        .windows(2)
        .map(|p| p[1] - p[0])
        .filter(|d| d.is_positive())
        .min()
        .unwrap_or_else(|| qi(1));
    gap / qi(4 * w.max().max(1) as i64)
}

fn translate(f: &SegmentFamily, w: &WeightMap, offset: &Q) -> Result<SegmentFamily, GeometryError> {
    let mut out = Vec::new();
    for s in f.segments() {
        for c in 1..=w.get(s.label) as u32 {
            let dx = offset * qi(c as i64 - 1);
            let shift = |p: &Point| {
                if dx.is_zero() {
                    p.clone()
                } else {
                    Point::new(&p.x + &dx, p.y.clone())
                }
            };
            out.push(Segment::new(shift(&s.a), shift(&s.b), s.label, c));
        }
    }
    f.with_segments(out)
}
