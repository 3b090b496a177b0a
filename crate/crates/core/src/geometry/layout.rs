//! Recursive segment layout.
//!
//! Every probe rectangle `R = [x0, x1] x [y0, y1]` of a level satisfies:
//!
//! * the segments meeting the closed rectangle are exactly the probe's
//!   segments, and each enters through the bottom side and leaves through
//!   the top side, strictly between `x0` and `x1`;
//! * the half-strip to the right of `R` (same y-range) is empty;
//! * rectangles of distinct probes have disjoint y-ranges.
//!
//! The next level keeps the current family as the base copy. Inside each
//! base rectangle `R_P`, left of the probe's segments, a scaled copy of the
//! previous level is placed. For each rectangle `R_Q` of that copy the
//! diagonal `d_Q` runs corner to corner through `R_Q`, crossing exactly the
//! segments of `Q`. Near the bottom of `R_Q` the diagonal is left of the
//! `Q` segments and near the top it is right of them, so a thin band at the
//! bottom extended right to the edge of `R_P` is met by `P ∪ Q`, and a band
//! at the top by `P ∪ {d_Q}`. Both bands inherit the invariants above.

use num_traits::Zero;

use crate::construction::{build_structure, Structure};
use crate::error::GeometryError;
use crate::graph::VertexId;
use crate::rational::{q, Q};

use super::{Point, ProbeRectangle, Segment, SegmentFamily};

pub const DEFAULT_GEOMETRY_CAP: u32 = 4;

#[derive(Clone, Debug)]
struct Rect {
    x0: Q,
    y0: Q,
    x1: Q,
    y1: Q,
}

#[derive(Clone, Debug)]
struct Layout {
    // indexed by vertex id
    segs: Vec<(Point, Point)>,
    // indexed by probe
    rects: Vec<Rect>,
}

fn x_at(seg: &(Point, Point), y: &Q) -> Q {
    let (a, b) = seg;
    &a.x + (y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y)
}

// Leftmost / rightmost x of the given segments over the band [lo, hi].
fn min_x(segs: &[&(Point, Point)], lo: &Q, hi: &Q) -> Q {
    segs.iter()
        .flat_map(|s| [x_at(s, lo), x_at(s, hi)])
        .min()
        .expect("probe is nonempty")
}

fn max_x(segs: &[&(Point, Point)], lo: &Q, hi: &Q) -> Q {
    segs.iter()
        .flat_map(|s| [x_at(s, lo), x_at(s, hi)])
        .max()
        .expect("probe is nonempty")
}

fn level_one() -> Layout {
    Layout {
        segs: vec![(Point::new(q(1, 2), q(0, 1)), Point::new(q(1, 2), q(1, 1)))],
        rects: vec![Rect {
            x0: q(1, 4),
            y0: q(1, 4),
            x1: q(3, 4),
            y1: q(3, 4),
        }],
    }
}

/// Affine map of the unit frame onto a box.
struct Placement {
    x0: Q,
    y0: Q,
    sx: Q,
    sy: Q,
}

impl Placement {
    fn point(&self, p: &Point) -> Point {
        Point::new(&self.x0 + &p.x * &self.sx, &self.y0 + &p.y * &self.sy)
    }

    fn rect(&self, r: &Rect) -> Rect {
        Rect {
            x0: &self.x0 + &r.x0 * &self.sx,
            y0: &self.y0 + &r.y0 * &self.sy,
            x1: &self.x0 + &r.x1 * &self.sx,
            y1: &self.y0 + &r.y1 * &self.sy,
        }
    }
}

fn next_level(prev: &Layout, prev_structure: &Structure) -> Layout {
    let probes = &prev_structure.probes;
    let mut segs = prev.segs.clone();
    let mut placements = Vec::with_capacity(probes.len());

    for (rect, probe) in prev.rects.iter().zip(probes) {
        let members: Vec<&(Point, Point)> =
            probe.members().iter().map(|&v| &prev.segs[v as usize]).collect();
        let free_right = min_x(&members, &rect.y0, &rect.y1);
        let width = &free_right - &rect.x0;
        let height = &rect.y1 - &rect.y0;
        let place = Placement {
            x0: &rect.x0 + &width * q(1, 4),
            y0: &rect.y0 + &height * q(1, 4),
            sx: &width * q(1, 2),
            sy: &height * q(1, 2),
        };
        segs.extend(prev.segs.iter().map(|(a, b)| (place.point(a), place.point(b))));
        placements.push(place);
    }

    let n0 = prev.segs.len();
    let mut rects = Vec::with_capacity(2 * probes.len() * probes.len());
    for (i, (outer, place)) in prev.rects.iter().zip(&placements).enumerate() {
        let offset = n0 + i * n0;
        for (inner_rect, inner) in prev.rects.iter().zip(probes) {
            let rq = place.rect(inner_rect);
            segs.push((
                Point::new(rq.x0.clone(), rq.y0.clone()),
                Point::new(rq.x1.clone(), rq.y1.clone()),
            ));
            let members: Vec<&(Point, Point)> = inner
                .members()
                .iter()
                .map(|&v| &segs[offset + v as usize])
                .collect();
            let (with_q, with_diag) = split_bands(&rq, &members, &outer.x1);
            rects.push(with_q);
            rects.push(with_diag);
        }
    }
    Layout { segs, rects }
}

// The two new probe rectangles inside the band of `rq`: the bottom one
// (diagonal to the left, cut away) and the top one (`Q` segments to the
// left, cut away). Both extend right to `right`.
fn split_bands(rq: &Rect, q_segs: &[&(Point, Point)], right: &Q) -> (Rect, Rect) {
    let w = &rq.x1 - &rq.x0;
    let h = &rq.y1 - &rq.y0;
    let diag_x = |y: &Q| &rq.x0 + (y - &rq.y0) * &w / &h;

    let mut a = &h * q(1, 5);
    let bottom = loop {
        let lo = &rq.y0 + &a;
        let hi = &rq.y0 + &a * q(2, 1);
        let d = diag_x(&hi);
        let segs_left = min_x(q_segs, &lo, &hi);
        if d < segs_left {
            break Rect {
                x0: (d + segs_left) * q(1, 2),
                y0: lo,
                x1: right.clone(),
                y1: hi,
            };
        }
        a *= q(1, 2);
    };

    let mut a = &h * q(1, 5);
    let top = loop {
        let lo = &rq.y1 - &a * q(2, 1);
        let hi = &rq.y1 - &a;
        let d = diag_x(&lo);
        let segs_right = max_x(q_segs, &lo, &hi);
        if segs_right < d {
            break Rect {
                x0: (d + segs_right) * q(1, 2),
                y0: lo,
                x1: right.clone(),
                y1: hi,
            };
        }
        a *= q(1, 2);
    };
    (bottom, top)
}

// Completion diagonals: each probe rectangle keeps its lower quarter as the
// probe rectangle; the diagonal of its upper half crosses exactly the
// probe's segments.
fn complete(layout: &Layout) -> Layout {
    let mut segs = layout.segs.clone();
    let mut rects = Vec::with_capacity(layout.rects.len());
    for r in &layout.rects {
        let mid = (&r.y0 + &r.y1) * q(1, 2);
        segs.push((
            Point::new(r.x0.clone(), mid.clone()),
            Point::new(r.x1.clone(), r.y1.clone()),
        ));
        rects.push(Rect {
            x0: r.x0.clone(),
            y0: r.y0.clone(),
            x1: r.x1.clone(),
            y1: (&r.y0 + &mid) * q(1, 2),
        });
    }
    Layout { segs, rects }
}

pub fn build_representation(s: &Structure) -> Result<SegmentFamily, GeometryError> {
    build_representation_with(s, DEFAULT_GEOMETRY_CAP)
}

/// Lays out level `s.k` (completed if `s.tilde`) with vertex ids and probe
/// indices in construction order. The result should be checked with
/// [`super::certify_representation`].
pub fn build_representation_with(s: &Structure, cap: u32) -> Result<SegmentFamily, GeometryError> {
    if s.k > cap {
        return Err(GeometryError::LevelTooLargeForGeometry { k: s.k, cap });
    }
    let mut layout = level_one();
    for j in 1..s.k {
        let prev = build_structure(j).expect("levels within the geometry cap are buildable");
        layout = next_level(&layout, &prev);
    }
    if s.tilde {
        layout = complete(&layout);
    }
    debug_assert!(layout.rects.iter().all(|r| !(&r.x1 - &r.x0).is_zero()));

    let segments = layout
        .segs
        .into_iter()
        .enumerate()
        .map(|(v, (a, b))| Segment::new(a, b, v as VertexId, 0))
        .collect();
    let rectangles = layout
        .rects
        .into_iter()
        .enumerate()
        .map(|(probe, r)| ProbeRectangle {
            x0: r.x0,
            y0: r.y0,
            x1: r.x1,
            y1: r.y1,
            probe,
        })
        .collect();
    SegmentFamily::new(segments, rectangles, s.probes.clone(), s.provenance.clone())
}
