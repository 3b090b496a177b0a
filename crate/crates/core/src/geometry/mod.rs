//! Segment realizations of the construction with exact rational
//! coordinates.
//!
//! [`build_representation`] lays out a family whose intersection graph is
//! the structure's graph, with one axis-parallel rectangle per probe that is
//! met by exactly the probe's segments. [`replicate`] turns every segment
//! into `w(v)` parallel translates. [`certify_representation`] recomputes
//! everything with exact predicates and is the ground truth for both.

mod layout;
mod predicates;
mod replicate;
mod svg;

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

pub use layout::{build_representation, build_representation_with, DEFAULT_GEOMETRY_CAP};
pub use predicates::segments_intersect;
pub use replicate::replicate;
pub use svg::export_svg;

use crate::certificate::{Certificate, Witness};
use crate::construction::{Probe, Provenance};
use crate::error::GeometryError;
use crate::graph::{Graph, VertexId};
use crate::rational::{format_q, parse_q, Q};

use predicates::{contact, crossing_parameter, Contact, IPoint, IRect, ISeg};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
    pub label: VertexId,
    /// 0 for an original segment, `1..=w(v)` for replicated copies.
    pub copy: u32,
}

impl Segment {
    pub fn new(a: Point, b: Point, label: VertexId, copy: u32) -> Self {
        Segment { a, b, label, copy }
    }
}

/// Open axis-parallel rectangle assigned to one probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeRectangle {
    pub x0: Q,
    pub y0: Q,
    pub x1: Q,
    pub y1: Q,
    pub probe: usize,
}

/// Segments (sorted by label, then copy), probe rectangles and the probe
/// sets they realize.
#[derive(Clone, Debug)]
pub struct SegmentFamily {
    segments: Vec<Segment>,
    rectangles: Vec<ProbeRectangle>,
    probes: Vec<Probe>,
    provenance: Vec<Provenance>,
}

impl SegmentFamily {
    /// Rejects zero-length and duplicate segments. `provenance` is indexed
    /// by label and may be empty.
    pub fn new(
        mut segments: Vec<Segment>,
        rectangles: Vec<ProbeRectangle>,
        probes: Vec<Probe>,
        provenance: Vec<Provenance>,
    ) -> Result<Self, GeometryError> {
        segments.sort_by_key(|s| (s.label, s.copy));
        let mut seen = HashSet::new();
        for s in &segments {
            if s.a == s.b {
                return Err(GeometryError::DegenerateSegment(s.label));
            }
            let key = if (&s.a.x, &s.a.y) <= (&s.b.x, &s.b.y) {
                (s.a.clone(), s.b.clone())
            } else {
                (s.b.clone(), s.a.clone())
            };
            if !seen.insert(key) {
                return Err(GeometryError::DuplicateSegment(s.label));
            }
        }
        Ok(SegmentFamily {
            segments,
            rectangles,
            probes,
            provenance,
        })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn rectangles(&self) -> &[ProbeRectangle] {
        &self.rectangles
    }

    pub fn probes(&self) -> &[Probe] {
        &self.probes
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Number of distinct labels.
    pub fn label_count(&self) -> usize {
        self.segments.iter().map(|s| s.label).max().map_or(0, |m| m as usize + 1)
    }

    pub fn is_replicated(&self) -> bool {
        self.segments.iter().any(|s| s.copy > 0)
    }

    pub(crate) fn with_segments(&self, segments: Vec<Segment>) -> Result<Self, GeometryError> {
        SegmentFamily::new(
            segments,
            self.rectangles.clone(),
            self.probes.clone(),
            self.provenance.clone(),
        )
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            segments: self
                .segments
                .iter()
                .map(|s| SegmentJson {
                    ax: format_q(&s.a.x),
                    ay: format_q(&s.a.y),
                    bx: format_q(&s.b.x),
                    by: format_q(&s.b.y),
                    label: s.label,
                    copy: s.copy,
                })
                .collect(),
            rectangles: self
                .rectangles
                .iter()
                .map(|r| RectangleJson {
                    x0: format_q(&r.x0),
                    y0: format_q(&r.y0),
                    x1: format_q(&r.x1),
                    y1: format_q(&r.y1),
                    probe: r.probe,
                })
                .collect(),
        }
    }

    /// Rebuilds a family from its JSON form; probes come from the structure
    /// the family realizes.
    pub fn from_json(json: &FamilyJson, probes: Vec<Probe>) -> Result<Self, FamilyParseError> {
        let num = |s: &str| parse_q(s).ok_or_else(|| FamilyParseError(s.to_string()));
        let mut segments = Vec::with_capacity(json.segments.len());
        for s in &json.segments {
            segments.push(Segment::new(
                Point::new(num(&s.ax)?, num(&s.ay)?),
                Point::new(num(&s.bx)?, num(&s.by)?),
                s.label,
                s.copy,
            ));
        }
        let mut rectangles = Vec::with_capacity(json.rectangles.len());
        for r in &json.rectangles {
            rectangles.push(ProbeRectangle {
                x0: num(&r.x0)?,
                y0: num(&r.y0)?,
                x1: num(&r.x1)?,
                y1: num(&r.y1)?,
                probe: r.probe,
            });
        }
        SegmentFamily::new(segments, rectangles, probes, Vec::new())
            .map_err(|e| FamilyParseError(e.to_string()))
    }

    /// Common denominator of every coordinate.
    fn scale(&self) -> BigInt {
        let mut d = BigInt::one();
        let coords = self
            .segments
            .iter()
            .flat_map(|s| [&s.a.x, &s.a.y, &s.b.x, &s.b.y])
            .chain(self.rectangles.iter().flat_map(|r| [&r.x0, &r.y0, &r.x1, &r.y1]));
        for c in coords {
            d = d.lcm(c.denom());
        }
        d
    }

    /// Integer coordinates after scaling by the common denominator.
    fn integer_form(&self) -> (Vec<ISeg>, Vec<IRect>) {
        let scale = self.scale();
        let int = |x: &Q| x.numer() * (&scale / x.denom());
        let pt = |p: &Point| IPoint { x: int(&p.x), y: int(&p.y) };
        let segs = self.segments.iter().map(|s| ISeg::new(pt(&s.a), pt(&s.b))).collect();
        let rects = self
            .rectangles
            .iter()
            .map(|r| IRect { x0: int(&r.x0), y0: int(&r.y0), x1: int(&r.x1), y1: int(&r.y1) })
            .collect();
        (segs, rects)
    }

    /// Segment pairs that meet, with their contact kind.
    fn contacts(segs: &[ISeg]) -> Vec<(usize, usize, Contact)> {
        let mut order: Vec<usize> = (0..segs.len()).collect();
        order.sort_by(|&i, &j| segs[i].min_x.cmp(&segs[j].min_x));
        let mut out = Vec::new();
        // sweep on x so that only pairs with overlapping x-ranges are tested
        for (pos, &i) in order.iter().enumerate() {
            for &j in &order[pos + 1..] {
                if segs[j].min_x > segs[i].max_x {
                    break;
                }
                let c = contact(&segs[i], &segs[j]);
                if c != Contact::Disjoint {
                    out.push((i.min(j), i.max(j), c));
                }
            }
        }
        out.sort_unstable_by_key(|&(i, j, _)| (i, j));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed family JSON: {0}")]
pub struct FamilyParseError(pub String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentJson {
    pub ax: String,
    pub ay: String,
    pub bx: String,
    pub by: String,
    pub label: VertexId,
    pub copy: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangleJson {
    pub x0: String,
    pub y0: String,
    pub x1: String,
    pub y1: String,
    pub probe: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub segments: Vec<SegmentJson>,
    pub rectangles: Vec<RectangleJson>,
}

/// Intersection graph: vertex `i` is the `i`-th segment of the family.
pub fn intersection_graph(f: &SegmentFamily) -> Graph {
    let (segs, _) = f.integer_form();
    let edges = SegmentFamily::contacts(&segs)
        .into_iter()
        .map(|(i, j, _)| (i as VertexId, j as VertexId))
        .collect();
    Graph::from_sorted_unique(segs.len(), edges)
}

/// Checks that the family's intersection graph equals `expected` (segment
/// `i` is vertex `i`), that every probe rectangle is met by exactly the
/// segments labeled by its probe and holds no endpoint, and that the family
/// is in general position: distinct endpoints, proper crossings only, no
/// three segments through one point.
pub fn certify_representation(f: &SegmentFamily, expected: &Graph) -> Certificate {
    let start = Instant::now();
    let name = "representation";
    let (segs, rects) = f.integer_form();
    let fail = |w: Witness| Certificate::fail(name, w).timed(start);

    if segs.len() != expected.vertex_count() {
        return fail(Witness::Note(format!(
            "{} segments for {} vertices",
            segs.len(),
            expected.vertex_count()
        )));
    }

    let mut endpoints = HashMap::new();
    for (i, s) in segs.iter().enumerate() {
        for p in [&s.a, &s.b] {
            if let Some(&j) = endpoints.get(p) {
                return fail(Witness::SegmentPair(j, i));
            }
            endpoints.insert(p.clone(), i);
        }
    }

    let contacts = SegmentFamily::contacts(&segs);
    let mut edges = Vec::with_capacity(contacts.len());
    for &(i, j, c) in &contacts {
        if c != Contact::Proper {
            return fail(Witness::SegmentPair(i, j));
        }
        if !expected.has_edge(i as VertexId, j as VertexId) {
            return fail(Witness::SegmentPair(i, j));
        }
        edges.push((i as VertexId, j as VertexId));
    }
    if edges.len() != expected.edge_count() {
        let found: HashSet<_> = edges.iter().copied().collect();
        let missing = expected.edges().iter().find(|e| !found.contains(e)).unwrap();
        return fail(Witness::SegmentPair(missing.0 as usize, missing.1 as usize));
    }

    // no three concurrent: crossing points along each segment are distinct
    let mut along: Vec<Vec<Q>> = vec![Vec::new(); segs.len()];
    for &(i, j, _) in &contacts {
        along[i].push(crossing_parameter(&segs[i], &segs[j]));
        along[j].push(crossing_parameter(&segs[j], &segs[i]));
    }
    for (i, ts) in along.iter_mut().enumerate() {
        ts.sort();
        if ts.windows(2).any(|w| w[0] == w[1]) {
            return fail(Witness::Note(format!("three segments concurrent on segment {i}")));
        }
    }

    for (r, rect) in f.rectangles.iter().zip(&rects) {
        let Some(probe) = f.probes.get(r.probe) else {
            return fail(Witness::Note(format!("rectangle for unknown probe {}", r.probe)));
        };
        if r.x0 >= r.x1 || r.y0 >= r.y1 {
            return fail(Witness::Note(format!("empty rectangle for probe {}", r.probe)));
        }
        for (i, (s, seg)) in segs.iter().zip(&f.segments).enumerate() {
            if rect.contains(&s.a) || rect.contains(&s.b) {
                return fail(Witness::Note(format!(
                    "endpoint of segment {i} inside rectangle of probe {}",
                    r.probe
                )));
            }
            if rect.meets(s) != probe.contains(seg.label) {
                return fail(Witness::Note(format!(
                    "segment {i} (vertex {}) vs rectangle of probe {}",
                    seg.label, r.probe
                )));
            }
        }
    }

    Certificate::pass(name)
        .with_bound("segments", segs.len())
        .with_bound("crossings", edges.len())
        .with_bound("rectangles", rects.len())
        .with_bound("scale_bits", f.scale().bits())
        .timed(start)
}

/// Bit length of the common denominator of all coordinates.
pub fn coordinate_bits(f: &SegmentFamily) -> u64 {
    f.scale().bits()
}
