//! Exact orientation-based predicates.
//!
//! [`segments_intersect`] works directly on rationals. The bulk routines in
//! the family code first scale every coordinate by a common denominator and
//! use the integer versions below, which skip the gcd normalizations.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::Q;

use super::{Point, Segment};

fn orient_q(a: &Point, b: &Point, c: &Point) -> Ordering {
    let det = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    det.cmp(&Q::zero())
}

fn on_segment_q(a: &Point, b: &Point, p: &Point) -> bool {
    // p is collinear with a-b; check the bounding box
    p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// True iff the closed segments share at least one point.
pub fn segments_intersect(s1: &Segment, s2: &Segment) -> bool {
    let (p1, p2, p3, p4) = (&s1.a, &s1.b, &s2.a, &s2.b);
    let d1 = orient_q(p3, p4, p1);
    let d2 = orient_q(p3, p4, p2);
    let d3 = orient_q(p1, p2, p3);
    let d4 = orient_q(p1, p2, p4);
    if d1 != d2 && d1 != Ordering::Equal && d2 != Ordering::Equal
        && d3 != d4 && d3 != Ordering::Equal && d4 != Ordering::Equal
    {
        return true;
    }
    (d1 == Ordering::Equal && on_segment_q(p3, p4, p1))
        || (d2 == Ordering::Equal && on_segment_q(p3, p4, p2))
        || (d3 == Ordering::Equal && on_segment_q(p1, p2, p3))
        || (d4 == Ordering::Equal && on_segment_q(p1, p2, p4))
}

/// Integer point after common-denominator scaling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct IPoint {
    pub x: BigInt,
    pub y: BigInt,
}

#[derive(Clone, Debug)]
pub(crate) struct ISeg {
    pub a: IPoint,
    pub b: IPoint,
    pub min_x: BigInt,
    pub max_x: BigInt,
    pub min_y: BigInt,
    pub max_y: BigInt,
}

impl ISeg {
    pub fn new(a: IPoint, b: IPoint) -> Self {
        let (min_x, max_x) = if a.x <= b.x { (a.x.clone(), b.x.clone()) } else { (b.x.clone(), a.x.clone()) };
        let (min_y, max_y) = if a.y <= b.y { (a.y.clone(), b.y.clone()) } else { (b.y.clone(), a.y.clone()) };
        ISeg { a, b, min_x, max_x, min_y, max_y }
    }

    fn boxes_overlap(&self, o: &ISeg) -> bool {
        self.min_x <= o.max_x && o.min_x <= self.max_x && self.min_y <= o.max_y && o.min_y <= self.max_y
    }
}

pub(crate) fn orient_i(a: &IPoint, b: &IPoint, c: &IPoint) -> Ordering {
    let det = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    det.sign_cmp()
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

fn on_segment_i(s: &ISeg, p: &IPoint) -> bool {
    p.x >= s.min_x && p.x <= s.max_x && p.y >= s.min_y && p.y <= s.max_y
}

/// How two closed segments meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Contact {
    Disjoint,
    /// Interiors cross at a single point, no endpoint involved.
    Proper,
    /// Touching at an endpoint or overlapping collinearly.
    Improper,
}

pub(crate) fn contact(s1: &ISeg, s2: &ISeg) -> Contact {
    if !s1.boxes_overlap(s2) {
        return Contact::Disjoint;
    }
    let d1 = orient_i(&s2.a, &s2.b, &s1.a);
    let d2 = orient_i(&s2.a, &s2.b, &s1.b);
    let d3 = orient_i(&s1.a, &s1.b, &s2.a);
    let d4 = orient_i(&s1.a, &s1.b, &s2.b);
    let eq = Ordering::Equal;
    if d1 != eq && d2 != eq && d3 != eq && d4 != eq {
        return if d1 != d2 && d3 != d4 { Contact::Proper } else { Contact::Disjoint };
    }
    let touches = (d1 == eq && on_segment_i(s2, &s1.a))
        || (d2 == eq && on_segment_i(s2, &s1.b))
        || (d3 == eq && on_segment_i(s1, &s2.a))
        || (d4 == eq && on_segment_i(s1, &s2.b));
    if touches {
        Contact::Improper
    } else {
        Contact::Disjoint
    }
}

/// Crossing parameter along `s1` of a proper crossing with `s2`, as a
/// rational in `(0, 1)`.
pub(crate) fn crossing_parameter(s1: &ISeg, s2: &ISeg) -> Q {
    let rx = &s1.b.x - &s1.a.x;
    let ry = &s1.b.y - &s1.a.y;
    let sx = &s2.b.x - &s2.a.x;
    let sy = &s2.b.y - &s2.a.y;
    let qpx = &s2.a.x - &s1.a.x;
    let qpy = &s2.a.y - &s1.a.y;
    let num = &qpx * &sy - &qpy * &sx;
    let den = &rx * &sy - &ry * &sx;
    Q::new(num, den)
}

/// Closed axis-parallel box in scaled integer coordinates.
#[derive(Clone, Debug)]
pub(crate) struct IRect {
    pub x0: BigInt,
    pub y0: BigInt,
    pub x1: BigInt,
    pub y1: BigInt,
}

impl IRect {
    pub fn contains(&self, p: &IPoint) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }

    fn edges(&self) -> [ISeg; 4] {
        let c = |x: &BigInt, y: &BigInt| IPoint { x: x.clone(), y: y.clone() };
        [
            ISeg::new(c(&self.x0, &self.y0), c(&self.x1, &self.y0)),
            ISeg::new(c(&self.x1, &self.y0), c(&self.x1, &self.y1)),
            ISeg::new(c(&self.x1, &self.y1), c(&self.x0, &self.y1)),
            ISeg::new(c(&self.x0, &self.y1), c(&self.x0, &self.y0)),
        ]
    }

    /// True iff the segment meets the closed box.
    pub fn meets(&self, s: &ISeg) -> bool {
        if s.max_x < self.x0 || s.min_x > self.x1 || s.max_y < self.y0 || s.min_y > self.y1 {
            return false;
        }
        self.contains(&s.a)
            || self.contains(&s.b)
            || self.edges().iter().any(|e| contact(e, s) != Contact::Disjoint)
    }
}
