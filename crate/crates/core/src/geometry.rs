//! Planar primitives shared by the kick graph, the cost model and the
//! interception checks.
//!
//! All predicates are closed: touching counts as intersecting. Comparisons
//! use the absolute tolerance [`EPS`], which is far below the grid
//! resolution of any sensible field.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

/// Absolute tolerance in meters (or square meters for cross products).
pub const EPS: f64 = 1e-9;

/// A position on the field, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Unit vector at `angle` radians from the +x axis.
    pub fn from_angle(angle: f64) -> Self {
        Point::new(angle.cos(), angle.sin())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Angle of the vector in radians, in `(-pi, pi]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

/// A directed straight segment from `a` to `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    /// Builds the trajectory of a kick. Returns `None` for a degenerate
    /// segment, since a kick always moves the ball.
    pub fn kick(a: Point, b: Point) -> Option<Self> {
        (a.dist(b) > EPS && a.is_finite() && b.is_finite()).then_some(Segment { a, b })
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn direction(&self) -> Point {
        self.b - self.a
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.a.lerp(self.b, t)
    }

    /// Parameter in `[0, 1]` of the point of the segment closest to `p`.
    pub fn project(&self, p: Point) -> f64 {
        let d = self.direction();
        let len2 = d.dot(d);
        if len2 == 0.0 {
            return 0.0;
        }
        ((p - self.a).dot(d) / len2).clamp(0.0, 1.0)
    }
}

/// A disk-shaped zone, e.g. the interception zone around an opponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    /// Returns `None` unless `radius > 0`.
    pub fn new(center: Point, radius: f64) -> Option<Self> {
        (radius > 0.0 && radius.is_finite()).then_some(Disk { center, radius })
    }

    pub fn contains(&self, p: Point) -> bool {
        p.dist(self.center) <= self.radius + EPS
    }
}

/// Minimum Euclidean distance from `p` to any point of `s`.
pub fn dist_point_segment(p: Point, s: &Segment) -> f64 {
    p.dist(s.point_at(s.project(p)))
}

/// True iff the segment comes within the disk's radius of its center.
pub fn segment_intersects_disk(s: &Segment, d: &Disk) -> bool {
    dist_point_segment(d.center, s) <= d.radius + EPS
}

fn orientation(a: Point, b: Point, c: Point) -> i8 {
    let o = (b - a).cross(c - a);
    if o > EPS {
        1
    } else if o < -EPS {
        -1
    } else {
        0
    }
}

// `p` is known to be collinear with `s`; check that it lies within its box.
fn on_collinear_segment(p: Point, s: &Segment) -> bool {
    p.x <= s.a.x.max(s.b.x) + EPS
        && p.x >= s.a.x.min(s.b.x) - EPS
        && p.y <= s.a.y.max(s.b.y) + EPS
        && p.y >= s.a.y.min(s.b.y) - EPS
}

/// True iff the two segments share at least one point. Touching and
/// collinear overlap both count.
pub fn segments_cross(s1: &Segment, s2: &Segment) -> bool {
    let o1 = orientation(s1.a, s1.b, s2.a);
    let o2 = orientation(s1.a, s1.b, s2.b);
    let o3 = orientation(s2.a, s2.b, s1.a);
    let o4 = orientation(s2.a, s2.b, s1.b);

    if o1 != o2 && o3 != o4 {
        return true;
    }
    if o1 == 0 && on_collinear_segment(s2.a, s1) {
        return true;
    }
    if o2 == 0 && on_collinear_segment(s2.b, s1) {
        return true;
    }
    if o3 == 0 && on_collinear_segment(s1.a, s2) {
        return true;
    }
    if o4 == 0 && on_collinear_segment(s1.b, s2) {
        return true;
    }
    false
}

/// Intersection parameter along `s` with the horizontal line `y = line_y`,
/// if the segment reaches it.
pub fn crossing_with_horizontal(s: &Segment, line_y: f64) -> Option<f64> {
    let dy = s.b.y - s.a.y;
    if dy.abs() <= f64::EPSILON {
        return None;
    }
    let t = (line_y - s.a.y) / dy;
    (-EPS..=1.0 + EPS).contains(&t).then(|| t.clamp(0.0, 1.0))
}
