//! Cell decomposition of the field and implicit kick edges.
//!
//! Every grid cell center is a vertex. A kick of radius `r` from vertex `v`
//! reaches every vertex whose center lies in the ring band
//! `| |c(v') - c(v)| - r | <= cell / 2`. Kicks that leave the field through
//! the opponent goal mouth become terminal goal edges; their endpoints are
//! off-grid, so they are sampled by direction instead of by destination.
//!
//! Coordinates: `x` runs across the field in `[0, width]`, `y` runs along it
//! in `[0, length]`. Our goal is on `y = 0`, the opponent goal on
//! `y = length`.

use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geometry::{crossing_with_horizontal, Point, Segment, EPS};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldConfig {
    /// Goal line to goal line, meters.
    pub length: f64,
    /// Touch line to touch line, meters.
    pub width: f64,
    /// Side of one square grid cell, meters.
    pub cell: f64,
    /// Distance between the goal posts, meters.
    pub goal_width: f64,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig {
            length: 9.0,
            width: 6.0,
            cell: 0.1,
            goal_width: 2.6,
        }
    }
}

fn whole_cells(extent: f64, cell: f64) -> Option<usize> {
    let n = extent / cell;
    let rounded = n.round();
    ((n - rounded).abs() < 1e-6 && rounded >= 1.0).then_some(rounded as usize)
}

impl FieldConfig {
    pub fn validate(&self) -> Result<(), Error> {
        let positive = [self.length, self.width, self.cell, self.goal_width]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0);
        if !positive {
            return Err(Error::InvalidConfig("field dimensions must be positive".into()));
        }
        if whole_cells(self.length, self.cell).is_none() || whole_cells(self.width, self.cell).is_none() {
            return Err(Error::InvalidConfig(format!(
                "field {} x {} m is not a whole number of {} m cells",
                self.width, self.length, self.cell
            )));
        }
        if self.goal_width >= self.width {
            return Err(Error::InvalidConfig("goal must be narrower than the field".into()));
        }
        Ok(())
    }

    /// Number of grid columns (across the field).
    pub fn cols(&self) -> usize {
        (self.width / self.cell).round() as usize
    }

    /// Number of grid rows (along the field).
    pub fn rows(&self) -> usize {
        (self.length / self.cell).round() as usize
    }

    pub fn vertex_count(&self) -> usize {
        self.cols() * self.rows()
    }

    /// All vertices in `(row, col)` order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.rows()).flat_map(move |row| (0..self.cols()).map(move |col| VertexId { row, col }))
    }

    pub fn vertex_index(&self, v: VertexId) -> usize {
        v.row * self.cols() + v.col
    }

    pub fn left_post_x(&self) -> f64 {
        (self.width - self.goal_width) / 2.0
    }

    pub fn right_post_x(&self) -> f64 {
        (self.width + self.goal_width) / 2.0
    }

    /// The opponent goal line between the posts, the target of an attack.
    pub fn goal_segment(&self) -> Segment {
        Segment::new(
            Point::new(self.left_post_x(), self.length),
            Point::new(self.right_post_x(), self.length),
        )
    }

    pub fn goal_center(&self) -> Point {
        Point::new(self.width / 2.0, self.length)
    }

    pub fn own_goal_segment(&self) -> Segment {
        Segment::new(Point::new(self.left_post_x(), 0.0), Point::new(self.right_post_x(), 0.0))
    }

    /// Closed containment test.
    pub fn contains(&self, p: Point) -> bool {
        p.x >= -EPS && p.x <= self.width + EPS && p.y >= -EPS && p.y <= self.length + EPS
    }

    pub fn clamp(&self, p: Point) -> Point {
        Point::new(p.x.clamp(0.0, self.width), p.y.clamp(0.0, self.length))
    }

    /// Where `s` passes the opponent goal line strictly between the posts,
    /// as a parameter along `s`.
    pub fn goal_crossing(&self, s: &Segment) -> Option<f64> {
        if s.b.y < self.length - EPS {
            return None;
        }
        let t = crossing_with_horizontal(s, self.length)?;
        let x = s.point_at(t).x;
        (x > self.left_post_x() && x < self.right_post_x()).then_some(t)
    }
}

/// A grid vertex. Orders by `(row, col)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId {
    pub row: usize,
    pub col: usize,
}

impl VertexId {
    pub const fn new(row: usize, col: usize) -> Self {
        VertexId { row, col }
    }
}

/// Center of the cell `v`.
pub fn vertex_center(v: VertexId, f: &FieldConfig) -> Point {
    debug_assert!(v.row < f.rows() && v.col < f.cols(), "{v:?} outside the grid");
    Point::new((v.col as f64 + 0.5) * f.cell, (v.row as f64 + 0.5) * f.cell)
}

// Nearest cell index along one axis. Candidates are scanned in ascending
// order and only a strictly closer one (beyond EPS) replaces the current
// pick, so ties go to the lower index.
fn nearest_index(coord: f64, cell: f64, n: usize) -> usize {
    let guess = ((coord / cell).floor().max(0.0) as usize).min(n - 1);
    let lo = guess.saturating_sub(1);
    let hi = (guess + 1).min(n - 1);
    let mut best = lo;
    let mut best_d = (coord - (lo as f64 + 0.5) * cell).abs();
    for i in lo + 1..=hi {
        let d = (coord - (i as f64 + 0.5) * cell).abs();
        if d < best_d - EPS {
            best = i;
            best_d = d;
        }
    }
    best
}

/// The vertex whose cell center is nearest to `p`. Points off the field are
/// clamped onto it first; ties go to the lowest `(row, col)`.
pub fn snap_to_vertex(p: Point, f: &FieldConfig) -> VertexId {
    let p = f.clamp(p);
    // Distance is separable, so the nearest center is nearest on each axis.
    VertexId {
        row: nearest_index(p.y, f.cell, f.rows()),
        col: nearest_index(p.x, f.cell, f.cols()),
    }
}

/// Where a kick edge ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KickTarget {
    Vertex(VertexId),
    /// Off-field endpoint past the opponent goal line, between the posts.
    Goal,
}

/// One kick: the ball travels along `segment` from the center of `from`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KickEdge {
    pub from: VertexId,
    pub to: KickTarget,
    pub segment: Segment,
    /// Travelled distance; equals `segment.length()`.
    pub length: f64,
    /// The configured kick radius that produced this edge.
    pub radius: f64,
    /// Kick direction in radians.
    pub angle: f64,
    pub is_goal: bool,
}

impl KickEdge {
    pub fn destination(&self) -> Option<VertexId> {
        match self.to {
            KickTarget::Vertex(v) => Some(v),
            KickTarget::Goal => None,
        }
    }

    /// Deterministic tie-break order: vertex edges by destination
    /// `(row, col)`, then goal edges by angle, then by radius.
    pub fn tie_order(&self, other: &KickEdge) -> Ordering {
        self.is_goal
            .cmp(&other.is_goal)
            .then_with(|| self.destination().cmp(&other.destination()))
            .then_with(|| self.angle.total_cmp(&other.angle))
            .then_with(|| self.radius.total_cmp(&other.radius))
    }
}

/// Grid offsets `(d_row, d_col)` forming the ring of one kick radius,
/// sorted by `(d_row, d_col)`.
#[derive(Debug, Clone)]
pub struct RingStencil {
    pub radius: f64,
    pub offsets: Vec<(isize, isize)>,
}

impl RingStencil {
    pub fn new(radius: f64, cell: f64) -> Self {
        let reach = ((radius + cell / 2.0) / cell).ceil() as isize;
        let mut offsets = Vec::new();
        for dr in -reach..=reach {
            for dc in -reach..=reach {
                if dr == 0 && dc == 0 {
                    continue;
                }
                let d = cell * ((dr * dr + dc * dc) as f64).sqrt();
                if (d - radius).abs() <= cell / 2.0 {
                    offsets.push((dr, dc));
                }
            }
        }
        RingStencil { radius, offsets }
    }

    fn ring_edges(&self, v: VertexId, f: &FieldConfig, out: &mut Vec<KickEdge>) {
        let from = vertex_center(v, f);
        let (rows, cols) = (f.rows() as isize, f.cols() as isize);
        for &(dr, dc) in &self.offsets {
            let (row, col) = (v.row as isize + dr, v.col as isize + dc);
            if row < 0 || col < 0 || row >= rows || col >= cols {
                continue;
            }
            let to = VertexId::new(row as usize, col as usize);
            let end = vertex_center(to, f);
            out.push(KickEdge {
                from: v,
                to: KickTarget::Vertex(to),
                segment: Segment::new(from, end),
                length: from.dist(end),
                radius: self.radius,
                angle: (end - from).angle(),
                is_goal: false,
            });
        }
    }
}

/// Implicit kick graph for a fixed field and set of kick radii. Edges are
/// generated on request and never stored.
#[derive(Debug, Clone)]
pub struct KickGraph {
    field: FieldConfig,
    stencils: Vec<RingStencil>,
}

impl KickGraph {
    pub fn new(field: FieldConfig, radii: &[f64]) -> Self {
        let stencils = radii.iter().map(|&r| RingStencil::new(r, field.cell)).collect();
        KickGraph { field, stencils }
    }

    pub fn field(&self) -> &FieldConfig {
        &self.field
    }

    /// All kicks from `v`, radius by radius: ring edges in destination
    /// order, then goal edges in angle order.
    pub fn successors(&self, v: VertexId) -> Vec<KickEdge> {
        let mut out = Vec::new();
        for stencil in &self.stencils {
            stencil.ring_edges(v, &self.field, &mut out);
            push_goal_edges(v, stencil.radius, &self.field, &mut out);
        }
        out
    }
}

/// Every kick of radius `r_kick` from `v`: in-field ring edges plus goal
/// edges.
pub fn kick_successors(v: VertexId, r_kick: f64, f: &FieldConfig) -> Vec<KickEdge> {
    debug_assert!(r_kick > f.cell, "kick radius must exceed the cell size");
    let mut out = Vec::new();
    RingStencil::new(r_kick, f.cell).ring_edges(v, f, &mut out);
    push_goal_edges(v, r_kick, f, &mut out);
    out
}

/// Terminal kicks of length `r_kick` from `v` that leave the field through
/// the opponent goal mouth.
pub fn goal_edges(v: VertexId, r_kick: f64, f: &FieldConfig) -> Vec<KickEdge> {
    let mut out = Vec::new();
    push_goal_edges(v, r_kick, f, &mut out);
    out
}

/// Open interval of kick directions from `p` whose segment of length
/// `r_kick` ends beyond the goal line and crosses it between the posts.
pub fn goal_direction_interval(p: Point, r_kick: f64, f: &FieldConfig) -> Option<(f64, f64)> {
    let dy = f.length - p.y;
    if dy <= 0.0 || dy >= r_kick {
        return None;
    }
    // Reaching past the line needs r * sin(theta) > dy.
    let reach = (dy / r_kick).asin();
    let (reach_lo, reach_hi) = (reach, PI - reach);
    // Crossing x decreases as theta grows, so the right post bounds from below.
    let post_lo = dy.atan2(f.right_post_x() - p.x);
    let post_hi = dy.atan2(f.left_post_x() - p.x);
    let lo = reach_lo.max(post_lo);
    let hi = reach_hi.min(post_hi);
    (hi > lo).then_some((lo, hi))
}

fn push_goal_edges(v: VertexId, r_kick: f64, f: &FieldConfig, out: &mut Vec<KickEdge>) {
    let from = vertex_center(v, f);
    let Some((lo, hi)) = goal_direction_interval(from, r_kick, f) else {
        return;
    };
    // Adjacent endpoints at most half a cell apart along the arc.
    let step = (f.cell / 2.0) / r_kick;
    let n = (((hi - lo) / step).ceil() as usize).max(1);
    let width = (hi - lo) / n as f64;
    for i in 0..n {
        let angle = lo + (i as f64 + 0.5) * width;
        let segment = Segment::new(from, from + Point::from_angle(angle) * r_kick);
        if f.goal_crossing(&segment).is_none() {
            continue;
        }
        out.push(KickEdge {
            from: v,
            to: KickTarget::Goal,
            segment,
            length: r_kick,
            radius: r_kick,
            angle,
            is_goal: true,
        });
    }
}
