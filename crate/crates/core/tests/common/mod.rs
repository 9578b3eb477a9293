//! Oracles and generators shared by the integration suites.
#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use kickplan::{dist_point_segment, FieldConfig, GameState, KickEdge, KickGraph, Point, Rng, SimConfig, VertexId};

pub fn field() -> FieldConfig {
    FieldConfig::default()
}

pub fn random_point(rng: &mut Rng, f: &FieldConfig) -> Point {
    Point::new(rng.range(0.0, f.width), rng.range(0.0, f.length))
}

/// One to three allies, zero to four opponents, ball anywhere.
pub fn random_state(rng: &mut Rng, f: &FieldConfig) -> GameState {
    let ball = random_point(rng, f);
    let allies = (0..1 + rng.index(3)).map(|_| random_point(rng, f)).collect();
    let opponents = (0..rng.index(5)).map(|_| random_point(rng, f)).collect();
    GameState::new(ball, allies, opponents).unwrap()
}

/// Written out independently of the library's cost function.
pub fn oracle_edge_cost(edge: &KickEdge, state: &GameState, first: bool, cfg: &SimConfig) -> f64 {
    let travel = edge.segment.a.dist(edge.segment.b) / cfg.ball_speed;
    if !first {
        return travel;
    }
    let kicker = state
        .allies
        .iter()
        .copied()
        .min_by(|a, b| a.dist(state.ball).total_cmp(&b.dist(state.ball)))
        .unwrap();
    let approach = kicker.dist(edge.segment.a) / cfg.robot_speed;
    let hit = state
        .opponents
        .iter()
        .any(|&o| dist_point_segment(o, &edge.segment) <= cfg.interception_radius + 1e-9);
    approach + if hit { travel * cfg.penalty_factor } else { travel }
}

fn index(f: &FieldConfig, v: VertexId) -> usize {
    v.row * f.cols() + v.col
}

/// Uniform-cost search over the same implicit graph: cheapest total time
/// from the ball's vertex into the goal.
pub fn dijkstra_cost(state: &GameState, cfg: &SimConfig, f: &FieldConfig) -> Option<f64> {
    let graph = KickGraph::new(*f, &cfg.kick_radii);
    let start = kickplan::snap_to_vertex(state.ball, f);
    let mut dist = vec![f64::INFINITY; f.vertex_count()];
    let mut heap = BinaryHeap::new();
    dist[index(f, start)] = 0.0;
    heap.push((Reverse(Ordered(0.0)), start));
    let mut best = f64::INFINITY;
    while let Some((Reverse(Ordered(d)), v)) = heap.pop() {
        if d > dist[index(f, v)] || d >= best {
            continue;
        }
        let first = v == start;
        for e in graph.successors(v) {
            let nd = d + oracle_edge_cost(&e, state, first, cfg);
            match e.destination() {
                None => best = best.min(nd),
                Some(w) => {
                    if nd < dist[index(f, w)] {
                        dist[index(f, w)] = nd;
                        heap.push((Reverse(Ordered(nd)), w));
                    }
                }
            }
        }
    }
    best.is_finite().then_some(best)
}

/// Cheapest kick-only time from every vertex into the goal, ignoring
/// approach and penalty terms. Runs backwards from the goal edges; the kick
/// relation is symmetric, so forward successors double as predecessors.
pub fn cost_to_goal(cfg: &SimConfig, f: &FieldConfig) -> Vec<f64> {
    let graph = KickGraph::new(*f, &cfg.kick_radii);
    let mut dist = vec![f64::INFINITY; f.vertex_count()];
    let mut heap = BinaryHeap::new();
    for v in f.vertices() {
        let d = graph
            .successors(v)
            .iter()
            .filter(|e| e.is_goal)
            .map(|e| e.length / cfg.ball_speed)
            .fold(f64::INFINITY, f64::min);
        if d.is_finite() {
            dist[index(f, v)] = d;
            heap.push((Reverse(Ordered(d)), v));
        }
    }
    while let Some((Reverse(Ordered(d)), v)) = heap.pop() {
        if d > dist[index(f, v)] {
            continue;
        }
        for e in graph.successors(v) {
            if let Some(w) = e.destination() {
                let nd = d + e.length / cfg.ball_speed;
                if nd < dist[index(f, w)] {
                    dist[index(f, w)] = nd;
                    heap.push((Reverse(Ordered(nd)), w));
                }
            }
        }
    }
    dist
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ordered(pub f64);

impl Eq for Ordered {}

impl PartialOrd for Ordered {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordered {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Brute-force point-in-disk test along `samples` evenly spaced points of
/// the segment, endpoints included.
pub fn sampled_hit(a: Point, b: Point, center: Point, radius: f64, samples: usize) -> bool {
    (0..=samples).any(|i| {
        let t = i as f64 / samples as f64;
        let p = Point::new(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t);
        (p.x - center.x).hypot(p.y - center.y) <= radius
    })
}

/// Exact segment intersection on integer coordinates.
pub fn int_segments_meet(p1: (i64, i64), p2: (i64, i64), q1: (i64, i64), q2: (i64, i64)) -> bool {
    let orient = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum();
    let within = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| {
        c.0 >= a.0.min(b.0) && c.0 <= a.0.max(b.0) && c.1 >= a.1.min(b.1) && c.1 <= a.1.max(b.1)
    };
    let (d1, d2, d3, d4) = (orient(q1, q2, p1), orient(q1, q2, p2), orient(p1, p2, q1), orient(p1, p2, q2));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && within(q1, q2, p1))
        || (d2 == 0 && within(q1, q2, p2))
        || (d3 == 0 && within(p1, p2, q1))
        || (d4 == 0 && within(p1, p2, q2))
}

/// Parametric intersection of two segments in general position. Returns
/// the parameters and the determinant so callers can skip degenerate cases.
pub fn parametric_meet(p1: Point, p2: Point, q1: Point, q2: Point) -> (f64, f64, f64) {
    let (rx, ry) = (p2.x - p1.x, p2.y - p1.y);
    let (sx, sy) = (q2.x - q1.x, q2.y - q1.y);
    let det = rx * sy - ry * sx;
    let (wx, wy) = (q1.x - p1.x, q1.y - p1.y);
    let t = (wx * sy - wy * sx) / det;
    let u = (wx * ry - wy * rx) / det;
    (t, u, det)
}
