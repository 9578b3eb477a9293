//! A* attack planning over the implicit kick graph.
//!
//! Edge cost is the time until the ball reaches the end of the kick. Only the
//! first kick of a plan is special: it is charged the kicker's approach time
//! and, when it passes through an opponent's interception zone, its travel
//! time is multiplied by the penalty factor. Such kicks are penalized rather
//! than pruned because reported opponent positions are never exact.
//!
//! The heuristic is the straight-line time from a vertex to the goal mouth.
//! In [`HeuristicMode::Teammate`] a vertex reached by the first kick also pays
//! the time the nearest other teammate needs to get to it. That term can
//! overestimate, so [`HeuristicMode::Admissible`] drops it when optimality
//! matters.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::field::{snap_to_vertex, FieldConfig, KickEdge, KickGraph, VertexId};
use crate::geometry::{dist_point_segment, segment_intersects_disk, Disk, Point};
use crate::Error;

/// World snapshot handed to the planner and strategies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameState {
    pub ball: Point,
    /// Our field robots.
    pub allies: Vec<Point>,
    /// Opponent robots, goalkeeper included.
    pub opponents: Vec<Point>,
    /// Index into `allies` of the robot nearest to the ball.
    pub kicking_robot: usize,
}

impl GameState {
    pub fn new(ball: Point, allies: Vec<Point>, opponents: Vec<Point>) -> Result<Self, Error> {
        if allies.is_empty() {
            return Err(Error::InvalidState("at least one ally is required".into()));
        }
        let all_finite = std::iter::once(&ball)
            .chain(&allies)
            .chain(&opponents)
            .all(|p| p.is_finite());
        if !all_finite {
            return Err(Error::InvalidState("positions must be finite".into()));
        }
        let kicking_robot = nearest_index(&allies, ball).expect("allies is non-empty");
        Ok(GameState {
            ball,
            allies,
            opponents,
            kicking_robot,
        })
    }

    /// Checks that every position lies on the field.
    pub fn validate(&self, field: &FieldConfig) -> Result<(), Error> {
        let outside = std::iter::once(&self.ball)
            .chain(&self.allies)
            .chain(&self.opponents)
            .find(|p| !field.contains(**p));
        match outside {
            Some(p) => Err(Error::InvalidState(format!("position ({}, {}) is off the field", p.x, p.y))),
            None => Ok(()),
        }
    }

    pub fn kicker(&self) -> Point {
        self.allies[self.kicking_robot]
    }

    pub fn opponent_disks(&self, radius: f64) -> Vec<Disk> {
        self.opponents
            .iter()
            .filter_map(|&center| Disk::new(center, radius))
            .collect()
    }
}

/// Index of the point nearest to `target`, lowest index on ties.
pub fn nearest_index(points: &[Point], target: Point) -> Option<usize> {
    points
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.dist(target).total_cmp(&b.dist(target)).then(i.cmp(j)))
        .map(|(i, _)| i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeuristicMode {
    /// Straight-line time plus the teammate approach term after the first kick.
    Teammate,
    /// Straight-line time only; a lower bound on the remaining cost.
    Admissible,
}

impl std::str::FromStr for HeuristicMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "teammate" => Ok(HeuristicMode::Teammate),
            "admissible" => Ok(HeuristicMode::Admissible),
            other => Err(Error::InvalidConfig(format!("unknown heuristic mode `{other}`"))),
        }
    }
}

impl std::fmt::Display for HeuristicMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HeuristicMode::Teammate => "teammate",
            HeuristicMode::Admissible => "admissible",
        })
    }
}

/// Kinematics, interception model and bookkeeping knobs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Constant ball speed, m/s.
    pub ball_speed: f64,
    /// Constant robot walking speed, m/s.
    pub robot_speed: f64,
    /// Kick distances available to every robot, meters.
    pub kick_radii: Vec<f64>,
    /// Travel-time multiplier for a first kick through an interception zone.
    pub penalty_factor: f64,
    /// Radius of the interception zone around each opponent, meters.
    pub interception_radius: f64,
    /// Probability that the ball survives crossing one interception zone.
    pub pass_through_prob: f64,
    /// An ally this close to the ball possesses it, meters.
    pub possession_radius: f64,
    /// Sampling period of the possession bookkeeping, seconds.
    pub timestep: f64,
    pub heuristic_mode: HeuristicMode,
    pub rng_seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            ball_speed: 2.0,
            robot_speed: 0.25,
            kick_radii: vec![4.0],
            penalty_factor: 2.0,
            interception_radius: 0.2,
            pass_through_prob: 0.5,
            possession_radius: 0.5,
            timestep: 0.1,
            heuristic_mode: HeuristicMode::Teammate,
            rng_seed: 2020,
        }
    }
}

impl SimConfig {
    pub fn validate(&self, field: &FieldConfig) -> Result<(), Error> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.into()));
        if !(self.ball_speed > 0.0 && self.robot_speed > 0.0) {
            return bad("speeds must be positive");
        }
        if self.kick_radii.is_empty() {
            return bad("at least one kick radius is required");
        }
        if self.kick_radii.iter().any(|&r| !(r > field.cell && r.is_finite())) {
            return bad("kick radii must exceed the cell size");
        }
        if self.penalty_factor.is_nan() || self.penalty_factor < 1.0 {
            return bad("penalty factor must be at least 1");
        }
        if self.interception_radius.is_nan() || self.interception_radius <= 0.0 {
            return bad("interception radius must be positive");
        }
        if !(0.0..=1.0).contains(&self.pass_through_prob) {
            return bad("pass-through probability must lie in [0, 1]");
        }
        if !(self.possession_radius >= 0.0 && self.timestep > 0.0) {
            return bad("possession radius must be non-negative and timestep positive");
        }
        Ok(())
    }

    pub fn max_kick_radius(&self) -> f64 {
        self.kick_radii.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// An attack: chained kicks ending with a goal edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KickPlan {
    pub kicks: Vec<KickEdge>,
    /// Sum of edge costs, seconds.
    pub total_cost: f64,
}

impl KickPlan {
    pub fn first(&self) -> &KickEdge {
        &self.kicks[0]
    }
}

/// Straight-line walking time.
pub fn time_to_approach(robot: Point, target: Point, cfg: &SimConfig) -> f64 {
    robot.dist(target) / cfg.robot_speed
}

/// Time until the ball reaches the end of `edge`.
pub fn edge_cost(edge: &KickEdge, state: &GameState, is_first_kick: bool, cfg: &SimConfig) -> f64 {
    let travel = edge.length / cfg.ball_speed;
    if !is_first_kick {
        return travel;
    }
    let approach = time_to_approach(state.kicker(), edge.segment.a, cfg);
    let blocked = state
        .opponent_disks(cfg.interception_radius)
        .iter()
        .any(|d| segment_intersects_disk(&edge.segment, d));
    if blocked {
        approach + travel * cfg.penalty_factor
    } else {
        approach + travel
    }
}

/// Fastest approach of a teammate other than the first kicker. Falls back to
/// the kicker when it is our only robot.
fn teammate_approach(target: Point, state: &GameState, cfg: &SimConfig) -> f64 {
    let others = state
        .allies
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != state.kicking_robot)
        .map(|(_, &p)| time_to_approach(p, target, cfg))
        .fold(f64::INFINITY, f64::min);
    if others.is_finite() {
        others
    } else {
        time_to_approach(state.kicker(), target, cfg)
    }
}

/// Estimated time from `vertex_pos` to a goal.
pub fn heuristic(
    vertex_pos: Point,
    state: &GameState,
    is_after_first_kick: bool,
    cfg: &SimConfig,
    field: &FieldConfig,
) -> f64 {
    let to_goal = dist_point_segment(vertex_pos, &field.goal_segment()) / cfg.ball_speed;
    match cfg.heuristic_mode {
        HeuristicMode::Teammate if is_after_first_kick => to_goal + teammate_approach(vertex_pos, state, cfg),
        _ => to_goal,
    }
}

/// Teammate-mode heuristic at the end of a first kick, regardless of the
/// configured mode. Goal edges score zero.
pub(crate) fn first_kick_outlook(edge: &KickEdge, state: &GameState, cfg: &SimConfig, field: &FieldConfig) -> f64 {
    if edge.is_goal {
        return 0.0;
    }
    let to_goal = dist_point_segment(edge.segment.b, &field.goal_segment()) / cfg.ball_speed;
    to_goal + teammate_approach(edge.segment.b, state, cfg)
}

#[derive(Debug, Clone, Copy)]
struct OpenEntry {
    f: f64,
    g: f64,
    edge: KickEdge,
}

impl PartialEq for OpenEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for OpenEntry {}

impl PartialOrd for OpenEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OpenEntry {
    // Reversed so that `BinaryHeap` pops the smallest f first; among equal
    // f the deeper entry (larger g) wins, then the edge tie order.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then_with(|| self.g.total_cmp(&other.g))
            .then_with(|| other.edge.tie_order(&self.edge))
    }
}

/// Reusable planner for one field and configuration.
#[derive(Debug, Clone)]
pub struct Planner {
    graph: KickGraph,
    cfg: SimConfig,
}

impl Planner {
    pub fn new(field: FieldConfig, cfg: SimConfig) -> Result<Self, Error> {
        field.validate()?;
        cfg.validate(&field)?;
        let graph = KickGraph::new(field, &cfg.kick_radii);
        Ok(Planner { graph, cfg })
    }

    pub fn field(&self) -> &FieldConfig {
        self.graph.field()
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn graph(&self) -> &KickGraph {
        &self.graph
    }

    pub fn start_vertex(&self, state: &GameState) -> VertexId {
        snap_to_vertex(state.ball, self.field())
    }

    /// Every possible first kick from the ball's vertex.
    pub fn first_kicks(&self, state: &GameState) -> Vec<KickEdge> {
        self.graph.successors(self.start_vertex(state))
    }

    /// Least-cost attack from the ball's current position.
    pub fn plan(&self, state: &GameState) -> Result<KickPlan, Error> {
        let field = *self.field();
        let cfg = &self.cfg;
        let start = self.start_vertex(state);
        let mut best_g = vec![f64::INFINITY; field.vertex_count()];
        let mut parent: Vec<Option<KickEdge>> = vec![None; field.vertex_count()];
        let mut open = BinaryHeap::new();

        best_g[field.vertex_index(start)] = 0.0;
        for edge in self.graph.successors(start) {
            let g = edge_cost(&edge, state, true, cfg);
            self.relax(edge, g, true, state, &mut best_g, &mut parent, &mut open);
        }

        while let Some(entry) = open.pop() {
            let Some(v) = entry.edge.destination() else {
                return Ok(self.reconstruct(entry.edge, start, &parent, state));
            };
            if entry.g > best_g[field.vertex_index(v)] {
                continue;
            }
            for edge in self.graph.successors(v) {
                let g = entry.g + edge_cost(&edge, state, false, cfg);
                self.relax(edge, g, false, state, &mut best_g, &mut parent, &mut open);
            }
        }
        Err(Error::NoPlan)
    }

    #[allow(clippy::too_many_arguments)]
    fn relax(
        &self,
        edge: KickEdge,
        g: f64,
        first: bool,
        state: &GameState,
        best_g: &mut [f64],
        parent: &mut [Option<KickEdge>],
        open: &mut BinaryHeap<OpenEntry>,
    ) {
        match edge.destination() {
            Some(w) => {
                let idx = self.field().vertex_index(w);
                if g < best_g[idx] {
                    best_g[idx] = g;
                    parent[idx] = Some(edge);
                    let h = heuristic(edge.segment.b, state, first, &self.cfg, self.field());
                    open.push(OpenEntry { f: g + h, g, edge });
                }
            }
            None => open.push(OpenEntry { f: g, g, edge }),
        }
    }

    fn reconstruct(&self, goal_edge: KickEdge, start: VertexId, parent: &[Option<KickEdge>], state: &GameState) -> KickPlan {
        let mut kicks = vec![goal_edge];
        let mut v = goal_edge.from;
        while v != start {
            let edge = parent[self.field().vertex_index(v)].expect("expanded vertex has a parent");
            kicks.push(edge);
            v = edge.from;
        }
        kicks.reverse();
        let total_cost = kicks
            .iter()
            .enumerate()
            .map(|(i, e)| edge_cost(e, state, i == 0, &self.cfg))
            .sum();
        KickPlan { kicks, total_cost }
    }
}

/// One-shot planning; see [`Planner::plan`].
pub fn plan_attack(state: &GameState, cfg: &SimConfig, field: &FieldConfig) -> Result<KickPlan, Error> {
    Planner::new(*field, cfg.clone())?.plan(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{vertex_center, KickTarget};
    use crate::geometry::Segment;

    fn straight_edge(from: Point, to: Point) -> KickEdge {
        let f = FieldConfig::default();
        KickEdge {
            from: snap_to_vertex(from, &f),
            to: KickTarget::Vertex(snap_to_vertex(to, &f)),
            segment: Segment::new(from, to),
            length: from.dist(to),
            radius: from.dist(to),
            angle: (to - from).angle(),
            is_goal: false,
        }
    }

    fn admissible() -> SimConfig {
        SimConfig {
            heuristic_mode: HeuristicMode::Admissible,
            ..SimConfig::default()
        }
    }

    #[test]
    fn approach_time() {
        let cfg = SimConfig::default();
        let p = Point::new(1.0, 1.0);
        assert_eq!(time_to_approach(p, p, &cfg), 0.0);
        assert_eq!(time_to_approach(Point::new(0.0, 0.0), Point::new(0.0, 1.0), &cfg), 4.0);
    }

    #[test]
    fn edge_cost_branches() {
        let cfg = SimConfig::default();
        let from = Point::new(3.05, 2.05);
        let to = Point::new(3.05, 6.05);
        let e = straight_edge(from, to);
        let open = GameState::new(from, vec![from], vec![]).unwrap();
        assert_eq!(edge_cost(&e, &open, false, &cfg), 2.0);
        assert_eq!(edge_cost(&e, &open, true, &cfg), 2.0);
        let blocked = GameState::new(from, vec![from], vec![Point::new(3.1, 4.0)]).unwrap();
        assert_eq!(edge_cost(&e, &blocked, true, &cfg), 4.0);
        // Later kicks are never penalized.
        assert_eq!(edge_cost(&e, &blocked, false, &cfg), 2.0);
        // Approach is charged on the first kick only.
        let far = GameState::new(from, vec![Point::new(3.05, 1.05)], vec![]).unwrap();
        assert!((edge_cost(&e, &far, true, &cfg) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn heuristic_examples() {
        let f = FieldConfig::default();
        let cfg = admissible();
        let state = GameState::new(Point::new(3.0, 1.0), vec![Point::new(3.0, 1.0)], vec![]).unwrap();
        assert_eq!(heuristic(Point::new(3.0, 9.0), &state, false, &cfg, &f), 0.0);
        assert_eq!(heuristic(Point::new(3.0, 5.0), &state, true, &cfg, &f), 2.0);

        let teammate = SimConfig::default();
        let state = GameState::new(
            Point::new(3.0, 1.0),
            vec![Point::new(3.0, 1.0), Point::new(4.0, 5.0), Point::new(0.5, 0.5)],
            vec![],
        )
        .unwrap();
        let h = heuristic(Point::new(3.0, 5.0), &state, true, &teammate, &f);
        assert!((h - 6.0).abs() < 1e-12);
        assert_eq!(heuristic(Point::new(3.0, 5.0), &state, false, &teammate, &f), 2.0);
    }

    #[test]
    fn teammate_term_excludes_the_kicker() {
        let f = FieldConfig::default();
        let cfg = SimConfig::default();
        // The kicker stands on the point but the other ally is 2 m away.
        let target = Point::new(3.0, 5.0);
        let state = GameState::new(target, vec![target, Point::new(3.0, 3.0)], vec![]).unwrap();
        let h = heuristic(target, &state, true, &cfg, &f);
        assert!((h - (2.0 + 8.0)).abs() < 1e-12);
    }

    #[test]
    fn one_kick_from_close_range() {
        let f = FieldConfig::default();
        let ball = Point::new(3.05, 9.0 - 3.9);
        let state = GameState::new(ball, vec![ball], vec![]).unwrap();
        let plan = plan_attack(&state, &admissible(), &f).unwrap();
        assert_eq!(plan.kicks.len(), 1);
        assert!(plan.kicks[0].is_goal);
    }

    #[test]
    fn long_attack_needs_several_kicks() {
        let f = FieldConfig::default();
        let ball = Point::new(3.0, 1.0);
        let state = GameState::new(ball, vec![ball], vec![]).unwrap();
        let plan = plan_attack(&state, &SimConfig::default(), &f).unwrap();
        assert!(plan.kicks.len() >= 2);
        assert!(plan.kicks.last().unwrap().is_goal);
        assert!(plan.kicks[..plan.kicks.len() - 1].iter().all(|k| !k.is_goal));
        for pair in plan.kicks.windows(2) {
            assert_eq!(pair[0].destination(), Some(pair[1].from));
        }
        assert_eq!(plan.kicks[0].segment.a, vertex_center(snap_to_vertex(ball, &f), &f));
    }

    #[test]
    fn invalid_config_is_rejected() {
        let cfg = SimConfig {
            ball_speed: 0.0,
            ..SimConfig::default()
        };
        assert!(Planner::new(FieldConfig::default(), cfg).is_err());
        assert!(GameState::new(Point::default(), vec![], vec![]).is_err());
    }
}
