//! Kick-selection policies: full planning, one-step look-ahead, straight at
//! the goal, and the block-table expert.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::expert::{build_expert_table, kick_is_playable, ExpertTable};
use crate::field::{FieldConfig, KickEdge};
use crate::geometry::{segment_intersects_disk, Point, Segment};
use crate::search::{edge_cost, first_kick_outlook, GameState, Planner, SimConfig};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Planning,
    Reactive,
    Forward,
    Expert,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::Planning, Strategy::Reactive, Strategy::Forward, Strategy::Expert];
    /// Column order of the summary table.
    pub const TABLE_ORDER: [Strategy; 4] = [Strategy::Forward, Strategy::Expert, Strategy::Reactive, Strategy::Planning];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Planning => "planning",
            Strategy::Reactive => "reactive",
            Strategy::Forward => "forward",
            Strategy::Expert => "expert",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Strategy::Planning => "Planning",
            Strategy::Reactive => "Reactive",
            Strategy::Forward => "Forward",
            Strategy::Expert => "Expert",
        }
    }

    /// Stable index used to derive random substreams.
    pub fn index(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown strategy `{s}`")))
    }
}

/// The kick a strategy decided on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChosenKick {
    pub origin: Point,
    /// Radians.
    pub direction: f64,
    pub length: f64,
    pub segment: Segment,
}

impl ChosenKick {
    pub fn new(origin: Point, direction: f64, length: f64) -> Self {
        ChosenKick {
            origin,
            direction,
            length,
            segment: Segment::new(origin, origin + Point::from_angle(direction) * length),
        }
    }

    pub fn from_edge(edge: &KickEdge) -> Self {
        ChosenKick {
            origin: edge.segment.a,
            direction: edge.angle,
            length: edge.length,
            segment: edge.segment,
        }
    }
}

/// First kick of the current best plan. Called afresh at every kick.
pub fn choose_planning(state: &GameState, planner: &Planner) -> Option<ChosenKick> {
    planner.plan(state).ok().map(|plan| ChosenKick::from_edge(plan.first()))
}

/// Best single kick by cost plus outlook at its endpoint.
pub fn choose_reactive(state: &GameState, planner: &Planner) -> Option<ChosenKick> {
    let cfg = planner.config();
    let field = planner.field();
    planner
        .first_kicks(state)
        .into_iter()
        .map(|e| (edge_cost(&e, state, true, cfg) + first_kick_outlook(&e, state, cfg, field), e))
        .min_by(|(sa, a), (sb, b)| sa.total_cmp(sb).then_with(|| a.tie_order(b)))
        .map(|(_, e)| ChosenKick::from_edge(&e))
}

/// Longest kick straight at the goal center, whoever is in the way.
pub fn choose_forward(state: &GameState, cfg: &SimConfig, field: &FieldConfig) -> ChosenKick {
    let direction = (field.goal_center() - state.ball).angle();
    ChosenKick::new(state.ball, direction, cfg.max_kick_radius())
}

// Kick from `origin`, stopped where it crosses into the goal.
fn clipped_kick(origin: Point, direction: f64, length: f64, field: &FieldConfig) -> ChosenKick {
    let kick = ChosenKick::new(origin, direction, length);
    match field.goal_crossing(&kick.segment) {
        Some(t) if t > 0.0 => ChosenKick::new(origin, direction, length * t),
        _ => kick,
    }
}

/// Highest-ranked direction of the ball's block whose kick avoids every
/// interception zone. Directions that would put the ball out of play are
/// skipped; when every remaining kick is blocked the top one is kicked
/// anyway.
pub fn choose_expert(state: &GameState, table: &ExpertTable, cfg: &SimConfig, field: &FieldConfig) -> Option<ChosenKick> {
    let length = cfg.max_kick_radius();
    let disks = state.opponent_disks(cfg.interception_radius);
    let entries = table.entries_at(state.ball);
    let playable: Vec<_> = entries
        .iter()
        .filter(|e| kick_is_playable(state.ball, e.direction, length, field))
        .collect();
    let candidates = if playable.is_empty() { entries.iter().collect() } else { playable };
    let kicks: Vec<ChosenKick> = candidates
        .iter()
        .map(|e| clipped_kick(state.ball, e.direction, length, field))
        .collect();
    kicks
        .iter()
        .find(|k| !disks.iter().any(|d| segment_intersects_disk(&k.segment, d)))
        .or(kicks.first())
        .copied()
}

/// Everything the four strategies need, built once per configuration.
#[derive(Debug, Clone)]
pub struct Playbook {
    planner: Planner,
    expert: ExpertTable,
}

impl Playbook {
    pub fn new(field: FieldConfig, cfg: SimConfig) -> Result<Self, Error> {
        let expert = build_expert_table(&field, &cfg);
        Ok(Playbook {
            planner: Planner::new(field, cfg)?,
            expert,
        })
    }

    pub fn with_expert_table(mut self, table: ExpertTable) -> Self {
        self.expert = table;
        self
    }

    pub fn planner(&self) -> &Planner {
        &self.planner
    }

    pub fn config(&self) -> &SimConfig {
        self.planner.config()
    }

    pub fn field(&self) -> &FieldConfig {
        self.planner.field()
    }

    pub fn expert_table(&self) -> &ExpertTable {
        &self.expert
    }

    /// Hex SHA-256 of the field and simulation settings.
    pub fn config_hash(&self) -> String {
        let canonical = serde_json::to_string(&(self.field(), self.config())).expect("config serializes");
        Sha256::digest(canonical.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn choose(&self, strategy: Strategy, state: &GameState) -> Option<ChosenKick> {
        match strategy {
            Strategy::Planning => choose_planning(state, &self.planner),
            Strategy::Reactive => choose_reactive(state, &self.planner),
            Strategy::Forward => Some(choose_forward(state, self.config(), self.field())),
            Strategy::Expert => choose_expert(state, &self.expert, self.config(), self.field()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn playbook() -> Playbook {
        Playbook::new(FieldConfig::default(), SimConfig::default()).unwrap()
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert!("random".parse::<Strategy>().is_err());
    }

    #[test]
    fn forward_on_axis_points_straight() {
        let pb = playbook();
        let ball = Point::new(3.0, 2.0);
        let state = GameState::new(ball, vec![Point::new(3.0, 1.8)], vec![Point::new(3.0, 4.0)]).unwrap();
        let k = choose_forward(&state, pb.config(), pb.field());
        assert!((k.direction - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert_eq!(k.length, 4.0);
        assert!((k.segment.b.x - 3.0).abs() < 1e-12 && (k.segment.b.y - 6.0).abs() < 1e-12);
    }

    #[test]
    fn planning_is_deterministic() {
        let pb = playbook();
        let ball = Point::new(1.0, 3.0);
        let state = GameState::new(ball, vec![ball, Point::new(4.0, 6.0)], vec![Point::new(2.0, 5.0)]).unwrap();
        let a = pb.choose(Strategy::Planning, &state).unwrap();
        let b = pb.choose(Strategy::Planning, &state).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reactive_prefers_an_open_goal() {
        let pb = playbook();
        let ball = Point::new(3.0, 7.0);
        let state = GameState::new(ball, vec![ball], vec![]).unwrap();
        let k = pb.choose(Strategy::Reactive, &state).unwrap();
        assert!(pb.field().goal_crossing(&k.segment).is_some());
    }

    #[test]
    fn expert_without_opponents_takes_top_entry() {
        let pb = playbook();
        let ball = Point::new(1.1, 3.3);
        let state = GameState::new(ball, vec![ball], vec![]).unwrap();
        let k = pb.choose(Strategy::Expert, &state).unwrap();
        let top = pb.expert_table().entries_at(ball)[0];
        assert_eq!(k.direction, top.direction);
    }

    #[test]
    fn expert_skips_a_blocked_top_entry() {
        let pb = playbook();
        let ball = Point::new(3.1, 3.1);
        let entries = pb.expert_table().entries_at(ball);
        let top_dir = entries[0].direction;
        let blocker = ball + Point::from_angle(top_dir) * 2.0;
        let state = GameState::new(ball, vec![ball], vec![blocker]).unwrap();
        let k = pb.choose(Strategy::Expert, &state).unwrap();
        assert_ne!(k.direction, top_dir);
        assert_eq!(k.direction, entries[1].direction);
    }

    #[test]
    fn expert_kicks_anyway_when_all_blocked() {
        let pb = playbook();
        let ball = Point::new(3.1, 3.1);
        // An opponent on top of the ball blocks every direction.
        let state = GameState::new(ball, vec![ball], vec![ball]).unwrap();
        let k = pb.choose(Strategy::Expert, &state).unwrap();
        assert_eq!(k.direction, pb.expert_table().entries_at(ball)[0].direction);
    }
}
