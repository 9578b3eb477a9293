//! Kick resolution and the game loop.
//!
//! Execution is perfect: robots walk straight at constant speed, kicks go
//! exactly where they are aimed and opponents stand still. The ball is lost
//! in two ways. Crossing an opponent's interception zone loses it with
//! probability `1 - pass_through_prob`, one independent draw per zone in the
//! order the ball reaches them. After landing, an opponent that can reach
//! the ball strictly sooner than every ally wins the race for it.

use serde::{Deserialize, Serialize};

use crate::field::FieldConfig;
use crate::geometry::{segment_intersects_disk, Point, Segment};
use crate::search::{nearest_index, time_to_approach, GameState, SimConfig};
use crate::sim::rng::Rng;
use crate::strategy::{ChosenKick, Playbook, Strategy};

/// Games still undecided after this many kicks count as failures.
pub const MAX_KICKS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Goal,
    Intercepted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LossCause {
    /// Stopped inside an opponent's interception zone.
    Zone,
    /// An opponent reached the landing point first.
    Race,
    /// The ball left the field outside the goal mouth.
    OutOfPlay,
    /// The strategy had no kick to offer.
    NoKick,
    /// [`MAX_KICKS`] reached.
    KickCap,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KickResult {
    Goal,
    Lost(LossCause),
    Landed { next_kicker: usize, approach_time: f64 },
}

/// What happened to one kick.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KickOutcome {
    /// The ball path crossed at least one interception zone.
    pub intersected_zone: bool,
    /// Every crossed zone let the ball through (vacuously true if none).
    pub survived_pass_through: bool,
    /// Interception zones crossed before the ball stopped or scored.
    pub zones_crossed: usize,
    /// Flight time until the ball stopped, scored or was intercepted.
    pub travel_time: f64,
    /// Where the flight ended.
    pub ball_end: Point,
    pub result: KickResult,
}

/// Plays `kick` from `state`. The kicker is assumed to be at the ball.
pub fn resolve_kick(state: &GameState, kick: &ChosenKick, cfg: &SimConfig, field: &FieldConfig, rng: &mut Rng) -> KickOutcome {
    let goal_t = field.goal_crossing(&kick.segment);
    let end_t = goal_t.unwrap_or(1.0);
    let flight = Segment::new(kick.segment.a, kick.segment.point_at(end_t));

    let mut crossed: Vec<(f64, usize)> = state
        .opponent_disks(cfg.interception_radius)
        .iter()
        .enumerate()
        .filter(|(_, d)| segment_intersects_disk(&flight, d))
        .map(|(i, d)| (flight.project(d.center), i))
        .collect();
    crossed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let flight_time = |t: f64| flight.length() * t / cfg.ball_speed;
    let intersected_zone = !crossed.is_empty();
    for (i, &(t, _)) in crossed.iter().enumerate() {
        // One draw per zone, always consumed, so a higher pass-through
        // probability can only turn a loss into a pass.
        if rng.uniform() >= cfg.pass_through_prob {
            return KickOutcome {
                intersected_zone,
                survived_pass_through: false,
                zones_crossed: i + 1,
                travel_time: flight_time(t),
                ball_end: flight.point_at(t),
                result: KickResult::Lost(LossCause::Zone),
            };
        }
    }

    let done = |result| KickOutcome {
        intersected_zone,
        survived_pass_through: true,
        zones_crossed: crossed.len(),
        travel_time: flight_time(1.0),
        ball_end: flight.b,
        result,
    };
    if goal_t.is_some() {
        return done(KickResult::Goal);
    }
    let landing = flight.b;
    if !field.contains(landing) {
        return done(KickResult::Lost(LossCause::OutOfPlay));
    }
    let opponent_best = state
        .opponents
        .iter()
        .map(|&o| time_to_approach(o, landing, cfg))
        .fold(f64::INFINITY, f64::min);
    let next_kicker = nearest_index(&state.allies, landing).expect("allies is non-empty");
    let approach_time = time_to_approach(state.allies[next_kicker], landing, cfg);
    if opponent_best < approach_time {
        done(KickResult::Lost(LossCause::Race))
    } else {
        done(KickResult::Landed {
            next_kicker,
            approach_time,
        })
    }
}

/// One kick of a recorded game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KickEvent {
    /// World as the strategy saw it when choosing.
    pub state: GameState,
    pub kick: ChosenKick,
    /// Walk of the kicker to the ball before kicking.
    pub approach_time: f64,
    pub outcome: KickOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameRecord {
    pub layout_id: usize,
    pub strategy: Strategy,
    /// Digest of the field and simulation settings the game ran under.
    pub config_hash: String,
    /// Interception zone radius the game ran with, meters.
    pub interception_radius: f64,
    pub layout: GameState,
    pub outcome: Outcome,
    pub loss_cause: Option<LossCause>,
    /// Seconds from the start of the attack to the goal or the loss.
    pub elapsed: f64,
    pub kicks: Vec<KickEvent>,
    pub possession_timesteps: usize,
    pub total_timesteps: usize,
}

impl GameRecord {
    pub fn is_goal(&self) -> bool {
        self.outcome == Outcome::Goal
    }

    pub fn possession_percent(&self) -> f64 {
        if self.total_timesteps == 0 {
            return 0.0;
        }
        100.0 * self.possession_timesteps as f64 / self.total_timesteps as f64
    }

    pub fn intersected_kicks(&self) -> usize {
        self.kicks.iter().filter(|k| k.outcome.intersected_zone).count()
    }
}

// A stretch of time during which the ball and at most one robot move in a
// straight line.
struct Phase {
    duration: f64,
    ball: (Point, Point),
    allies: Vec<Point>,
    walker: Option<(usize, Point, Point)>,
}

impl Phase {
    fn possessed_at(&self, t: f64, radius: f64) -> bool {
        let s = if self.duration > 0.0 { (t / self.duration).clamp(0.0, 1.0) } else { 1.0 };
        let ball = self.ball.0.lerp(self.ball.1, s);
        self.allies.iter().enumerate().any(|(i, &p)| {
            let p = match self.walker {
                Some((w, from, to)) if w == i => from.lerp(to, s),
                _ => p,
            };
            p.dist(ball) <= radius
        })
    }
}

fn count_possession(phases: &[Phase], elapsed: f64, cfg: &SimConfig) -> (usize, usize) {
    let total = (elapsed / cfg.timestep - 1e-9).ceil().max(0.0) as usize;
    let mut possessed = 0;
    let mut phase = 0;
    let mut phase_start = 0.0;
    for k in 0..total {
        let t = ((k as f64 + 0.5) * cfg.timestep).min(elapsed);
        while phase + 1 < phases.len() && t > phase_start + phases[phase].duration {
            phase_start += phases[phase].duration;
            phase += 1;
        }
        if phases[phase].possessed_at(t - phase_start, cfg.possession_radius) {
            possessed += 1;
        }
    }
    (possessed, total)
}

/// Plays `strategy` from `layout` until a goal or a loss.
pub fn run_game(layout_id: usize, layout: &GameState, strategy: Strategy, playbook: &Playbook, rng: &mut Rng) -> GameRecord {
    let cfg = playbook.config();
    let field = playbook.field();
    let mut state = layout.clone();
    let mut kicks = Vec::new();
    let mut phases = Vec::new();
    let mut elapsed = 0.0;
    let mut finish = (Outcome::Intercepted, Some(LossCause::KickCap));

    for _ in 0..MAX_KICKS {
        let Some(kick) = playbook.choose(strategy, &state) else {
            finish = (Outcome::Intercepted, Some(LossCause::NoKick));
            break;
        };
        let snapshot = state.clone();
        let kicker = state.kicking_robot;
        let walk_from = state.allies[kicker];
        let approach_time = time_to_approach(walk_from, state.ball, cfg);
        phases.push(Phase {
            duration: approach_time,
            ball: (state.ball, state.ball),
            allies: state.allies.clone(),
            walker: Some((kicker, walk_from, state.ball)),
        });
        state.allies[kicker] = state.ball;

        let outcome = resolve_kick(&state, &kick, cfg, field, rng);
        phases.push(Phase {
            duration: outcome.travel_time,
            ball: (kick.origin, outcome.ball_end),
            allies: state.allies.clone(),
            walker: None,
        });
        elapsed += approach_time + outcome.travel_time;
        kicks.push(KickEvent {
            state: snapshot,
            kick,
            approach_time,
            outcome,
        });

        match outcome.result {
            KickResult::Goal => {
                finish = (Outcome::Goal, None);
                break;
            }
            KickResult::Lost(cause) => {
                finish = (Outcome::Intercepted, Some(cause));
                break;
            }
            KickResult::Landed { next_kicker, .. } => {
                state.ball = outcome.ball_end;
                state.kicking_robot = next_kicker;
            }
        }
    }

    let (possession_timesteps, total_timesteps) = count_possession(&phases, elapsed, cfg);
    GameRecord {
        layout_id,
        strategy,
        config_hash: playbook.config_hash(),
        interception_radius: cfg.interception_radius,
        layout: layout.clone(),
        outcome: finish.0,
        loss_cause: finish.1,
        elapsed,
        kicks,
        possession_timesteps,
        total_timesteps,
    }
}
