//! Starting positions: uniformly random layouts and counterattack layouts.
//!
//! Both families field three allies and three opponent field robots plus an
//! opponent goalkeeper standing in the middle of its goal. Robots keep
//! [`MIN_SEPARATION`] from each other; the ball starts [`BALL_OFFSET`] from
//! the ally that owns it.

use serde::{Deserialize, Serialize};

use crate::field::FieldConfig;
use crate::geometry::Point;
use crate::search::GameState;
use crate::sim::rng::Rng;

pub const FIELD_ROBOTS: usize = 3;
pub const BALL_OFFSET: f64 = 0.2;
pub const MIN_SEPARATION: f64 = 0.5;
/// Clearance of randomly placed robots from the field boundary.
pub const BOUNDARY_MARGIN: f64 = 0.2;
/// Depth of our penalty area from the goal line.
pub const PENALTY_AREA_DEPTH: f64 = 1.0;
pub const PENALTY_AREA_WIDTH: f64 = 3.0;
/// Ball owner sits this far in front of the penalty area before jitter.
pub const OWNER_STANDOFF: f64 = 0.3;
pub const OWNER_JITTER: f64 = 0.3;
pub const MIDFIELD_ALLY_SPREAD: f64 = 1.5;
pub const MIDFIELD_ALLY_JITTER: f64 = 1.0;
pub const MIDFIELD_OPPONENT_JITTER: f64 = 0.5;

const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayoutKind {
    Random,
    Attack,
}

impl LayoutKind {
    pub fn generate(self, seed: u64, field: &FieldConfig) -> GameState {
        match self {
            LayoutKind::Random => generate_random_layout(seed, field),
            LayoutKind::Attack => generate_attack_layout(seed, field),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LayoutKind::Random => "random",
            LayoutKind::Attack => "attack",
        }
    }
}

impl std::str::FromStr for LayoutKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, crate::Error> {
        match s {
            "random" => Ok(LayoutKind::Random),
            "attack" => Ok(LayoutKind::Attack),
            other => Err(crate::Error::InvalidConfig(format!("unknown layout type `{other}`"))),
        }
    }
}

/// Our penalty area as `(min corner, max corner)`.
pub fn own_penalty_area(field: &FieldConfig) -> (Point, Point) {
    let half = PENALTY_AREA_WIDTH / 2.0;
    (
        Point::new(field.width / 2.0 - half, 0.0),
        Point::new(field.width / 2.0 + half, PENALTY_AREA_DEPTH),
    )
}

/// Nominal spot of the ball owner in an attack layout.
pub fn owner_anchor(field: &FieldConfig) -> Point {
    Point::new(field.width / 2.0, PENALTY_AREA_DEPTH + OWNER_STANDOFF)
}

pub fn midfield_ally_anchors(field: &FieldConfig) -> [Point; 2] {
    let mid = field.length / 2.0;
    [
        Point::new(field.width / 2.0 - MIDFIELD_ALLY_SPREAD, mid),
        Point::new(field.width / 2.0 + MIDFIELD_ALLY_SPREAD, mid),
    ]
}

pub fn midfield_center(field: &FieldConfig) -> Point {
    Point::new(field.width / 2.0, field.length / 2.0)
}

fn separated(p: Point, others: &[Point]) -> bool {
    others.iter().all(|o| o.dist(p) >= MIN_SEPARATION)
}

fn uniform_in_field(rng: &mut Rng, field: &FieldConfig) -> Point {
    Point::new(
        rng.range(BOUNDARY_MARGIN, field.width - BOUNDARY_MARGIN),
        rng.range(BOUNDARY_MARGIN, field.length - BOUNDARY_MARGIN),
    )
}

fn uniform_in_disk(rng: &mut Rng, center: Point, radius: f64) -> Point {
    let r = radius * rng.uniform().sqrt();
    let angle = rng.range(0.0, std::f64::consts::TAU);
    center + Point::from_angle(angle) * r
}

// Draws with `draw` until the point keeps its distance from `placed`.
fn place(rng: &mut Rng, placed: &[Point], mut draw: impl FnMut(&mut Rng) -> Point) -> Option<Point> {
    (0..MAX_ATTEMPTS).map(|_| draw(rng)).find(|&p| separated(p, placed))
}

/// Three allies and three opponents uniformly over the field, the goalkeeper
/// in the middle of the opponent goal, and the ball next to a random ally.
pub fn generate_random_layout(seed: u64, field: &FieldConfig) -> GameState {
    let mut rng = Rng::new(seed);
    let keeper = field.goal_center();
    loop {
        let mut placed = vec![keeper];
        let mut ok = true;
        for _ in 0..2 * FIELD_ROBOTS {
            match place(&mut rng, &placed, |r| uniform_in_field(r, field)) {
                Some(p) => placed.push(p),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let allies = placed[1..=FIELD_ROBOTS].to_vec();
        let mut opponents = placed[FIELD_ROBOTS + 1..].to_vec();
        opponents.push(keeper);

        let owner = allies[rng.index(allies.len())];
        let ball = (0..MAX_ATTEMPTS)
            .map(|_| owner + Point::from_angle(rng.range(0.0, std::f64::consts::TAU)) * BALL_OFFSET)
            .find(|b| field.contains(*b));
        if let Some(ball) = ball {
            return GameState::new(ball, allies, opponents).expect("generated layout is valid");
        }
    }
}

/// Counterattack formation: our ball owner just outside our penalty area,
/// two allies waiting at midfield; opponents in our penalty area, at
/// midfield, at a random spot and in goal.
///
/// Allies are ordered `[owner, midfield left, midfield right]`, opponents
/// `[penalty area, midfield, random, goalkeeper]`.
pub fn generate_attack_layout(seed: u64, field: &FieldConfig) -> GameState {
    let mut rng = Rng::new(seed);
    let keeper = field.goal_center();
    let (pa_min, pa_max) = own_penalty_area(field);
    let [left, right] = midfield_ally_anchors(field);
    loop {
        let owner = uniform_in_disk(&mut rng, owner_anchor(field), OWNER_JITTER);
        let ball = owner + (field.goal_center() - owner) * (BALL_OFFSET / owner.dist(field.goal_center()));
        let lateral = |rng: &mut Rng, anchor: Point| {
            Point::new(anchor.x + rng.range(-MIDFIELD_ALLY_JITTER, MIDFIELD_ALLY_JITTER), anchor.y)
        };
        let mid_left = lateral(&mut rng, left);
        let mid_right = lateral(&mut rng, right);
        let in_box = Point::new(rng.range(pa_min.x, pa_max.x), rng.range(pa_min.y, pa_max.y));
        let in_mid = uniform_in_disk(&mut rng, midfield_center(field), MIDFIELD_OPPONENT_JITTER);

        let mut placed = vec![keeper, owner, mid_left, mid_right, in_box, in_mid];
        if !placed.iter().enumerate().all(|(i, p)| separated(*p, &placed[..i])) {
            continue;
        }
        let Some(wanderer) = place(&mut rng, &placed, |r| uniform_in_field(r, field)) else {
            continue;
        };
        placed.push(wanderer);
        let allies = vec![owner, mid_left, mid_right];
        let opponents = vec![in_box, in_mid, wanderer, keeper];
        return GameState::new(ball, allies, opponents).expect("generated layout is valid");
    }
}
