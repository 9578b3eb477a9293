//! Attack planning for humanoid robot soccer.
//!
//! The field is cut into a grid of cells whose centers are graph vertices.
//! A kick moves the ball a fixed distance, so the edges out of a vertex form
//! a ring around it, plus terminal edges that end past the opponent goal
//! line between the posts. [`search::Planner`] runs A* over this implicit
//! graph to find the fastest sequence of kicks into the goal.
//!
//! [`sim`] plays whole attacks against static opponents with a stochastic
//! interception model, and [`report`] compares the planner against three
//! baseline strategies across many seeded layouts.
//!
//! ```
//! use kickplan::{FieldConfig, GameState, Planner, Point, SimConfig};
//!
//! let ball = Point::new(3.0, 1.5);
//! let state = GameState::new(ball, vec![Point::new(3.0, 1.3)], vec![Point::new(3.0, 4.0)])?;
//! let planner = Planner::new(FieldConfig::default(), SimConfig::default())?;
//! let plan = planner.plan(&state)?;
//! assert!(plan.kicks.last().unwrap().is_goal);
//! # Ok::<(), kickplan::Error>(())
//! ```

use std::path::PathBuf;

pub mod expert;
pub mod field;
pub mod geometry;
pub mod report;
pub mod search;
pub mod sim;
pub mod strategy;

pub use expert::{build_expert_table, ExpertTable};
pub use field::{goal_edges, kick_successors, snap_to_vertex, vertex_center, FieldConfig, KickEdge, KickGraph, KickTarget, VertexId};
pub use geometry::{dist_point_segment, segment_intersects_disk, segments_cross, Disk, Point, Segment};
pub use report::{emit_table, render_trace, run_experiment, ExperimentConfig, MetricsReport};
pub use search::{edge_cost, heuristic, plan_attack, time_to_approach, GameState, HeuristicMode, KickPlan, Planner, SimConfig};
pub use sim::{resolve_kick, run_game, GameRecord, LayoutKind, Outcome, Rng};
pub use strategy::{choose_expert, choose_forward, choose_planning, choose_reactive, ChosenKick, Playbook, Strategy};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid game state: {0}")]
    InvalidState(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("no sequence of kicks reaches the goal")]
    NoPlan,
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

// The guide's code blocks compile and run as doctests of these modules.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/field_graph.md")]
    mod field_graph {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/strategies.md")]
    mod strategies {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
