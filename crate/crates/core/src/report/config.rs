//! Experiment configuration as a flat `key = value` file.
//!
//! Keys carry their units. Blank lines and `#` comments are ignored, unknown
//! keys are rejected, and omitted keys keep their defaults.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::field::FieldConfig;
use crate::search::{HeuristicMode, SimConfig};
use crate::sim::LayoutKind;
use crate::strategy::Strategy;
use crate::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub layout_type: LayoutKind,
    pub num_layouts: usize,
    pub strategies: Vec<Strategy>,
    /// `sim.rng_seed` is the master seed of the experiment.
    pub sim: SimConfig,
    pub field: FieldConfig,
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            layout_type: LayoutKind::Random,
            num_layouts: 100,
            strategies: Strategy::ALL.to_vec(),
            sim: SimConfig::default(),
            field: FieldConfig::default(),
            out_dir: PathBuf::from("out"),
        }
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.num_layouts == 0 {
            return Err(Error::InvalidConfig("num_layouts must be at least 1".into()));
        }
        if self.strategies.is_empty() {
            return Err(Error::InvalidConfig("at least one strategy is required".into()));
        }
        self.field.validate()?;
        self.sim.validate(&self.field)
    }

    /// Every setting as `(key, value)`, in file order.
    pub fn settings(&self) -> Vec<(&'static str, String)> {
        let s = &self.sim;
        let f = &self.field;
        vec![
            ("layout_type", self.layout_type.name().to_string()),
            ("num_layouts", self.num_layouts.to_string()),
            ("strategies", join(&self.strategies)),
            ("seed", s.rng_seed.to_string()),
            ("heuristic_mode", s.heuristic_mode.to_string()),
            ("kick_radii_m", join(&s.kick_radii)),
            ("ball_speed_mps", s.ball_speed.to_string()),
            ("robot_speed_mps", s.robot_speed.to_string()),
            ("penalty_factor", s.penalty_factor.to_string()),
            ("interception_radius_m", s.interception_radius.to_string()),
            ("pass_through_prob", s.pass_through_prob.to_string()),
            ("possession_radius_m", s.possession_radius.to_string()),
            ("timestep_s", s.timestep.to_string()),
            ("field_length_m", f.length.to_string()),
            ("field_width_m", f.width.to_string()),
            ("cell_m", f.cell.to_string()),
            ("goal_width_m", f.goal_width.to_string()),
            ("out_dir", self.out_dir.display().to_string()),
        ]
    }

    pub fn to_text(&self) -> String {
        self.settings().iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut cfg = ExperimentConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = i + 1;
            let err = |msg: String| Error::Parse { line: lineno, msg };
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err(format!("expected `key = value`, found `{line}`")))?;
            let num = |v: &str| v.parse::<f64>().map_err(|e| err(format!("{key}: {e}")));
            match key {
                "layout_type" => cfg.layout_type = value.parse().map_err(|e: Error| err(e.to_string()))?,
                "num_layouts" => cfg.num_layouts = value.parse().map_err(|e| err(format!("{key}: {e}")))?,
                "strategies" => {
                    cfg.strategies = value
                        .split(',')
                        .map(|s| s.parse::<Strategy>())
                        .collect::<Result<_, _>>()
                        .map_err(|e| err(e.to_string()))?
                }
                "seed" => cfg.sim.rng_seed = value.parse().map_err(|e| err(format!("{key}: {e}")))?,
                "heuristic_mode" => {
                    cfg.sim.heuristic_mode = value.parse::<HeuristicMode>().map_err(|e| err(e.to_string()))?
                }
                "kick_radii_m" => cfg.sim.kick_radii = value.split(',').map(|v| num(v.trim())).collect::<Result<_, _>>()?,
                "ball_speed_mps" => cfg.sim.ball_speed = num(value)?,
                "robot_speed_mps" => cfg.sim.robot_speed = num(value)?,
                "penalty_factor" => cfg.sim.penalty_factor = num(value)?,
                "interception_radius_m" => cfg.sim.interception_radius = num(value)?,
                "pass_through_prob" => cfg.sim.pass_through_prob = num(value)?,
                "possession_radius_m" => cfg.sim.possession_radius = num(value)?,
                "timestep_s" => cfg.sim.timestep = num(value)?,
                "field_length_m" => cfg.field.length = num(value)?,
                "field_width_m" => cfg.field.width = num(value)?,
                "cell_m" => cfg.field.cell = num(value)?,
                "goal_width_m" => cfg.field.goal_width = num(value)?,
                "out_dir" => cfg.out_dir = PathBuf::from(value),
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }
}
