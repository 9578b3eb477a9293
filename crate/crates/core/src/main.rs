use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use kickplan::report::{emit_table, frame_file_name, render_trace, simulate_with, ExperimentConfig};
use kickplan::{ExpertTable, GameRecord, GameState, HeuristicMode, LayoutKind, Planner, Playbook, Point, Strategy};

#[derive(Parser)]
#[command(name = "kickplan", version, about = "Plan and evaluate robot soccer attacks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan an attack from a game state file and print the plan as JSON.
    Plan {
        /// JSON file with `ball`, `allies` and `opponents`.
        state: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run an experiment and write the report and game records.
    Simulate {
        #[command(flatten)]
        overrides: Overrides,
        /// Expert table in the `expert-table v1` text format.
        #[arg(long)]
        expert_table: Option<PathBuf>,
    },
    /// Render a game record as one SVG frame per kick.
    Render {
        record: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "frames")]
        out_dir: PathBuf,
    },
    /// Write the built-in expert table.
    ExpertTable {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "expert_table.txt")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct Overrides {
    /// Experiment configuration file (`key = value` lines).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    layouts: Option<usize>,
    #[arg(long, value_parser = ["random", "attack"])]
    layout_type: Option<String>,
    #[arg(long = "kick-radius")]
    kick_radii: Vec<f64>,
    #[arg(long = "strategy")]
    strategies: Vec<Strategy>,
    #[arg(long, value_parser = ["teammate", "admissible"])]
    heuristic_mode: Option<String>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

impl Overrides {
    fn resolve(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(seed) = self.seed {
            cfg.sim.rng_seed = seed;
        }
        if let Some(n) = self.layouts {
            cfg.num_layouts = n;
        }
        if let Some(kind) = &self.layout_type {
            cfg.layout_type = kind.parse::<LayoutKind>()?;
        }
        if !self.kick_radii.is_empty() {
            cfg.sim.kick_radii = self.kick_radii.clone();
        }
        if !self.strategies.is_empty() {
            cfg.strategies = self.strategies.clone();
        }
        if let Some(mode) = &self.heuristic_mode {
            cfg.sim.heuristic_mode = mode.parse::<HeuristicMode>()?;
        }
        if let Some(dir) = &self.out_dir {
            cfg.out_dir = dir.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Deserialize)]
struct StateFile {
    ball: Point,
    allies: Vec<Point>,
    opponents: Vec<Point>,
}

fn load_config(path: Option<&Path>) -> Result<ExperimentConfig> {
    Ok(match path {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    })
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Plan { state, overrides } => {
            let cfg = overrides.resolve()?;
            let text = fs::read_to_string(&state).with_context(|| format!("reading {}", state.display()))?;
            let input: StateFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", state.display()))?;
            let state = GameState::new(input.ball, input.allies, input.opponents)?;
            state.validate(&cfg.field)?;
            let plan = Planner::new(cfg.field, cfg.sim)?.plan(&state)?;
            println!("{}", serde_json::to_string_pretty(&plan)?);
        }
        Command::Simulate { overrides, expert_table } => {
            let cfg = overrides.resolve()?;
            let mut playbook = Playbook::new(cfg.field, cfg.sim.clone())?;
            if let Some(path) = expert_table {
                let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                playbook = playbook.with_expert_table(ExpertTable::from_text(&text)?);
            }
            let experiment = simulate_with(&cfg, &playbook);
            experiment.write_to(&cfg.out_dir)?;
            print!("{}", emit_table(&experiment.report));
            eprintln!("wrote {} game records to {}", experiment.records.len(), cfg.out_dir.display());
        }
        Command::Render { record, config, out_dir } => {
            let cfg = load_config(config.as_deref())?;
            let text = fs::read_to_string(&record).with_context(|| format!("reading {}", record.display()))?;
            let record: GameRecord = serde_json::from_str(&text)?;
            let frames = render_trace(&record, &cfg.field);
            if frames.is_empty() {
                bail!("record has no kicks to render");
            }
            fs::create_dir_all(&out_dir)?;
            for frame in &frames {
                let path = out_dir.join(frame_file_name(&record, frame));
                fs::write(&path, &frame.svg).with_context(|| format!("writing {}", path.display()))?;
            }
            eprintln!("wrote {} frames to {}", frames.len(), out_dir.display());
        }
        Command::ExpertTable { config, out } => {
            let cfg = load_config(config.as_deref())?;
            let table = kickplan::build_expert_table(&cfg.field, &cfg.sim);
            fs::write(&out, table.to_text()).with_context(|| format!("writing {}", out.display()))?;
        }
    }
    Ok(())
}
