//! Runs every strategy on every layout and aggregates the results.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::config::ExperimentConfig;
use crate::report::table::emit_table;
use crate::sim::{derive_seed, game_stream, run_game, GameRecord, LayoutKind, Rng};
use crate::strategy::{Playbook, Strategy};
use crate::Error;

/// Per-strategy statistics. Time, kicks and possession cover successful
/// games only; `intersected` covers every game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyMetrics {
    pub strategy: Strategy,
    pub games: usize,
    pub goals: usize,
    pub success_rate: f64,
    pub mean_time_s: Option<f64>,
    pub mean_kicks: Option<f64>,
    pub possession_pct: Option<f64>,
    /// Kicks that crossed an interception zone, summed over all games.
    pub intersected: usize,
    /// Means restricted to layouts every strategy scored on.
    pub common_mean_time_s: Option<f64>,
    pub common_mean_kicks: Option<f64>,
    pub common_possession_pct: Option<f64>,
    /// Per successful game, in layout order.
    pub times_s: Vec<f64>,
    pub kicks: Vec<usize>,
    pub possession: Vec<f64>,
    /// Per game, in layout order.
    pub intersected_per_game: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub layout_type: LayoutKind,
    pub num_layouts: usize,
    /// Echo of the full configuration, in file order.
    pub settings: Vec<(String, String)>,
    pub config_hash: String,
    /// Layouts on which every strategy scored.
    pub common_success_layouts: usize,
    pub strategies: Vec<StrategyMetrics>,
}

impl MetricsReport {
    pub fn get(&self, strategy: Strategy) -> Option<&StrategyMetrics> {
        self.strategies.iter().find(|m| m.strategy == strategy)
    }
}

/// Report plus every game, ordered by layout then by configured strategy.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub report: MetricsReport,
    pub records: Vec<GameRecord>,
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Aggregates games into per-strategy metrics. `records` must hold one game
/// per `(layout, strategy)`.
pub fn aggregate(cfg: &ExperimentConfig, config_hash: String, records: &[GameRecord]) -> MetricsReport {
    let common: Vec<usize> = (0..cfg.num_layouts)
        .filter(|&layout| {
            cfg.strategies.iter().all(|&s| {
                records
                    .iter()
                    .any(|r| r.layout_id == layout && r.strategy == s && r.is_goal())
            })
        })
        .collect();

    let strategies = cfg
        .strategies
        .iter()
        .map(|&strategy| {
            let games: Vec<&GameRecord> = records.iter().filter(|r| r.strategy == strategy).collect();
            let won: Vec<&GameRecord> = games.iter().copied().filter(|r| r.is_goal()).collect();
            let won_common: Vec<&GameRecord> = won.iter().copied().filter(|r| common.contains(&r.layout_id)).collect();
            StrategyMetrics {
                strategy,
                games: games.len(),
                goals: won.len(),
                success_rate: if games.is_empty() { 0.0 } else { won.len() as f64 / games.len() as f64 },
                mean_time_s: mean(won.iter().map(|r| r.elapsed)),
                mean_kicks: mean(won.iter().map(|r| r.kicks.len() as f64)),
                possession_pct: mean(won.iter().map(|r| r.possession_percent())),
                intersected: games.iter().map(|r| r.intersected_kicks()).sum(),
                common_mean_time_s: mean(won_common.iter().map(|r| r.elapsed)),
                common_mean_kicks: mean(won_common.iter().map(|r| r.kicks.len() as f64)),
                common_possession_pct: mean(won_common.iter().map(|r| r.possession_percent())),
                times_s: won.iter().map(|r| r.elapsed).collect(),
                kicks: won.iter().map(|r| r.kicks.len()).collect(),
                possession: won.iter().map(|r| r.possession_percent()).collect(),
                intersected_per_game: games.iter().map(|r| r.intersected_kicks()).collect(),
            }
        })
        .collect();

    MetricsReport {
        layout_type: cfg.layout_type,
        num_layouts: cfg.num_layouts,
        settings: cfg.settings().into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        config_hash,
        common_success_layouts: common.len(),
        strategies,
    }
}

/// Seed of layout `index` under the experiment's master seed.
pub fn layout_seed(cfg: &ExperimentConfig, index: usize) -> u64 {
    derive_seed(cfg.sim.rng_seed, index as u64)
}

/// Simulates the experiment with a freshly built playbook.
pub fn simulate(cfg: &ExperimentConfig) -> Result<Experiment, Error> {
    cfg.validate()?;
    let playbook = Playbook::new(cfg.field, cfg.sim.clone())?;
    Ok(simulate_with(cfg, &playbook))
}

/// Simulates the experiment. Games are spread over threads; each draws from
/// its own `(layout, strategy)` substream, so the result does not depend on
/// scheduling.
pub fn simulate_with(cfg: &ExperimentConfig, playbook: &Playbook) -> Experiment {
    let records: Vec<GameRecord> = (0..cfg.num_layouts)
        .into_par_iter()
        .flat_map_iter(|index| {
            let seed = layout_seed(cfg, index);
            let layout = cfg.layout_type.generate(seed, &cfg.field);
            cfg.strategies
                .iter()
                .map(|&strategy| {
                    let mut rng = Rng::with_stream(seed, game_stream(strategy));
                    run_game(index, &layout, strategy, playbook, &mut rng)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let report = aggregate(cfg, playbook.config_hash(), &records);
    Experiment { report, records }
}

fn write(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// File name of a game record.
pub fn record_file_name(record: &GameRecord) -> String {
    format!("{:03}_{}.json", record.layout_id, record.strategy)
}

impl Experiment {
    /// Writes `report.csv`, `report.json` and one JSON document per game
    /// under `records/`.
    pub fn write_to(&self, dir: &Path) -> Result<(), Error> {
        let records_dir = dir.join("records");
        fs::create_dir_all(&records_dir).map_err(|source| Error::Io {
            path: records_dir.clone(),
            source,
        })?;
        write(&dir.join("report.csv"), &emit_table(&self.report))?;
        write(&dir.join("report.json"), &(serde_json::to_string_pretty(&self.report)? + "\n"))?;
        for record in &self.records {
            let text = serde_json::to_string_pretty(record)? + "\n";
            write(&records_dir.join(record_file_name(record)), &text)?;
        }
        Ok(())
    }
}

/// Simulates and writes every artifact to `cfg.out_dir`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<MetricsReport, Error> {
    let experiment = simulate(cfg)?;
    experiment.write_to(&cfg.out_dir)?;
    Ok(experiment.report)
}
