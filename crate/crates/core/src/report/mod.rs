//! Experiment orchestration and artifacts: configuration files, metrics,
//! the summary table and SVG traces.

pub mod config;
pub mod experiment;
pub mod render;
pub mod table;

pub use config::ExperimentConfig;
pub use experiment::{aggregate, run_experiment, simulate, simulate_with, Experiment, MetricsReport, StrategyMetrics};
pub use render::{frame_file_name, render_trace, Frame};
pub use table::{emit_table, parse_table, ParsedTable};
