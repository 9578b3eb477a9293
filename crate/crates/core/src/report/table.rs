//! Summary table in comma-separated form, strategies as columns.
//!
//! Lines starting with `#` echo the configuration. Metrics with no
//! successful game to average over print as `-`.

use crate::report::experiment::{MetricsReport, StrategyMetrics};
use crate::strategy::Strategy;
use crate::Error;

pub const ROW_SUCCESS: &str = "Success rate";
pub const ROW_TIME: &str = "Time s";
pub const ROW_KICKS: &str = "Kicks number";
pub const ROW_POSSESSION: &str = "Ball poss. %";
pub const ROW_INTERSECTED: &str = "Intersected";

type Row = (&'static str, fn(&StrategyMetrics) -> String);

fn fixed(value: Option<f64>, precision: usize) -> String {
    value.map_or_else(|| "-".to_string(), |v| format!("{v:.precision$}"))
}

const ROWS: [Row; 5] = [
    (ROW_SUCCESS, |m| format!("{:.2}", m.success_rate)),
    (ROW_TIME, |m| fixed(m.mean_time_s, 1)),
    (ROW_KICKS, |m| fixed(m.mean_kicks, 1)),
    (ROW_POSSESSION, |m| fixed(m.possession_pct, 2)),
    (ROW_INTERSECTED, |m| m.intersected.to_string()),
];

pub fn emit_table(report: &MetricsReport) -> String {
    let columns: Vec<&StrategyMetrics> = Strategy::TABLE_ORDER.iter().filter_map(|&s| report.get(s)).collect();
    let mut out = String::new();
    for (key, value) in &report.settings {
        out.push_str(&format!("# {key} = {value}\n"));
    }
    out.push_str("metric");
    for m in &columns {
        out.push(',');
        out.push_str(m.strategy.title());
    }
    out.push('\n');
    for (label, cell) in ROWS {
        out.push_str(label);
        for m in &columns {
            out.push(',');
            out.push_str(&cell(m));
        }
        out.push('\n');
    }
    out
}

/// A table read back from [`emit_table`] output.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedTable {
    pub columns: Vec<Strategy>,
    /// Row label and one value per column; `None` for `-`.
    pub rows: Vec<(String, Vec<Option<f64>>)>,
}

impl ParsedTable {
    pub fn value(&self, row: &str, strategy: Strategy) -> Option<f64> {
        let col = self.columns.iter().position(|&s| s == strategy)?;
        self.rows.iter().find(|(label, _)| label == row)?.1[col]
    }

    pub fn cell_is_dash(&self, row: &str, strategy: Strategy) -> bool {
        let Some(col) = self.columns.iter().position(|&s| s == strategy) else {
            return false;
        };
        self.rows.iter().any(|(label, cells)| label == row && cells[col].is_none())
    }
}

pub fn parse_table(text: &str) -> Result<ParsedTable, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let mut header_cells = header.split(',');
    if header_cells.next() != Some("metric") {
        return Err(Error::Parse {
            line: 1,
            msg: "header must start with `metric`".into(),
        });
    }
    let columns = header_cells.map(str::parse).collect::<Result<Vec<Strategy>, _>>()?;
    let mut rows = Vec::new();
    for (i, line) in lines {
        let mut cells = line.split(',');
        let label = cells.next().unwrap_or_default().to_string();
        let values = cells
            .map(|c| match c {
                "-" => Ok(None),
                v => v.parse::<f64>().map(Some).map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: format!("{label}: {e}"),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != columns.len() {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("expected {} cells, found {}", columns.len(), values.len()),
            });
        }
        rows.push((label, values));
    }
    Ok(ParsedTable { columns, rows })
}
