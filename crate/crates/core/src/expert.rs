//! Block-wise ranked kick directions for the expert baseline.
//!
//! The field is tiled with 20 cm blocks. Each block lists kick directions
//! in descending score order. The built-in table is procedural: candidate
//! directions every 15 degrees, scored by alignment with the goal center
//! and by forward progress. Any other table can be loaded from the text
//! format written by [`ExpertTable::to_text`].

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::field::FieldConfig;
use crate::geometry::{Point, Segment};
use crate::search::SimConfig;
use crate::Error;

pub const BLOCK_SIZE: f64 = 0.2;
pub const DIRECTION_STEP: f64 = PI / 12.0;
pub const ALIGNMENT_WEIGHT: f64 = 1.0;
pub const PROGRESS_WEIGHT: f64 = 0.5;
// Subtracted per direction index so equal raw scores stay strictly ordered.
const TIE_EPSILON: f64 = 1e-12;

const HEADER: &str = "expert-table v1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpertEntry {
    /// Kick direction, radians.
    pub direction: f64,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpertTable {
    pub block: f64,
    pub rows: usize,
    pub cols: usize,
    /// Row-major, `rows * cols` blocks.
    blocks: Vec<Vec<ExpertEntry>>,
}

impl ExpertTable {
    /// Block `(row, col)` containing `p`, clamped to the table.
    pub fn block_of(&self, p: Point) -> (usize, usize) {
        let idx = |v: f64, n: usize| ((v / self.block).floor().max(0.0) as usize).min(n - 1);
        (idx(p.y, self.rows), idx(p.x, self.cols))
    }

    pub fn entries(&self, row: usize, col: usize) -> &[ExpertEntry] {
        &self.blocks[row * self.cols + col]
    }

    pub fn entries_at(&self, p: Point) -> &[ExpertEntry] {
        let (row, col) = self.block_of(p);
        self.entries(row, col)
    }

    pub fn block_center(&self, row: usize, col: usize) -> Point {
        Point::new((col as f64 + 0.5) * self.block, (row as f64 + 0.5) * self.block)
    }

    pub fn blocks(&self) -> impl Iterator<Item = ((usize, usize), &[ExpertEntry])> {
        self.blocks
            .iter()
            .enumerate()
            .map(move |(i, e)| ((i / self.cols, i % self.cols), e.as_slice()))
    }

    /// One header line, one dimensions line, then one line per block:
    /// `row col direction:score ...`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER}\nblock {} rows {} cols {}\n", self.block, self.rows, self.cols);
        for ((row, col), entries) in self.blocks() {
            let _ = write!(out, "{row} {col}");
            for e in entries {
                let _ = write!(out, " {}:{}", e.direction, e.score);
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, Error> {
        let err = |line: usize, msg: String| Error::Parse { line, msg };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());

        match lines.next() {
            Some((_, l)) if l.trim() == HEADER => {}
            Some((i, l)) => return Err(err(i + 1, format!("expected `{HEADER}`, found `{l}`"))),
            None => return Err(err(1, "empty expert table".into())),
        }

        let (dim_line, dims) = lines.next().ok_or_else(|| err(2, "missing dimensions".into()))?;
        let parts: Vec<&str> = dims.split_whitespace().collect();
        let (block, rows, cols) = match parts.as_slice() {
            ["block", b, "rows", r, "cols", c] => (
                b.parse::<f64>().map_err(|e| err(dim_line + 1, e.to_string()))?,
                r.parse::<usize>().map_err(|e| err(dim_line + 1, e.to_string()))?,
                c.parse::<usize>().map_err(|e| err(dim_line + 1, e.to_string()))?,
            ),
            _ => return Err(err(dim_line + 1, format!("malformed dimensions `{dims}`"))),
        };
        if block.is_nan() || block <= 0.0 || rows == 0 || cols == 0 {
            return Err(err(dim_line + 1, "table dimensions must be positive".into()));
        }

        let mut blocks: Vec<Option<Vec<ExpertEntry>>> = vec![None; rows * cols];
        for (i, line) in lines {
            let lineno = i + 1;
            let mut fields = line.split_whitespace();
            let mut index = || -> Result<usize, Error> {
                fields
                    .next()
                    .ok_or_else(|| err(lineno, "missing block index".into()))?
                    .parse()
                    .map_err(|e: std::num::ParseIntError| err(lineno, e.to_string()))
            };
            let (row, col) = (index()?, index()?);
            if row >= rows || col >= cols {
                return Err(err(lineno, format!("block ({row}, {col}) outside the table")));
            }
            let mut entries = Vec::new();
            for pair in fields {
                let (d, s) = pair
                    .split_once(':')
                    .ok_or_else(|| err(lineno, format!("expected direction:score, found `{pair}`")))?;
                let parse = |v: &str| v.parse::<f64>().map_err(|e| err(lineno, e.to_string()));
                entries.push(ExpertEntry {
                    direction: parse(d)?,
                    score: parse(s)?,
                });
            }
            if entries.is_empty() {
                return Err(err(lineno, "block has no entries".into()));
            }
            if entries.windows(2).any(|w| w[0].score.partial_cmp(&w[1].score) != Some(std::cmp::Ordering::Greater)) {
                return Err(err(lineno, "entries must be strictly descending by score".into()));
            }
            let slot = &mut blocks[row * cols + col];
            if slot.is_some() {
                return Err(err(lineno, format!("block ({row}, {col}) listed twice")));
            }
            *slot = Some(entries);
        }

        let blocks = blocks
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or_else(|| err(0, format!("block ({}, {}) missing", i / cols, i % cols))))
            .collect::<Result<_, _>>()?;
        Ok(ExpertTable { block, rows, cols, blocks })
    }
}

/// Whether a kick of `length` from `origin` stays on the field or scores.
pub(crate) fn kick_is_playable(origin: Point, direction: f64, length: f64, field: &FieldConfig) -> bool {
    let end = origin + Point::from_angle(direction) * length;
    field.contains(end) || field.goal_crossing(&Segment::new(origin, end)).is_some()
}

/// The built-in procedural table for `field`, using the longest kick.
pub fn build_expert_table(field: &FieldConfig, cfg: &SimConfig) -> ExpertTable {
    let rows = (field.length / BLOCK_SIZE - 1e-9).ceil() as usize;
    let cols = (field.width / BLOCK_SIZE - 1e-9).ceil() as usize;
    let length = cfg.max_kick_radius();
    let n_dirs = (2.0 * PI / DIRECTION_STEP).round() as usize;

    let mut table = ExpertTable {
        block: BLOCK_SIZE,
        rows,
        cols,
        blocks: Vec::with_capacity(rows * cols),
    };
    for row in 0..rows {
        for col in 0..cols {
            let center = table.block_center(row, col);
            let goal_dir = (field.goal_center() - center).angle();
            let score_of = |k: usize| {
                let direction = k as f64 * DIRECTION_STEP;
                let alignment = (direction - goal_dir).cos();
                let progress = direction.sin();
                ALIGNMENT_WEIGHT * alignment + PROGRESS_WEIGHT * progress - k as f64 * TIE_EPSILON
            };
            let mut entries: Vec<ExpertEntry> = (0..n_dirs)
                .filter(|&k| kick_is_playable(center, k as f64 * DIRECTION_STEP, length, field))
                .map(|k| ExpertEntry {
                    direction: k as f64 * DIRECTION_STEP,
                    score: score_of(k),
                })
                .collect();
            if entries.is_empty() {
                entries = (0..n_dirs)
                    .map(|k| ExpertEntry {
                        direction: k as f64 * DIRECTION_STEP,
                        score: score_of(k),
                    })
                    .collect();
            }
            entries.sort_by(|a, b| b.score.total_cmp(&a.score));
            table.blocks.push(entries);
        }
    }
    table
}
