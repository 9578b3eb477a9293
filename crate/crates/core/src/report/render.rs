//! SVG frames of a recorded game, one per kick.
//!
//! The opponent goal is drawn at the top. Everything is clipped to the field
//! plus [`MARGIN`] on every side.

use std::fmt::Write as _;

use crate::field::FieldConfig;
use crate::geometry::{Point, Segment};
use crate::sim::GameRecord;

/// Drawing border around the field, meters.
pub const MARGIN: f64 = 0.5;
/// Pixels per meter.
pub const SCALE: f64 = 100.0;

const ALLY_COLOR: &str = "#1f5fbf";
const OPPONENT_COLOR: &str = "#c62828";

/// One rendered frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    /// Index of the kick this frame shows, from 0.
    pub kick: usize,
    pub svg: String,
}

/// File name of a frame, e.g. `007_planning_1.svg` (kicks numbered from 1).
pub fn frame_file_name(record: &GameRecord, frame: &Frame) -> String {
    format!("{:03}_{}_{}.svg", record.layout_id, record.strategy, frame.kick + 1)
}

struct Canvas<'a> {
    field: &'a FieldConfig,
    out: String,
}

impl Canvas<'_> {
    fn px(&self, p: Point) -> (f64, f64) {
        ((p.x + MARGIN) * SCALE, (self.field.length - p.y + MARGIN) * SCALE)
    }

    fn clip(&self, s: Segment) -> Option<Segment> {
        clip_segment(s, Point::new(-MARGIN, -MARGIN), Point::new(self.field.width + MARGIN, self.field.length + MARGIN))
    }

    fn line(&mut self, s: Segment, stroke: &str, width: f64, extra: &str) {
        let Some(s) = self.clip(s) else { return };
        let (x1, y1) = self.px(s.a);
        let (x2, y2) = self.px(s.b);
        let _ = writeln!(
            self.out,
            r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="{stroke}" stroke-width="{width}"{extra}/>"#
        );
    }

    fn circle(&mut self, c: Point, r: f64, fill: &str, extra: &str) {
        let (cx, cy) = self.px(c);
        let _ = writeln!(self.out, r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="{:.1}" fill="{fill}"{extra}/>"#, r * SCALE);
    }

    fn rect(&mut self, min: Point, max: Point, style: &str) {
        let (x, y) = self.px(Point::new(min.x, max.y));
        let (w, h) = ((max.x - min.x) * SCALE, (max.y - min.y) * SCALE);
        let _ = writeln!(self.out, r#"<rect x="{x:.1}" y="{y:.1}" width="{w:.1}" height="{h:.1}" {style}/>"#);
    }
}

/// Liang-Barsky clipping of `s` to the box `[min, max]`.
pub fn clip_segment(s: Segment, min: Point, max: Point) -> Option<Segment> {
    let d = s.direction();
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (p, q) in [
        (-d.x, s.a.x - min.x),
        (d.x, max.x - s.a.x),
        (-d.y, s.a.y - min.y),
        (d.y, max.y - s.a.y),
    ] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let t = q / p;
            if p < 0.0 {
                t0 = t0.max(t);
            } else {
                t1 = t1.min(t);
            }
        }
    }
    (t0 <= t1).then(|| Segment::new(s.point_at(t0), s.point_at(t1)))
}

fn draw_field(c: &mut Canvas) {
    let f = *c.field;
    c.rect(
        Point::new(-MARGIN, -MARGIN),
        Point::new(f.width + MARGIN, f.length + MARGIN),
        r##"fill="#2e7d32""##,
    );
    c.rect(Point::new(0.0, 0.0), Point::new(f.width, f.length), r#"fill="none" stroke="white" stroke-width="3""#);
    c.line(
        Segment::new(Point::new(0.0, f.length / 2.0), Point::new(f.width, f.length / 2.0)),
        "white",
        3.0,
        "",
    );
    let (cx, cy) = c.px(Point::new(f.width / 2.0, f.length / 2.0));
    let _ = writeln!(c.out, r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="75.0" fill="none" stroke="white" stroke-width="3"/>"#);
    c.line(f.goal_segment(), "yellow", 8.0, "");
    c.line(f.own_goal_segment(), "#9e9e9e", 8.0, "");
}

/// One frame per kick: field, goals, robots, the ball's path so far,
/// interception zones and the chosen kick.
pub fn render_trace(record: &GameRecord, field: &FieldConfig) -> Vec<Frame> {
    record
        .kicks
        .iter()
        .enumerate()
        .map(|(k, event)| {
            let width = (field.width + 2.0 * MARGIN) * SCALE;
            let height = (field.length + 2.0 * MARGIN) * SCALE;
            let mut c = Canvas {
                field,
                out: format!(
                    "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">\n"
                ),
            };
            draw_field(&mut c);
            let zone = event.state.opponent_disks(record.interception_radius);
            for d in &zone {
                c.circle(d.center, d.radius, OPPONENT_COLOR, r#" fill-opacity="0.25""#);
            }
            for earlier in &record.kicks[..k] {
                c.line(
                    Segment::new(earlier.kick.origin, earlier.outcome.ball_end),
                    "white",
                    2.0,
                    r#" stroke-dasharray="8,6""#,
                );
            }
            c.line(event.kick.segment, "orange", 4.0, "");
            c.line(
                Segment::new(event.kick.origin, event.outcome.ball_end),
                "black",
                2.0,
                "",
            );
            for &p in &event.state.allies {
                c.circle(p, 0.12, ALLY_COLOR, "");
            }
            for &p in &event.state.opponents {
                c.circle(p, 0.12, OPPONENT_COLOR, "");
            }
            c.circle(event.state.ball, 0.1, "white", r#" stroke="black" stroke-width="1""#);
            c.out.push_str("</svg>\n");
            Frame { kick: k, svg: c.out }
        })
        .collect()
}
