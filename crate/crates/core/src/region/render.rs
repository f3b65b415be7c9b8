//! JSON, CSV and SVG output for [`RegionBoundary`].
//!
//! SVG uses the plot window `[-0.7, 1.2]²` in math coordinates; `y` is
//! negated on output so that the picture is upright.

use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::region::{BoundaryPiece, Point, RegionBoundary};

pub const DEFAULT_STYLE_TOML: &str = include_str!("../../assets/style.toml");

const WINDOW_MIN: f64 = -0.7;
const WINDOW_MAX: f64 = 1.2;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Style {
    pub width: u32,
    pub height: u32,
    pub background: String,
    pub axis_stroke: String,
    pub axis_width: f64,
    pub region_fill: String,
    pub segment_stroke: String,
    pub segment_width: f64,
    pub arc_stroke: String,
    pub arc_width: f64,
    pub vertex_fill: String,
    pub vertex_radius: f64,
}

impl Default for Style {
    fn default() -> Self {
        Self {
            width: 600,
            height: 600,
            background: "#ffffff".into(),
            axis_stroke: "#9a9a9a".into(),
            axis_width: 0.003,
            region_fill: "#dde8f4".into(),
            segment_stroke: "#1f4e8c".into(),
            segment_width: 0.006,
            arc_stroke: "#b03a2e".into(),
            arc_width: 0.006,
            vertex_fill: "#111111".into(),
            vertex_radius: 0.012,
        }
    }
}

impl Style {
    /// Keys missing from `s` keep their default values.
    pub fn from_toml(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Parse(format!("style: {e}")))
    }
}

pub fn to_json(b: &RegionBoundary) -> String {
    serde_json::to_string_pretty(b).expect("boundary serializes")
}

/// One row per boundary point: `label,piece,x,y`, where `label` is
/// `vertex` or `arc`.
pub fn to_csv(b: &RegionBoundary) -> String {
    let mut out = String::from("label,piece,x,y\n");
    for (i, piece) in b.pieces.iter().enumerate() {
        let s = piece.start();
        writeln!(out, "vertex,{i},{},{}", num(s.x, 12), num(s.y, 12)).unwrap();
        if let BoundaryPiece::Arc { samples, .. } = piece {
            for p in &samples[1..samples.len() - 1] {
                writeln!(out, "arc,{i},{},{}", num(p.x, 12), num(p.y, 12)).unwrap();
            }
        }
    }
    out
}

/// Fixed-point formatting without negative zero.
fn num(v: f64, digits: usize) -> String {
    let s = format!("{v:.digits$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn xy(p: &Point) -> (String, String) {
    (num(p.x, 6), num(-p.y, 6))
}

pub fn to_svg(b: &RegionBoundary, style: &Style) -> String {
    let span = WINDOW_MAX - WINDOW_MIN;
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        style.width,
        style.height,
        num(WINDOW_MIN, 6),
        num(-WINDOW_MAX, 6),
        num(span, 6),
        num(span, 6)
    )
    .unwrap();
    let name = match b.kind {
        crate::region::RegionKind::Map => "P",
        crate::region::RegionKind::State => "S",
    };
    writeln!(s, "  <title>{name}_{} for d = {}</title>", b.k, b.d).unwrap();
    writeln!(
        s,
        "  <rect class=\"background\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
        num(WINDOW_MIN, 6),
        num(-WINDOW_MAX, 6),
        num(span, 6),
        num(span, 6),
        style.background
    )
    .unwrap();
    for (x1, y1, x2, y2) in [(WINDOW_MIN, 0.0, WINDOW_MAX, 0.0), (0.0, WINDOW_MIN, 0.0, WINDOW_MAX)] {
        writeln!(
            s,
            "  <line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>",
            num(x1, 6),
            num(-y1, 6),
            num(x2, 6),
            num(-y2, 6),
            style.axis_stroke,
            num(style.axis_width, 6)
        )
        .unwrap();
    }

    let mut d = String::new();
    for p in b.boundary_points() {
        let (x, y) = xy(&p);
        d.push_str(if d.is_empty() { "M" } else { " L" });
        write!(d, "{x} {y}").unwrap();
    }
    d.push_str(" Z");
    writeln!(s, "  <path class=\"region\" d=\"{d}\" fill=\"{}\" stroke=\"none\"/>", style.region_fill).unwrap();

    for piece in &b.pieces {
        match piece {
            BoundaryPiece::Segment { from, to } => {
                let ((x1, y1), (x2, y2)) = (xy(from), xy(to));
                writeln!(
                    s,
                    "  <line class=\"segment\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{}\" stroke-width=\"{}\"/>",
                    style.segment_stroke,
                    num(style.segment_width, 6)
                )
                .unwrap();
            }
            BoundaryPiece::Arc { samples, .. } => {
                let points: Vec<String> = samples.iter().map(|p| {
                    let (x, y) = xy(p);
                    format!("{x},{y}")
                }).collect();
                writeln!(
                    s,
                    "  <polyline class=\"arc\" points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>",
                    points.join(" "),
                    style.arc_stroke,
                    num(style.arc_width, 6)
                )
                .unwrap();
            }
        }
    }
    for v in &b.vertices {
        let (x, y) = xy(v);
        writeln!(
            s,
            "  <circle class=\"vertex\" cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"{}\"/>",
            num(style.vertex_radius, 6),
            style.vertex_fill
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
