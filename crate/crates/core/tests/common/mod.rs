#![allow(dead_code)]

use std::path::PathBuf;

use schmidt_cone::region::render::{to_csv, to_json, to_svg, Style, DEFAULT_STYLE_TOML};
use schmidt_cone::region::{boundary_sk, extreme_points_pk, RegionBoundary};

pub const GOLDEN_ARC_SAMPLES: usize = 64;

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn boundary(kind: &str, d: usize, k: usize) -> RegionBoundary {
    match kind {
        "map" => extreme_points_pk(d, k, GOLDEN_ARC_SAMPLES).unwrap(),
        "state" => boundary_sk(d, k, GOLDEN_ARC_SAMPLES).unwrap(),
        _ => panic!("unknown region kind {kind}"),
    }
}

pub fn render(kind: &str, d: usize, k: usize, format: &str) -> String {
    let b = boundary(kind, d, k);
    match format {
        "svg" => to_svg(&b, &Style::from_toml(DEFAULT_STYLE_TOML).unwrap()),
        "csv" => to_csv(&b),
        "json" => to_json(&b),
        _ => panic!("unknown format {format}"),
    }
}

pub fn golden_name(kind: &str, d: usize, k: usize, format: &str) -> String {
    format!("{kind}_d{d}_k{k}.{format}")
}

/// Compares `actual` against the stored file, or rewrites the file when
/// `UPDATE_GOLDEN` is set.
pub fn check_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected.trim_end() == actual.trim_end() {
        Ok(())
    } else {
        Err(format!("{name} differs from golden file"))
    }
}

/// Every SVG golden: d = 3, 4, every k, both regions.
pub fn svg_goldens() -> Vec<(String, usize, usize)> {
    let mut out = Vec::new();
    for d in [3, 4] {
        for k in 1..=d {
            for kind in ["map", "state"] {
                out.push((kind.to_string(), d, k));
            }
        }
    }
    out
}
