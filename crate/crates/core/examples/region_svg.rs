//! Writes the boundaries of P_k and S_k for d = 4 as SVG files into the
//! directory given on the command line (default: the current directory).

use std::path::PathBuf;

use schmidt_cone::region::render::{to_svg, Style};
use schmidt_cone::region::{boundary_sk, extreme_points_pk};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let style = Style::default();
    let d = 4;
    for k in 1..=d {
        for (tag, b) in [("map", extreme_points_pk(d, k, 64)?), ("state", boundary_sk(d, k, 64)?)] {
            let path = dir.join(format!("{tag}_d{d}_k{k}.svg"));
            std::fs::write(&path, to_svg(&b, &style))?;
            println!("{}  {:?}: {} segments, {} arcs", path.display(), b.case, b.segment_count(), b.arc_count());
        }
    }
    Ok(())
}
