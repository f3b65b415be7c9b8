//! Extreme k-positive maps that witness a Schmidt number above k.

use schmidt_cone::classifier::{schmidt_number, BOUNDARY_TOL};
use schmidt_cone::oracle::{witness_violation_search, DEFAULT_ARC_SAMPLES};
use schmidt_cone::symmetry::InvariantStateParams;

fn main() -> Result<(), schmidt_cone::error::Error> {
    let d = 6;
    let s = InvariantStateParams::new(d, 0.4, -0.12)?;
    let sn = schmidt_number(d, &s.a, &s.b, BOUNDARY_TOL)?.schmidt_number;
    println!("ρ_(0.4,-0.12), d = {d}: SN = {sn:?}");
    for k in 1..=d {
        match witness_violation_search(&s, k, DEFAULT_ARC_SAMPLES)? {
            Some(h) => println!("  k = {k}: witness L_(p,q) at ({:.5}, {:.5}), pairing {:.3e}", h.p, h.q, h.pairing),
            None => println!("  k = {k}: no witness"),
        }
    }
    Ok(())
}
