//! Schmidt numbers along the isotropic line and a few other invariant states.

use schmidt_cone::classifier::{schmidt_number, BOUNDARY_TOL};

fn main() -> Result<(), schmidt_cone::error::Error> {
    let d = 5;
    println!("isotropic states ρ_(a,0), d = {d}");
    for i in 0..=10 {
        let a = i as f64 / 10.0;
        let prof = schmidt_number(d, &a, &0.0, BOUNDARY_TOL)?;
        println!("  a = {a:.1}  SN = {:?}", prof.schmidt_number);
    }
    // threshold (kd-1)/(d²-1) between SN k and k+1
    for k in 1..d {
        println!("  SN ≤ {k} iff a ≤ {:.6}", (k * d - 1) as f64 / (d * d - 1) as f64);
    }
    let prof = schmidt_number(6, &0.4, &-0.12, BOUNDARY_TOL)?;
    println!("ρ_(0.4,-0.12), d = 6: SN = {:?}, boundary = {}", prof.schmidt_number, prof.boundary);
    Ok(())
}
