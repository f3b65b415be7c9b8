//! The six block inequalities against the classifier along a line.

use schmidt_cone::classifier::{is_k_positive, BOUNDARY_TOL};
use schmidt_cone::oracle::{block_conditions, block_positive, extremal_weights};

fn main() -> Result<(), schmidt_cone::error::Error> {
    let (d, k) = (5, 3);
    let [hi, lo] = extremal_weights::<f64>(d, k);
    println!("extremal weights: {hi}, {lo}");
    for i in 0..=12 {
        let p = -0.3 + 0.1 * i as f64;
        let q = 0.07;
        println!(
            "p = {p:5.2}: ξ=1 {}, ξ=lo {}, both {}, classifier {}",
            block_conditions(d, &p, &q, k, &hi)?,
            block_conditions(d, &p, &q, k, &lo)?,
            block_positive(d, &p, &q, k)?,
            is_k_positive(d, &p, &q, k, BOUNDARY_TOL)?.is_member()
        );
    }
    Ok(())
}
