//! The conic f_k bounding P_k and its dual through five tangency points.

use num_rational::BigRational;
use schmidt_cone::region::{dual_conic, dual_tangent_lines, f_k, tangency_points};
use schmidt_cone::scalar::rational_to_string;

fn show(c: &[BigRational; 6]) -> String {
    c.iter().map(rational_to_string).collect::<Vec<_>>().join(", ")
}

fn main() -> Result<(), schmidt_cone::error::Error> {
    for k in 3..5 {
        let c = f_k::<BigRational>(5, k);
        println!("f_{k} (d = 5): [{}]  {}", show(&c.coefficients()), c.classify());
    }
    let (d, k) = (4, 3);
    let dual = dual_conic::<BigRational>(d, k)?;
    println!("dual (d = {d}, k = {k}): [{}]  {}", show(&dual.coefficients()), dual.classify());
    let lines = dual_tangent_lines::<f64>(d, k)?;
    for (p, l) in tangency_points::<BigRational>(d, k)?.iter().zip(&lines) {
        println!(
            "  ({}, {})  value {}  tangent discriminant {:.1e}",
            rational_to_string(&p.x),
            rational_to_string(&p.y),
            rational_to_string(&dual.eval(p)),
            dual.to_f64().relative_line_discriminant(l)
        );
    }
    Ok(())
}
