//! k-positivity of a few covariant maps, in float and exact mode.

use num_rational::BigRational;
use schmidt_cone::classifier::{k_positivity_max, BOUNDARY_TOL};
use schmidt_cone::scalar::parse_rational;

fn main() -> Result<(), schmidt_cone::error::Error> {
    let d = 4;
    for (name, p, q) in [("identity", 1.0, 0.0), ("transpose", 0.0, 1.0), ("depolarizing", 0.0, 0.0), ("reduction-like", -0.2, 0.0)] {
        let prof = k_positivity_max(d, &p, &q, BOUNDARY_TOL)?;
        println!("{name:>15}  (p, q) = ({p:5.2}, {q:5.2})  max k = {}", prof.max_k);
    }

    // the endpoint (-1/(kd-1), 0) of P_3 sits exactly on the boundary
    let p: BigRational = parse_rational("-1/11")?;
    let q: BigRational = parse_rational("0")?;
    let prof = k_positivity_max(d, &p, &q, 0.0)?;
    for (k, v) in prof.per_k.iter().enumerate() {
        println!("k = {}: {:?}", k + 1, v.status);
    }
    Ok(())
}
