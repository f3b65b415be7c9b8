//! Exact orthogonal twirl against a Monte-Carlo average over Haar orthogonal
//! matrices.

use schmidt_cone::rng::{random_hermitian, sample_rng};
use schmidt_cone::symmetry::{twirl_exact, twirl_monte_carlo};

fn main() -> Result<(), schmidt_cone::error::Error> {
    let d = 3;
    let x = random_hermitian(d * d, &mut sample_rng(11, 0));
    let exact = twirl_exact(&x)?;
    println!("coordinates in (I, dΩ, F): {:?}", exact.as_vector());
    let exact = exact.materialize()?;
    for n in [1_000, 10_000, 100_000] {
        let mc = twirl_monte_carlo(&x, n, 5)?;
        println!("N = {n:>6}  ‖MC − exact‖_F = {:.2e}", (mc.matrix() - exact.matrix()).norm());
    }
    Ok(())
}
