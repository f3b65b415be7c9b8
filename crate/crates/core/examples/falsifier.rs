//! Searching for a Schmidt-rank-2 vector with negative expectation in an
//! invariant operator just outside P_2.

use schmidt_cone::hermitian::schmidt_spectrum;
use schmidt_cone::oracle::block_positivity_falsifier_run;
use schmidt_cone::symmetry::{materialize, InvariantStateParams};

fn main() -> Result<(), schmidt_cone::error::Error> {
    let d = 3;
    for (a, b) in [(0.1, 0.05), (-0.35, -0.05)] {
        let x = materialize(&InvariantStateParams::new(d, a, b)?)?;
        let (hit, stats) = block_positivity_falsifier_run(&x, 2, 200, 3)?;
        match hit {
            Some(h) => println!(
                "({a}, {b}): ⟨ξ|X|ξ⟩ = {:.4e} after {} iterations, Schmidt rank {}",
                h.value,
                stats.iterations,
                schmidt_spectrum(&h.vector, 1e-9).rank()
            ),
            None => println!("({a}, {b}): nothing found, best {:.4e}", stats.best_value),
        }
    }
    Ok(())
}
