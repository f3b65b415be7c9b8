//! Minimum of Σ |⟨v_j|conj(v_j')⟩|² over orthonormal k-frames in C^d.

use schmidt_cone::oracle::{frame_overlap_minimize, overlap_lower_bound};

fn main() -> Result<(), schmidt_cone::error::Error> {
    let d = 7;
    for k in 1..=d {
        let m = frame_overlap_minimize(d, k, 20, 300, 1)?;
        println!(
            "k = {k}: min {:.9} ({:?}), descent {:.9}, bound {}",
            m.value,
            m.source,
            m.descent_value,
            overlap_lower_bound(d, k)
        );
    }
    Ok(())
}
