//! Runs every oracle suite at a reduced size for one dimension.

use schmidt_cone::oracle::{block_suite, duality_suite, frames_suite, tomiyama_suite, twirl_suite, witness_suite};

fn main() -> Result<(), schmidt_cone::error::Error> {
    let d = 4;
    let reports = [
        tomiyama_suite(d, 40, 50, 1)?,
        block_suite(d, 100)?,
        frames_suite(d, 10, 200, 1)?,
        twirl_suite(d, 3, 20_000, 1)?,
        witness_suite(d, 50, 256)?,
        duality_suite(d, 200, 1)?,
    ];
    for r in &reports {
        println!("{:>9}: {:?} over {} samples", r.oracle, r.verdict, r.statistics.samples);
    }
    Ok(())
}
