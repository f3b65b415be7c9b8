//! Dual cone pairings sampled at d = 3.

use schmidt_cone::oracle::duality_sanity;

fn main() -> Result<(), schmidt_cone::error::Error> {
    let r = duality_sanity(3, 500, 1)?;
    println!("{}", r.to_json());
    Ok(())
}
