//! The Tomiyama frame criterion inside and outside P_k.

use schmidt_cone::oracle::tomiyama_check;

fn main() -> Result<(), schmidt_cone::error::Error> {
    let (d, k) = (4, 3);
    for (p, q) in [(0.1, 0.1), (-0.1, 0.0), (0.0, 1.0)] {
        let r = tomiyama_check(d, p, q, k, 200, 1)?;
        println!("({p}, {q}) k = {k}: {:?}, worst relative eigenvalue {:.3e}", r.verdict, r.statistics.worst_margin);
        if let Some(w) = r.witness {
            println!("  {}", serde_json::to_string(&w).unwrap_or_default().chars().take(100).collect::<String>());
        }
    }
    Ok(())
}
