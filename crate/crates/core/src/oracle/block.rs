//! The reduced block conditions for k-positivity of `L_{p,q}`, written in
//! terms of `A = (1−p−q)/d` and the squared weight `ξ = ‖ξ₁‖²` of the
//! conjugate-symmetric component. They are extremal at
//! `ξ ∈ {1, max(2k−d, 0)/k}`.

use crate::error::{check_dim, Error, Result};
use crate::scalar::Scalar;

/// The six inequalities at a single `ξ`:
/// `A−q ≥ 0`, `A+q ≥ 0`, `A ≥ 0`, `A+q+pkξ ≥ 0`, `A+pk−pkξ ≥ 0`,
/// `(A+q)(A+pk) − pkqξ ≥ 0`.
pub fn block_conditions<T: Scalar>(d: usize, p: &T, q: &T, k: usize, xi1sq: &T) -> Result<bool> {
    check_dim(d, 3)?;
    if k <= 1 || k >= d {
        return Err(Error::KOutOfRange { d, k, range: "1 < k < d" });
    }
    if xi1sq.is_negative() || *xi1sq > T::one() {
        return Err(Error::Degenerate(format!("squared weight {xi1sq:?} outside [0, 1]")));
    }
    let a = (T::one() - p.clone() - q.clone()) / T::int(d as i64);
    let pk = p.clone() * T::int(k as i64);
    let xi = xi1sq.clone();
    let zero = T::zero();
    let conds = [
        a.clone() - q.clone(),
        a.clone() + q.clone(),
        a.clone(),
        a.clone() + q.clone() + pk.clone() * xi.clone(),
        a.clone() + pk.clone() - pk.clone() * xi.clone(),
        (a.clone() + q.clone()) * (a + pk.clone()) - pk * q.clone() * xi,
    ];
    Ok(conds.iter().all(|c| *c >= zero))
}

/// The two extremal weights `1` and `max(2k−d, 0)/k`.
pub fn extremal_weights<T: Scalar>(d: usize, k: usize) -> [T; 2] {
    let low = (2 * k).saturating_sub(d) as i64;
    [T::one(), T::ratio(low, k as i64)]
}

/// Block conditions at both extremal weights.
pub fn block_positive<T: Scalar>(d: usize, p: &T, q: &T, k: usize) -> Result<bool> {
    for xi in extremal_weights::<T>(d, k) {
        if !block_conditions(d, p, q, k, &xi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{Classifier, Status, BOUNDARY_TOL};
    use num_rational::BigRational;

    #[test]
    fn examples() {
        for d in 3..=8 {
            for k in 2..d {
                for xi in [0.0, 0.3, 1.0] {
                    assert!(block_conditions(d, &0.0, &0.0, k, &xi).unwrap());
                }
            }
        }
        assert!(!block_conditions(4, &0.0, &1.0, 3, &(2.0 / 3.0)).unwrap());
        assert!(block_conditions(4, &0.0, &0.0, 1, &1.0).is_err());
        assert!(block_conditions(4, &0.0, &0.0, 2, &1.5).is_err());
    }

    #[test]
    fn grid_equivalence_d5_k3() {
        let (d, k, n) = (5, 3, 300);
        let cl = Classifier::<f64>::new(d, BOUNDARY_TOL).unwrap();
        let mut checked = 0;
        for i in 0..n {
            for j in 0..n {
                let p = -0.5 + 1.5 * i as f64 / (n - 1) as f64;
                let q = -0.5 + 1.5 * j as f64 / (n - 1) as f64;
                let v = cl.map_verdict(&p, &q, k).unwrap();
                if v.status == Status::Boundary {
                    continue;
                }
                assert_eq!(block_positive(d, &p, &q, k).unwrap(), v.is_member(), "({p}, {q})");
                checked += 1;
            }
        }
        assert!(checked > n * n - 100);
    }

    #[test]
    fn exact_vertices_satisfy_block_conditions() {
        type Q = BigRational;
        for d in 3..=8 {
            for k in 2..d {
                for v in crate::region::map_vertices::<Q>(d, k).unwrap().vertices {
                    assert!(block_positive(d, &v.x, &v.y, k).unwrap(), "d={d} k={k}");
                }
            }
        }
    }
}
