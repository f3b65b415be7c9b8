//! Witness pairing between invariant states and covariant maps, and the
//! scan of `Ext(P_k)` for a map that certifies `SN(ρ_{a,b}) > k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermitian::max_entangled;
use crate::region::{map_extreme_points, Point};
use crate::scalar::Scalar;
use crate::symmetry::{apply_id_tensor_map, materialize, CovariantMapParams, InvariantStateParams};

pub const DEFAULT_ARC_SAMPLES: usize = 256;
pub const VIOLATION_TOL: f64 = 1e-12;

/// `(p q)·M·(a b)ᵀ + 1/(d−1)` with `M = [[d+1, 1], [1, d+1]]`.
pub fn witness_pairing<T: Scalar>(s: &InvariantStateParams<T>, m: &CovariantMapParams<T>) -> Result<T> {
    if s.d != m.d {
        return Err(Error::DimensionMismatch { expected: s.d, got: m.d });
    }
    Ok(pairing_value(s.d, &m.p, &m.q, &s.a, &s.b))
}

fn pairing_value<T: Scalar>(d: usize, p: &T, q: &T, a: &T, b: &T) -> T {
    let m = T::int(d as i64 + 1);
    p.clone() * (m.clone() * a.clone() + b.clone()) + q.clone() * (a.clone() + m * b.clone()) + T::ratio(1, d as i64 - 1)
}

/// `⟨Ω|(id⊗L_{p,q})(ρ_{a,b})|Ω⟩`, assembled from matrices.
pub fn trace_witness(s: &InvariantStateParams, m: &CovariantMapParams) -> Result<f64> {
    if s.d != m.d {
        return Err(Error::DimensionMismatch { expected: s.d, got: m.d });
    }
    let rho = materialize(s)?;
    let image = apply_id_tensor_map(m, rho.matrix())?;
    let omega = max_entangled(s.d)?;
    let v = omega.entries();
    Ok((v.adjoint() * image * v)[(0, 0)].re)
}

/// The positive ratio `trace_witness / witness_pairing`, `(d−1)/d²`.
pub fn kappa(d: usize) -> f64 {
    (d as f64 - 1.0) / (d * d) as f64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessHit {
    pub p: f64,
    pub q: f64,
    pub pairing: f64,
}

/// `Ext(P_k)` sampled once, reused across many states.
#[derive(Debug, Clone)]
pub struct WitnessScanner {
    d: usize,
    k: usize,
    extreme: Vec<Point>,
}

impl WitnessScanner {
    pub fn new(d: usize, k: usize, arc_samples: usize) -> Result<Self> {
        Ok(Self { d, k, extreme: map_extreme_points(d, k, arc_samples)? })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn extreme_points(&self) -> &[Point] {
        &self.extreme
    }

    /// The extreme map with the smallest pairing.
    pub fn most_negative(&self, a: f64, b: f64) -> WitnessHit {
        self.extreme
            .iter()
            .map(|e| WitnessHit { p: e.x, q: e.y, pairing: pairing_value(self.d, &e.x, &e.y, &a, &b) })
            .fold(WitnessHit { p: f64::NAN, q: f64::NAN, pairing: f64::INFINITY }, |best, h| {
                if h.pairing < best.pairing {
                    h
                } else {
                    best
                }
            })
    }

    pub fn scan(&self, a: f64, b: f64) -> Option<WitnessHit> {
        let hit = self.most_negative(a, b);
        (hit.pairing < -VIOLATION_TOL).then_some(hit)
    }
}

/// Scans the vertices and `arc_samples` arc points of `P_k` for a map whose
/// pairing with `ρ_{a,b}` is negative; returns the most negative one.
pub fn witness_violation_search(s: &InvariantStateParams, k: usize, arc_samples: usize) -> Result<Option<WitnessHit>> {
    Ok(WitnessScanner::new(s.d, k, arc_samples)?.scan(s.a, s.b))
}
