//! Membership decisions for the regions `P_k` and `S_k`: the largest k for
//! which `L_{p,q}` is k-positive, the Schmidt number of `ρ_{a,b}`, and their
//! Choi-dual readings (k-block positivity of `ρ_{a,b}`, k-superpositivity
//! of `L_{p,q}`).
//!
//! Rational inputs are decided exactly. Float inputs are `boundary` when the
//! normalized margin is within the tolerance.

use serde::{Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::hermitian::{is_psd, DEFAULT_PSD_TOL};
use crate::region::{map_region, state_region, Point, Region};
use crate::scalar::Scalar;
use crate::symmetry::{materialize, InvariantStateParams};

pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Inside,
    Boundary,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MembershipVerdict {
    pub status: Status,
    /// Smallest normalized constraint slack; positive inside.
    pub margin: f64,
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        self.status != Status::Outside
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KPositivityProfile {
    pub d: usize,
    pub p: f64,
    pub q: f64,
    /// Largest k with membership; 0 when not even positive.
    pub max_k: usize,
    pub per_k: Vec<MembershipVerdict>,
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchmidtNumber {
    Value(usize),
    /// `ρ_{a,b}` is not positive semidefinite.
    NotAState,
}

impl Serialize for SchmidtNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SchmidtNumber::Value(k) => s.serialize_u64(*k as u64),
            SchmidtNumber::NotAState => s.serialize_str("not_a_state"),
        }
    }
}

impl SchmidtNumber {
    pub fn value(&self) -> Option<usize> {
        match self {
            SchmidtNumber::Value(k) => Some(*k),
            SchmidtNumber::NotAState => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtProfile {
    pub d: usize,
    pub a: f64,
    pub b: f64,
    pub schmidt_number: SchmidtNumber,
    /// True when the point lies on the boundary of `S_k` for `k` equal to the
    /// Schmidt number (or of `S_d` for non-states).
    pub boundary: bool,
    pub per_k: Vec<MembershipVerdict>,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuperpositivityProfile {
    pub d: usize,
    pub p: f64,
    pub q: f64,
    /// Largest k with `L_{p,q}` k-superpositive (`d` for every CP map in the
    /// family, 0 otherwise).
    pub max_k: usize,
    /// Smallest such k, i.e. the Schmidt number of the Choi matrix.
    pub min_k: Option<usize>,
    pub per_k: Vec<MembershipVerdict>,
    pub mode: Mode,
}

/// Region systems for one dimension, built once.
#[derive(Debug, Clone)]
pub struct Classifier<T = f64> {
    d: usize,
    tol: f64,
    map: Vec<Region<T>>,
    state: Vec<Region<T>>,
}

impl<T: Scalar> Classifier<T> {
    pub fn new(d: usize, tol: f64) -> Result<Self> {
        check_dim(d, 2)?;
        let map = (1..=d).map(|k| map_region::<T>(d, k)).collect::<Result<_>>()?;
        let state = (1..=d).map(|k| state_region::<T>(d, k)).collect::<Result<_>>()?;
        Ok(Self { d, tol, map, state })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn mode(&self) -> Mode {
        if T::EXACT {
            Mode::Exact
        } else {
            Mode::Float
        }
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.d {
            return Err(Error::KOutOfRange { d: self.d, k, range: "1 ≤ k ≤ d" });
        }
        Ok(())
    }

    fn check_finite(&self, x: &T, y: &T) -> Result<()> {
        for v in [x, y] {
            if !v.to_f64_lossy().is_finite() && !T::EXACT {
                return Err(Error::NonFinite(format!("{v:?}")));
            }
        }
        Ok(())
    }

    fn verdict(&self, region: &Region<T>, x: &T, y: &T) -> MembershipVerdict {
        let s = region.evaluate(&Point::new(x.clone(), y.clone()));
        let status = if T::EXACT {
            match s.sign {
                1 => Status::Inside,
                0 => Status::Boundary,
                _ => Status::Outside,
            }
        } else if s.margin.abs() <= self.tol {
            Status::Boundary
        } else if s.margin > 0.0 {
            Status::Inside
        } else {
            Status::Outside
        };
        MembershipVerdict { status, margin: s.margin }
    }

    /// Membership of `(p, q)` in `P_k`.
    pub fn map_verdict(&self, p: &T, q: &T, k: usize) -> Result<MembershipVerdict> {
        self.check_k(k)?;
        self.check_finite(p, q)?;
        Ok(self.verdict(&self.map[k - 1], p, q))
    }

    /// Membership of `(a, b)` in `S_k`.
    pub fn state_verdict(&self, a: &T, b: &T, k: usize) -> Result<MembershipVerdict> {
        self.check_k(k)?;
        self.check_finite(a, b)?;
        Ok(self.verdict(&self.state[k - 1], a, b))
    }

    pub fn k_positivity(&self, p: &T, q: &T) -> Result<KPositivityProfile> {
        let per_k = (1..=self.d).map(|k| self.map_verdict(p, q, k)).collect::<Result<Vec<_>>>()?;
        let max_k = per_k.iter().rposition(MembershipVerdict::is_member).map_or(0, |i| i + 1);
        Ok(KPositivityProfile { d: self.d, p: p.to_f64_lossy(), q: q.to_f64_lossy(), max_k, per_k, mode: self.mode() })
    }

    pub fn schmidt(&self, a: &T, b: &T) -> Result<SchmidtProfile> {
        let per_k = (1..=self.d).map(|k| self.state_verdict(a, b, k)).collect::<Result<Vec<_>>>()?;
        let (schmidt_number, boundary) = match per_k.iter().position(MembershipVerdict::is_member) {
            Some(i) => (SchmidtNumber::Value(i + 1), per_k[i].status == Status::Boundary),
            None => (SchmidtNumber::NotAState, false),
        };
        Ok(SchmidtProfile { d: self.d, a: a.to_f64_lossy(), b: b.to_f64_lossy(), schmidt_number, boundary, per_k, mode: self.mode() })
    }

    pub fn superpositivity(&self, p: &T, q: &T) -> Result<SuperpositivityProfile> {
        let s = self.schmidt(p, q)?;
        let min_k = s.schmidt_number.value();
        let max_k = if min_k.is_some() { self.d } else { 0 };
        Ok(SuperpositivityProfile { d: self.d, p: s.a, q: s.b, max_k, min_k, per_k: s.per_k, mode: self.mode() })
    }
}

pub fn is_k_positive<T: Scalar>(d: usize, p: &T, q: &T, k: usize, tol: f64) -> Result<MembershipVerdict> {
    check_dim(d, 2)?;
    if k == 0 || k > d {
        return Err(Error::KOutOfRange { d, k, range: "1 ≤ k ≤ d" });
    }
    let c = Classifier::<T> { d, tol, map: vec![map_region(d, k)?], state: Vec::new() };
    c.check_finite(p, q)?;
    Ok(c.verdict(&c.map[0], p, q))
}

pub fn k_positivity_max<T: Scalar>(d: usize, p: &T, q: &T, tol: f64) -> Result<KPositivityProfile> {
    Classifier::<T>::new(d, tol)?.k_positivity(p, q)
}

pub fn schmidt_number<T: Scalar>(d: usize, a: &T, b: &T, tol: f64) -> Result<SchmidtProfile> {
    Classifier::<T>::new(d, tol)?.schmidt(a, b)
}

/// `ρ_{a,b}` is k-block positive iff `(a, b) ∈ P_k`.
pub fn k_block_positivity_max<T: Scalar>(d: usize, a: &T, b: &T, tol: f64) -> Result<KPositivityProfile> {
    k_positivity_max(d, a, b, tol)
}

/// `L_{p,q}` is k-superpositive iff `(p, q) ∈ S_k`.
pub fn k_superpositivity_max<T: Scalar>(d: usize, p: &T, q: &T, tol: f64) -> Result<SuperpositivityProfile> {
    Classifier::<T>::new(d, tol)?.superpositivity(p, q)
}

/// Independent positivity test of `ρ_{a,b}` by eigenvalues.
pub fn state_psd_cross_check(d: usize, a: f64, b: f64) -> Result<bool> {
    Ok(is_psd(&materialize(&InvariantStateParams::new(d, a, b)?)?, DEFAULT_PSD_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational;
    use num_rational::BigRational;
    use proptest::{prop_assert, prop_assert_eq, proptest};

    type Q = BigRational;

    fn q(n: i64, m: i64) -> Q {
        Q::ratio(n, m)
    }

    #[test]
    fn map_examples() {
        for d in 2..=8 {
            assert_eq!(is_k_positive(d, &1.0, &0.0, d, BOUNDARY_TOL).unwrap().status, Status::Boundary);
            assert!(is_k_positive(d, &0.0, &1.0, 1, BOUNDARY_TOL).unwrap().is_member());
            assert_eq!(is_k_positive(d, &0.0, &1.0, 2, BOUNDARY_TOL).unwrap().status, Status::Outside);
        }
        let v = is_k_positive(4, &q(-1, 9), &q(2, 9), 3, 0.0).unwrap();
        assert_eq!(v.status, Status::Boundary);
        assert!(is_k_positive(4, &0.0, &0.0, 5, BOUNDARY_TOL).is_err());
        assert!(is_k_positive(4, &f64::NAN, &0.0, 2, BOUNDARY_TOL).is_err());
    }

    #[test]
    fn max_k_examples() {
        assert_eq!(k_positivity_max(4, &0.0, &0.0, BOUNDARY_TOL).unwrap().max_k, 4);
        assert_eq!(k_positivity_max(4, &1.0, &0.0, BOUNDARY_TOL).unwrap().max_k, 4);
        assert_eq!(k_positivity_max(4, &0.0, &1.0, BOUNDARY_TOL).unwrap().max_k, 1);
        let prof = k_positivity_max(4, &q(-1, 11), &q(0, 1), 0.0).unwrap();
        assert_eq!(prof.max_k, 3);
        assert_eq!(prof.per_k[2].status, Status::Boundary);
        assert_eq!(prof.mode, Mode::Exact);
        assert_eq!(k_positivity_max(4, &3.0, &3.0, BOUNDARY_TOL).unwrap().max_k, 0);
    }

    #[test]
    fn schmidt_examples() {
        for d in 2..=8 {
            assert_eq!(schmidt_number(d, &0.0, &0.0, BOUNDARY_TOL).unwrap().schmidt_number, SchmidtNumber::Value(1));
            assert_eq!(schmidt_number(d, &q(1, 1), &q(0, 1), 0.0).unwrap().schmidt_number, SchmidtNumber::Value(d));
        }
        let s = schmidt_number(4, &q(9, 18), &q(-3, 18), 0.0).unwrap();
        assert_eq!(s.schmidt_number, SchmidtNumber::Value(2));
        assert!(s.boundary);
        assert_eq!(schmidt_number(4, &2.0, &0.0, BOUNDARY_TOL).unwrap().schmidt_number, SchmidtNumber::NotAState);
        assert!(schmidt_number(4, &f64::INFINITY, &0.0, BOUNDARY_TOL).is_err());
        assert_eq!(serde_json::to_string(&SchmidtNumber::NotAState).unwrap(), "\"not_a_state\"");
        assert_eq!(serde_json::to_string(&SchmidtNumber::Value(3)).unwrap(), "3");
    }

    #[test]
    fn isotropic_threshold() {
        for d in 2..=8usize {
            let di = d as i64;
            for k in 1..=d {
                let t = q(k as i64 * di - 1, di * di - 1);
                let at = schmidt_number(d, &t, &q(0, 1), 0.0).unwrap();
                assert_eq!(at.schmidt_number, SchmidtNumber::Value(k));
                if k < d {
                    let above = t + q(1, 1_000_000);
                    assert_eq!(schmidt_number(d, &above, &q(0, 1), 0.0).unwrap().schmidt_number, SchmidtNumber::Value(k + 1));
                }
            }
        }
    }

    #[test]
    fn wrappers() {
        assert_eq!(k_block_positivity_max(5, &1.0, &0.0, BOUNDARY_TOL).unwrap().max_k, 5);
        assert_eq!(k_block_positivity_max(4, &0.0, &1.0, BOUNDARY_TOL).unwrap().max_k, 1);
        let sp = k_superpositivity_max(4, &0.0, &0.0, BOUNDARY_TOL).unwrap();
        assert_eq!((sp.max_k, sp.min_k), (4, Some(1)));
        let sp = k_superpositivity_max(4, &0.0, &1.0, BOUNDARY_TOL).unwrap();
        assert_eq!((sp.max_k, sp.min_k), (0, None));
    }

    #[test]
    fn exact_parse_round_trip() {
        let p = parse_rational("-1/11").unwrap();
        let z = parse_rational("0").unwrap();
        assert_eq!(is_k_positive(4, &p, &z, 3, 0.0).unwrap().status, Status::Boundary);
        assert_eq!(is_k_positive(4, &p, &z, 4, 0.0).unwrap().status, Status::Outside);
        assert_eq!(is_k_positive(4, &p, &z, 2, 0.0).unwrap().status, Status::Inside);
    }

    #[test]
    fn not_a_state_agrees_with_eigenvalues() {
        let c = Classifier::<f64>::new(4, BOUNDARY_TOL).unwrap();
        let n = 60;
        for i in 0..n {
            for j in 0..n {
                let a = -1.0 + 2.5 * i as f64 / n as f64;
                let b = -1.0 + 2.5 * j as f64 / n as f64;
                let s = c.state_verdict(&a, &b, 4).unwrap();
                if s.margin.abs() > 1e-6 {
                    assert_eq!(s.is_member(), state_psd_cross_check(4, a, b).unwrap(), "({a}, {b})");
                }
            }
        }
    }

    #[test]
    fn monotone_chains_on_grid() {
        for d in [3, 4, 5, 6] {
            let c = Classifier::<f64>::new(d, BOUNDARY_TOL).unwrap();
            for i in 0..20 {
                for j in 0..20 {
                    let (x, y) = (-1.0 + 2.0 * i as f64 / 19.0, -1.0 + 2.0 * j as f64 / 19.0);
                    let m = c.k_positivity(&x, &y).unwrap();
                    for k in 0..d {
                        assert_eq!(m.per_k[k].is_member(), k < m.max_k, "d={d} ({x},{y})");
                    }
                    let s = c.schmidt(&x, &y).unwrap();
                    if let Some(sn) = s.schmidt_number.value() {
                        for k in 0..d {
                            assert_eq!(s.per_k[k].is_member(), k + 1 >= sn);
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn exact_and_float_agree_off_boundary(d in 2usize..9, pn in -200i64..200, qn in -200i64..200) {
            let (pe, qe) = (q(pn, 150), q(qn, 150));
            let (pf, qf) = (pn as f64 / 150.0, qn as f64 / 150.0);
            let ce = Classifier::<Q>::new(d, 0.0).unwrap();
            let cf = Classifier::<f64>::new(d, BOUNDARY_TOL).unwrap();
            for k in 1..=d {
                for (e, f) in [
                    (ce.map_verdict(&pe, &qe, k).unwrap(), cf.map_verdict(&pf, &qf, k).unwrap()),
                    (ce.state_verdict(&pe, &qe, k).unwrap(), cf.state_verdict(&pf, &qf, k).unwrap()),
                ] {
                    prop_assert!((e.margin - f.margin).abs() <= 1e-12);
                    if f.status != Status::Boundary {
                        prop_assert_eq!(e.status, f.status);
                    }
                }
            }
        }

        #[test]
        fn transpose_symmetry_of_positive_maps(d in 2usize..9, p in -1.0f64..1.0, qv in -1.0f64..1.0) {
            // L_{p,q} is positive iff L_{q,p} = T∘L_{p,q} is
            let a = is_k_positive(d, &p, &qv, 1, BOUNDARY_TOL).unwrap();
            let b = is_k_positive(d, &qv, &p, 1, BOUNDARY_TOL).unwrap();
            prop_assert!((a.margin - b.margin).abs() <= 1e-12);
        }
    }
}
