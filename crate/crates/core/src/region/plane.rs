//! Inequality systems and vertex lists of `P_k` and `S_k`.

use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::region::conic::{dual_conic, f_k, tangency_points, Conic};
use crate::region::{HalfPlane, Point};
use crate::scalar::Scalar;

/// Which of the four shapes a region takes for given `(d, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KCase {
    /// `k = 1`
    One,
    /// `1 < k ≤ d/2`: polygon
    Linear,
    /// `d/2 < k < d`: polygon plus a conic arc
    Conic,
    /// `k = d`
    Complete,
}

impl KCase {
    pub fn of(d: usize, k: usize) -> Result<Self> {
        check_dim(d, 2)?;
        if k == 0 || k > d {
            return Err(Error::KOutOfRange { d, k, range: "1 ≤ k ≤ d" });
        }
        Ok(if k == d {
            KCase::Complete
        } else if k == 1 {
            KCase::One
        } else if 2 * k <= d {
            KCase::Linear
        } else {
            KCase::Conic
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Constraint<T = f64> {
    Linear(HalfPlane<T>),
    /// `f ≤ 0`
    Conic(Conic<T>),
}

/// Sign of the exact slack and a normalized (distance-like) margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slack {
    pub sign: i8,
    pub margin: f64,
}

impl<T: Scalar> Constraint<T> {
    pub fn slack(&self, p: &Point<T>) -> Slack {
        let (raw, norm) = match self {
            Constraint::Linear(h) => (h.slack(p), h.nx.to_f64_lossy().hypot(h.ny.to_f64_lossy())),
            Constraint::Conic(c) => {
                let (gx, gy) = c.gradient(p);
                (-c.eval(p), gx.to_f64_lossy().hypot(gy.to_f64_lossy()).max(1e-12))
            }
        };
        let sign = if raw.is_zero() {
            0
        } else if raw.is_positive() {
            1
        } else {
            -1
        };
        Slack { sign, margin: raw.to_f64_lossy() / norm }
    }
}

/// A union of intersections of constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct Region<T = f64> {
    pub pieces: Vec<Vec<Constraint<T>>>,
}

impl<T: Scalar> Region<T> {
    /// Minimum over the constraints of a piece, maximum over pieces.
    pub fn evaluate(&self, p: &Point<T>) -> Slack {
        self.pieces
            .iter()
            .map(|piece| {
                piece.iter().map(|c| c.slack(p)).fold(Slack { sign: 1, margin: f64::INFINITY }, |a, b| Slack {
                    sign: a.sign.min(b.sign),
                    margin: a.margin.min(b.margin),
                })
            })
            .fold(Slack { sign: -1, margin: f64::NEG_INFINITY }, |a, b| Slack {
                sign: a.sign.max(b.sign),
                margin: a.margin.max(b.margin),
            })
    }
}

fn le<T: Scalar>(nx: T, ny: T, c: T) -> Constraint<T> {
    Constraint::Linear(HalfPlane { nx, ny, c })
}

fn ints(d: usize, k: usize) -> (i64, i64, i64) {
    let (d, k) = (d as i64, k as i64);
    (d, k, d * d + d - 2)
}

/// Inequality system of `P_k = {(p, q) : L_{p,q} is k-positive}`.
pub fn map_region<T: Scalar>(d: usize, k: usize) -> Result<Region<T>> {
    let case = KCase::of(d, k)?;
    let (di, ki, _) = ints(d, k);
    let n = T::int;
    let r = T::ratio;
    let base = || vec![le(n(1), n(-(di - 1)), n(1)), le(n(1), n(di + 1), n(1))];
    let piece = match case {
        KCase::One => vec![
            le(n(1), n(-(di - 1)), n(1)),
            le(n(-(di - 1)), n(1), n(1)),
            le(n(1), n(1), n(1)),
            le(n(-1), n(-1), r(1, di - 1)),
        ],
        KCase::Linear => {
            let mut v = base();
            v.push(le(n(-(ki * di - 1)), n(-(di - 1)), n(1)));
            v.push(le(n(-(ki * di - 1)), n(1), n(1)));
            v
        }
        KCase::Conic => {
            let mut v = base();
            v.push(le(n(-(ki * di - 1)), n(-(di - 1)), n(1)));
            v.push(Constraint::Conic(f_k(d, k)));
            v
        }
        KCase::Complete => {
            let mut v = base();
            v.push(le(n(-(di + 1)), n(-1), r(1, di - 1)));
            v
        }
    };
    Ok(Region { pieces: vec![piece] })
}

/// Inequality system of `S_k = {(a, b) : SN(ρ_{a,b}) ≤ k}`. For
/// `d/2 < k < d` this is the union of the filled ellipse `f̃_k ≤ 0` and a
/// pentagon.
pub fn state_region<T: Scalar>(d: usize, k: usize) -> Result<Region<T>> {
    let case = KCase::of(d, k)?;
    let (di, ki, _) = ints(d, k);
    let n = T::int;
    let r = T::ratio;
    let lower = || le(n(-(di + 1)), n(-1), r(1, di - 1));
    let pieces = match case {
        KCase::One => vec![vec![
            le(n(di + 1), n(1), n(1)),
            lower(),
            le(n(1), n(di + 1), n(1)),
            le(n(-1), n(-(di + 1)), r(1, di - 1)),
        ]],
        KCase::Linear => vec![vec![
            lower(),
            le(n(di + 1), n(1), r(ki * di - 1, di - 1)),
            le(n(1), n(di + 1), n(1)),
            le(r(di - ki + 1, ki * di + ki - 1), n(-1), r(1, di - 1)),
        ]],
        KCase::Conic => vec![
            vec![Constraint::Conic(dual_conic(d, k)?)],
            vec![
                lower(),
                le(n(di + 1), n(1), r(ki * di - 1, di - 1)),
                le(n(1), n(di + 1), n(1)),
                le(n(1), n(-(di - 1)), n(1)),
                // chord through the two ends of the elliptic arc
                le(n(3 * di - ki + 3), n(-(ki * di + ki - 3)), r(di * di + ki * di + ki - 3, di - 1)),
            ],
        ],
        KCase::Complete => return map_region(d, k),
    };
    Ok(Region { pieces })
}

/// Boundary vertices in counter-clockwise order. When `arc_after` is
/// `Some(i)`, the boundary runs along a conic arc from `vertices[i]` to
/// `vertices[i + 1]`; every other consecutive pair is joined by a segment.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexCycle<T = f64> {
    pub vertices: Vec<Point<T>>,
    pub arc_after: Option<usize>,
}

pub fn map_vertices<T: Scalar>(d: usize, k: usize) -> Result<VertexCycle<T>> {
    let case = KCase::of(d, k)?;
    let (di, ki, den) = ints(d, k);
    let p = |x: T, y: T| Point::new(x, y);
    let r = T::ratio;
    let z = T::zero;
    let cycle = match case {
        KCase::One => VertexCycle {
            vertices: vec![p(T::one(), z()), p(z(), T::one()), p(r(-1, di - 1), z()), p(z(), r(-1, di - 1))],
            arc_after: None,
        },
        KCase::Linear => VertexCycle {
            vertices: vec![
                p(T::one(), z()),
                p(r(-1, ki * di + ki - 1), r(ki, ki * di + ki - 1)),
                p(r(-1, ki * di - 1), z()),
                p(z(), r(-1, di - 1)),
            ],
            arc_after: None,
        },
        KCase::Conic => VertexCycle {
            vertices: vec![p(T::one(), z()), p(r(-2, den), r(di, den)), p(r(-1, ki * di - 1), z()), p(z(), r(-1, di - 1))],
            arc_after: Some(1),
        },
        KCase::Complete => VertexCycle {
            vertices: vec![p(T::one(), z()), p(r(-2, den), r(di, den)), p(z(), r(-1, di - 1))],
            arc_after: None,
        },
    };
    Ok(cycle)
}

pub fn state_vertices<T: Scalar>(d: usize, k: usize) -> Result<VertexCycle<T>> {
    let case = KCase::of(d, k)?;
    let (di, ki, den) = ints(d, k);
    let p = |x: T, y: T| Point::new(x, y);
    let r = T::ratio;
    let cycle = match case {
        KCase::One => VertexCycle {
            vertices: vec![
                p(r(di, den), r(-2, den)),
                p(r(1, di + 2), r(1, di + 2)),
                p(r(-2, den), r(di, den)),
                p(r(-1, den), r(-1, den)),
            ],
            arc_after: None,
        },
        KCase::Linear => VertexCycle {
            vertices: vec![
                p(T::zero(), r(-1, di - 1)),
                p(r(ki * di + ki - 1, den), r(-(ki + 1), den)),
                p(r(ki * di + ki - 2, den), r(di - ki, den)),
                p(r(-2, den), r(di, den)),
            ],
            arc_after: None,
        },
        KCase::Conic => {
            let [_, _, _, v4, v5] = tangency_points::<T>(d, k)?;
            VertexCycle {
                vertices: vec![
                    v5,
                    v4,
                    p(r(ki * di + ki - 2, den), r(di - ki, den)),
                    p(r(-2, den), r(di, den)),
                    p(T::zero(), r(-1, di - 1)),
                ],
                arc_after: Some(0),
            }
        }
        KCase::Complete => return map_vertices(d, k),
    };
    Ok(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, m: i64) -> Q {
        Q::ratio(n, m)
    }

    fn same_set(got: &[Point<Q>], want: &[(Q, Q)]) -> bool {
        got.len() == want.len() && want.iter().all(|(x, y)| got.contains(&Point::new(x.clone(), y.clone())))
    }

    #[test]
    fn cases() {
        assert_eq!(KCase::of(4, 1).unwrap(), KCase::One);
        assert_eq!(KCase::of(4, 2).unwrap(), KCase::Linear);
        assert_eq!(KCase::of(4, 3).unwrap(), KCase::Conic);
        assert_eq!(KCase::of(4, 4).unwrap(), KCase::Complete);
        assert_eq!(KCase::of(2, 1).unwrap(), KCase::One);
        assert_eq!(KCase::of(5, 2).unwrap(), KCase::Linear);
        assert_eq!(KCase::of(5, 3).unwrap(), KCase::Conic);
        assert!(KCase::of(4, 0).is_err());
        assert!(KCase::of(4, 5).is_err());
        assert!(KCase::of(1, 1).is_err());
    }

    #[test]
    fn listed_vertices() {
        let v = map_vertices::<Q>(4, 2).unwrap().vertices;
        assert!(same_set(&v, &[(q(1, 1), q(0, 1)), (q(0, 1), q(-1, 3)), (q(-1, 7), q(0, 1)), (q(-1, 9), q(2, 9))]));
        let v = map_vertices::<Q>(4, 4).unwrap().vertices;
        assert!(same_set(&v, &[(q(1, 1), q(0, 1)), (q(0, 1), q(-1, 3)), (q(-1, 9), q(2, 9))]));
        let v = state_vertices::<Q>(4, 1).unwrap().vertices;
        assert!(same_set(&v, &[(q(-1, 9), q(2, 9)), (q(1, 6), q(1, 6)), (q(2, 9), q(-1, 9)), (q(-1, 18), q(-1, 18))]));
        assert_eq!(state_vertices::<Q>(4, 4).unwrap(), map_vertices::<Q>(4, 4).unwrap());
    }

    fn signed_area(v: &[Point<Q>]) -> Q {
        let n = v.len();
        (0..n).fold(q(0, 1), |s, i| {
            let (a, b) = (&v[i], &v[(i + 1) % n]);
            s + a.x.clone() * b.y.clone() - b.x.clone() * a.y.clone()
        })
    }

    #[test]
    fn vertices_are_boundary_points_of_their_region() {
        for d in 2..=9 {
            for k in 1..=d {
                let mv = map_vertices::<Q>(d, k).unwrap();
                let mr = map_region::<Q>(d, k).unwrap();
                for v in &mv.vertices {
                    assert_eq!(mr.evaluate(v).sign, 0, "P d={d} k={k} {v:?}");
                }
                assert!(signed_area(&mv.vertices) > q(0, 1));
                let sv = state_vertices::<Q>(d, k).unwrap();
                let sr = state_region::<Q>(d, k).unwrap();
                for v in &sv.vertices {
                    assert_eq!(sr.evaluate(v).sign, 0, "S d={d} k={k} {v:?}");
                }
                assert!(signed_area(&sv.vertices) > q(0, 1));
            }
        }
    }

    #[test]
    fn origin_is_inside_every_region() {
        for d in 2..=9 {
            for k in 1..=d {
                let o = Point::new(q(0, 1), q(0, 1));
                assert_eq!(map_region::<Q>(d, k).unwrap().evaluate(&o).sign, 1);
                assert_eq!(state_region::<Q>(d, k).unwrap().evaluate(&o).sign, 1);
            }
        }
    }

    #[test]
    fn margin_is_distance_for_linear_constraints() {
        let r = map_region::<f64>(4, 4).unwrap();
        // nearest edge to (0.5, 0) is p + 5q ≤ 1 at distance 0.5/√26
        let s = r.evaluate(&Point::new(0.5, 0.0));
        assert!((s.margin - 0.5 / 26f64.sqrt()).abs() < 1e-15);
        let s = r.evaluate(&Point::new(2.0, 0.0));
        assert!(s.margin < 0.0 && s.sign == -1);
    }
}
