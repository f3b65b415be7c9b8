//! Ordered boundaries of `P_k` and `S_k`: line segments between listed
//! vertices plus, for `d/2 < k < d`, a sampled conic arc.

use std::f64::consts::PI;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::region::conic::{alpha_inv, check_conic_range, dual_conic, f_k, pole_of_tangent, tangency_points, Conic};
use crate::region::plane::{map_vertices, state_vertices, KCase, VertexCycle};
use crate::region::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionKind {
    /// `P_k` in the `(p, q)` plane
    Map,
    /// `S_k` in the `(a, b)` plane
    State,
}

impl std::fmt::Display for RegionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RegionKind::Map => "map",
            RegionKind::State => "state",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BoundaryPiece {
    Segment { from: Point, to: Point },
    Arc { conic: Conic, from: Point, to: Point, samples: Vec<Point> },
}

impl BoundaryPiece {
    pub fn start(&self) -> &Point {
        match self {
            BoundaryPiece::Segment { from, .. } | BoundaryPiece::Arc { from, .. } => from,
        }
    }

    pub fn end(&self) -> &Point {
        match self {
            BoundaryPiece::Segment { to, .. } | BoundaryPiece::Arc { to, .. } => to,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionBoundary {
    pub kind: RegionKind,
    pub d: usize,
    pub k: usize,
    pub case: KCase,
    pub vertices: Vec<Point>,
    /// The same vertices as exact rationals `"n/m"`.
    pub exact_vertices: Vec<[String; 2]>,
    pub pieces: Vec<BoundaryPiece>,
    pub closed: bool,
}

impl RegionBoundary {
    pub fn segment_count(&self) -> usize {
        self.pieces.iter().filter(|p| matches!(p, BoundaryPiece::Segment { .. })).count()
    }

    pub fn arc_count(&self) -> usize {
        self.pieces.iter().filter(|p| matches!(p, BoundaryPiece::Arc { .. })).count()
    }

    /// Every boundary point in order: vertices and interior arc samples.
    pub fn boundary_points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for piece in &self.pieces {
            out.push(piece.start().clone());
            if let BoundaryPiece::Arc { samples, .. } = piece {
                out.extend(samples[1..samples.len() - 1].iter().cloned());
            }
        }
        out
    }

    /// Largest gap between the end of a piece and the start of the next.
    pub fn max_junction_gap(&self) -> f64 {
        let n = self.pieces.len();
        (0..n).map(|i| self.pieces[i].end().distance(self.pieces[(i + 1) % n].start())).fold(0.0, f64::max)
    }
}

fn assemble(
    kind: RegionKind,
    d: usize,
    k: usize,
    cycle: VertexCycle<BigRational>,
    arc: Option<(Conic, Vec<Point>)>,
) -> RegionBoundary {
    let vertices: Vec<Point> = cycle.vertices.iter().map(Point::to_f64).collect();
    let exact_vertices = cycle.vertices.iter().map(Point::to_strings).collect();
    let n = vertices.len();
    let mut arc = arc;
    let pieces = (0..n)
        .map(|i| {
            let (from, to) = (vertices[i].clone(), vertices[(i + 1) % n].clone());
            if cycle.arc_after == Some(i) {
                let (conic, samples) = arc.take().expect("arc supplied for conic case");
                BoundaryPiece::Arc { conic, from, to, samples }
            } else {
                BoundaryPiece::Segment { from, to }
            }
        })
        .collect();
    RegionBoundary { kind, d, k, case: KCase::of(d, k).expect("validated"), vertices, exact_vertices, pieces, closed: true }
}

fn check_samples(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Degenerate(format!("an arc needs at least 2 samples, got {n}")));
    }
    Ok(())
}

/// `n` points on `f_k = 0` from `(−2/(d²+d−2), d/(d²+d−2))` to
/// `(−1/(kd−1), 0)`, equally spaced in angle as seen from the origin. Each
/// ray meets the arc at the smallest positive root of `f_k(r·u) = 0`.
pub fn sample_primal_arc(d: usize, k: usize, n: usize) -> Result<Vec<Point>> {
    check_conic_range(d, k)?;
    check_samples(n)?;
    let cycle = map_vertices::<f64>(d, k)?;
    let (start, end) = (cycle.vertices[1].clone(), cycle.vertices[2].clone());
    let c = f_k::<f64>(d, k);
    let t0 = start.y.atan2(start.x);
    let mut out = Vec::with_capacity(n);
    out.push(start);
    for i in 1..n - 1 {
        let t = t0 + (PI - t0) * i as f64 / (n - 1) as f64;
        let (s, co) = t.sin_cos();
        let quad = c.a * co * co + c.b * co * s + c.c * s * s;
        let lin = c.d * co + c.e * s;
        // quad·r² + lin·r + F with F = −1
        let disc = lin * lin - 4.0 * quad * c.f;
        let r = -2.0 * c.f / (lin + disc.max(0.0).sqrt());
        out.push(Point::new(r * co, r * s));
    }
    out.push(end);
    Ok(out)
}

/// The dual arc of `f̃_k`, traced as `α⁻¹` of the poles of the tangents
/// along [`sample_primal_arc`]. Runs from the fifth tangency point to the
/// fourth.
pub fn sample_dual_arc(d: usize, k: usize, n: usize) -> Result<Vec<Point>> {
    let primal = sample_primal_arc(d, k, n)?;
    let c = f_k::<f64>(d, k);
    let mut out = primal
        .iter()
        .map(|p| Ok(alpha_inv(d, &pole_of_tangent(&c, p)?)))
        .collect::<Result<Vec<_>>>()?;
    let [_, _, _, v4, v5] = tangency_points::<BigRational>(d, k)?;
    out[0] = v5.to_f64();
    out[n - 1] = v4.to_f64();
    Ok(out)
}

/// Boundary of `P_k` with `arc_samples` points on the conic arc when
/// `d/2 < k < d`.
pub fn extreme_points_pk(d: usize, k: usize, arc_samples: usize) -> Result<RegionBoundary> {
    let cycle = map_vertices::<BigRational>(d, k)?;
    let arc = match cycle.arc_after {
        Some(_) => Some((f_k::<f64>(d, k), sample_primal_arc(d, k, arc_samples)?)),
        None => None,
    };
    Ok(assemble(RegionKind::Map, d, k, cycle, arc))
}

/// Boundary of `S_k`; for `d/2 < k < d` it includes the elliptic arc of
/// `f̃_k`.
pub fn boundary_sk(d: usize, k: usize, arc_samples: usize) -> Result<RegionBoundary> {
    let cycle = state_vertices::<BigRational>(d, k)?;
    let arc = match cycle.arc_after {
        Some(_) => Some((dual_conic::<BigRational>(d, k)?.to_f64(), sample_dual_arc(d, k, arc_samples)?)),
        None => None,
    };
    Ok(assemble(RegionKind::State, d, k, cycle, arc))
}

/// `Ext(P_k)`: the vertices together with the sampled arc.
pub fn map_extreme_points(d: usize, k: usize, arc_samples: usize) -> Result<Vec<Point>> {
    let samples = if KCase::of(d, k)? == KCase::Conic { arc_samples } else { 2 };
    Ok(extreme_points_pk(d, k, samples)?.boundary_points())
}
