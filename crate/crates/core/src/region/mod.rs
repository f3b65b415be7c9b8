//! Plane geometry of the regions `P_k` (k-positive maps) and `S_k` (states of
//! Schmidt number at most k) in the `(p, q)` / `(a, b)` parameter plane.

mod boundary;
mod conic;
mod plane;
pub mod render;

pub use boundary::{
    boundary_sk, extreme_points_pk, map_extreme_points, sample_dual_arc, sample_primal_arc, BoundaryPiece,
    RegionBoundary, RegionKind,
};
pub use conic::{
    alpha, alpha_inv, classify_conic, conic_through_five_points, dual_conic, dual_tangent_lines, f_k,
    pole_of_tangent, primal_tangency_points, tangency_points, Conic, ConicClass,
};
pub use plane::{map_region, map_vertices, state_region, state_vertices, Constraint, KCase, Region, Slack, VertexCycle};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{rational_to_string, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Point<T = f64> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }
}

impl<T: Scalar> Point<T> {
    pub fn to_f64(&self) -> Point<f64> {
        Point::new(self.x.to_f64_lossy(), self.y.to_f64_lossy())
    }
}

impl Point<f64> {
    pub fn distance(&self, other: &Self) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl Point<num_rational::BigRational> {
    /// `["n/m", "n/m"]`, used for exact output.
    pub fn to_strings(&self) -> [String; 2] {
        [rational_to_string(&self.x), rational_to_string(&self.y)]
    }
}

/// The closed half-plane `nx·x + ny·y ≤ c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfPlane<T = f64> {
    pub nx: T,
    pub ny: T,
    pub c: T,
}

impl<T: Scalar> HalfPlane<T> {
    pub fn new(nx: T, ny: T, c: T) -> Result<Self> {
        if nx.is_zero() && ny.is_zero() {
            return Err(Error::Degenerate("half-plane normal is zero".into()));
        }
        Ok(Self { nx, ny, c })
    }

    /// `c − n·x`; non-negative inside.
    pub fn slack(&self, p: &Point<T>) -> T {
        self.c.clone() - self.nx.clone() * p.x.clone() - self.ny.clone() * p.y.clone()
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        !self.slack(p).is_negative()
    }

    pub fn to_f64(&self) -> HalfPlane<f64> {
        HalfPlane { nx: self.nx.to_f64_lossy(), ny: self.ny.to_f64_lossy(), c: self.c.to_f64_lossy() }
    }
}
