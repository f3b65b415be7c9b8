//! Plane conics `Ax² + Bxy + Cy² + Dx + Ey + F`, the boundary conic `f_k`
//! of the k-positive region, its dual `f̃_k`, and pole-polar duality with
//! respect to the unit circle.

use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::region::{HalfPlane, Point};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Conic<T = f64> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
    pub f: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConicClass {
    Ellipse,
    Parabola,
    Hyperbola,
    /// Line pairs, repeated lines, single points and conics without real
    /// points.
    Degenerate,
}

impl std::fmt::Display for ConicClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConicClass::Ellipse => "ellipse",
            ConicClass::Parabola => "parabola",
            ConicClass::Hyperbola => "hyperbola",
            ConicClass::Degenerate => "degenerate",
        })
    }
}

impl<T: Scalar> Conic<T> {
    pub fn new(a: T, b: T, c: T, d: T, e: T, f: T) -> Result<Self> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::Degenerate("conic has no quadratic part".into()));
        }
        Ok(Self { a, b, c, d, e, f })
    }

    pub fn from_coefficients(v: [T; 6]) -> Result<Self> {
        let [a, b, c, d, e, f] = v;
        Self::new(a, b, c, d, e, f)
    }

    pub fn coefficients(&self) -> [T; 6] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone(), self.e.clone(), self.f.clone()]
    }

    pub fn eval(&self, p: &Point<T>) -> T {
        let (x, y) = (&p.x, &p.y);
        self.a.clone() * x.clone() * x.clone()
            + self.b.clone() * x.clone() * y.clone()
            + self.c.clone() * y.clone() * y.clone()
            + self.d.clone() * x.clone()
            + self.e.clone() * y.clone()
            + self.f.clone()
    }

    /// `(∂f/∂x, ∂f/∂y)`.
    pub fn gradient(&self, p: &Point<T>) -> (T, T) {
        let two = T::int(2);
        (
            two.clone() * self.a.clone() * p.x.clone() + self.b.clone() * p.y.clone() + self.d.clone(),
            self.b.clone() * p.x.clone() + two * self.c.clone() * p.y.clone() + self.e.clone(),
        )
    }

    /// `B² − 4AC`.
    pub fn discriminant(&self) -> T {
        self.b.clone() * self.b.clone() - T::int(4) * self.a.clone() * self.c.clone()
    }

    /// Determinant of the symmetric matrix `[[2A, B, D], [B, 2C, E], [D, E, 2F]]`.
    pub fn matrix_determinant(&self) -> T {
        let two = T::int(2);
        let (a2, c2, f2) = (two.clone() * self.a.clone(), two.clone() * self.c.clone(), two * self.f.clone());
        let (b, d, e) = (self.b.clone(), self.d.clone(), self.e.clone());
        a2.clone() * (c2.clone() * f2.clone() - e.clone() * e.clone())
            - b.clone() * (b.clone() * f2 - e.clone() * d.clone())
            + d.clone() * (b * e - c2 * d)
    }

    pub fn negated(&self) -> Self {
        let [a, b, c, d, e, f] = self.coefficients();
        Self { a: -a, b: -b, c: -c, d: -d, e: -e, f: -f }
    }

    pub fn scaled(&self, s: &T) -> Self {
        let [a, b, c, d, e, f] = self.coefficients().map(|x| x * s.clone());
        Self { a, b, c, d, e, f }
    }

    /// Positive rescaling to coprime integers (rational) or unit max-norm
    /// (float). The zero set and the sign pattern are unchanged.
    pub fn canonical(&self) -> Self {
        self.scaled(&T::canonical_factor(&self.coefficients()))
    }

    pub fn to_f64(&self) -> Conic<f64> {
        let [a, b, c, d, e, f] = self.coefficients().map(|x| x.to_f64_lossy());
        Conic { a, b, c, d, e, f }
    }

    fn scale(&self) -> f64 {
        self.coefficients().iter().fold(0.0f64, |m, x| m.max(x.to_f64_lossy().abs()))
    }

    pub fn classify(&self) -> ConicClass {
        let s = self.scale();
        let det = self.matrix_determinant();
        if det.sign_rel(s * s * s) == 0 {
            return ConicClass::Degenerate;
        }
        match self.discriminant().sign_rel(s * s) {
            0 => ConicClass::Parabola,
            1 => ConicClass::Hyperbola,
            _ => {
                // Real iff (A + C) and the 3×3 determinant have opposite signs.
                let trace_sign = (self.a.clone() + self.c.clone()).sign_rel(s);
                if trace_sign * det.sign_rel(s * s * s) < 0 {
                    ConicClass::Ellipse
                } else {
                    ConicClass::Degenerate
                }
            }
        }
    }

    /// Discriminant of the quadratic obtained by restricting the conic to the
    /// line `n·x = c`. Zero means the line is tangent.
    pub fn line_discriminant(&self, line: &HalfPlane<T>) -> T {
        let nn = line.nx.clone() * line.nx.clone() + line.ny.clone() * line.ny.clone();
        let p0 = Point::new(line.c.clone() * line.nx.clone() / nn.clone(), line.c.clone() * line.ny.clone() / nn);
        let (ux, uy) = (-line.ny.clone(), line.nx.clone());
        let two = T::int(2);
        let q2 = self.a.clone() * ux.clone() * ux.clone()
            + self.b.clone() * ux.clone() * uy.clone()
            + self.c.clone() * uy.clone() * uy.clone();
        let (gx, gy) = self.gradient(&p0);
        let q1 = gx * ux + gy * uy;
        let q0 = self.eval(&p0);
        q1.clone() * q1 - two.clone() * two * q2 * q0
    }

    /// [`Self::line_discriminant`] divided by the squares of the coefficient
    /// scale and the normal length, for float tolerance checks.
    pub fn relative_line_discriminant(&self, line: &HalfPlane<T>) -> f64 {
        let disc = self.line_discriminant(line).to_f64_lossy();
        let n = line.nx.to_f64_lossy().hypot(line.ny.to_f64_lossy());
        let s = self.scale() * (1.0 + line.c.to_f64_lossy().abs() / n).powi(2);
        disc / (s * s * n.powi(4))
    }
}

pub fn classify_conic<T: Scalar>(c: &Conic<T>) -> ConicClass {
    c.classify()
}

/// The conic `f_k` whose arc bounds the k-positive region for `d/2 < k < d`.
/// Constructible for any `k` so that the formulas can be probed outside
/// that range.
pub fn f_k<T: Scalar>(d: usize, k: usize) -> Conic<T> {
    let (d, k) = (d as i64, k as i64);
    Conic {
        a: T::int(k * d - 1),
        b: T::int(-(d * d * d - k * d * d - k * d - d + 2)),
        c: T::int(d - 1),
        d: T::int(-(k * d - 2)),
        e: T::int(-(d - 2)),
        f: T::int(-1),
    }
}

/// `α(x, y) = −(d−1)·((d+1)x + y, x + (d+1)y)`.
pub fn alpha<T: Scalar>(d: usize, p: &Point<T>) -> Point<T> {
    let d = d as i64;
    let s = T::int(-(d - 1));
    let m = T::int(d + 1);
    Point::new(
        s.clone() * (m.clone() * p.x.clone() + p.y.clone()),
        s * (p.x.clone() + m * p.y.clone()),
    )
}

pub fn alpha_inv<T: Scalar>(d: usize, p: &Point<T>) -> Point<T> {
    let d = d as i64;
    // det(α) = (d−1)²·(d² + 2d)
    let s = T::int(-1) / T::int((d - 1) * (d * d + 2 * d));
    let m = T::int(d + 1);
    Point::new(
        s.clone() * (m.clone() * p.x.clone() - p.y.clone()),
        s * (m * p.y.clone() - p.x.clone()),
    )
}

const ON_CONIC_TOL: f64 = 1e-9;

/// The pole, with respect to the unit circle, of the tangent line to `c`
/// at `pt`. The tangent `uX + vY = 1` has pole `(u, v)`.
pub fn pole_of_tangent<T: Scalar>(c: &Conic<T>, pt: &Point<T>) -> Result<Point<T>> {
    let value = c.eval(pt);
    let off = if T::EXACT { !value.is_zero() } else { value.to_f64_lossy().abs() > ON_CONIC_TOL };
    if off {
        return Err(Error::NotOnConic { x: pt.x.to_f64_lossy(), y: pt.y.to_f64_lossy(), residual: value.to_f64_lossy() });
    }
    let den = c.d.clone() * pt.x.clone() + c.e.clone() * pt.y.clone() + T::int(2) * c.f.clone();
    if den.sign_rel(c.scale()) == 0 {
        return Err(Error::TangentThroughOrigin);
    }
    let (gx, gy) = c.gradient(pt);
    Ok(Point::new(-gx / den.clone(), -gy / den))
}

/// The conic through five points, from the null vector of the 5×6 system
/// `[x², xy, y², x, y, 1]`. Signed so that `interior` (default: centroid)
/// evaluates non-positive, then canonically scaled.
pub fn conic_through_five_points<T: Scalar>(pts: &[Point<T>; 5], interior: Option<&Point<T>>) -> Result<Conic<T>> {
    let mut rows: Vec<Vec<T>> = pts
        .iter()
        .map(|p| {
            vec![
                p.x.clone() * p.x.clone(),
                p.x.clone() * p.y.clone(),
                p.y.clone() * p.y.clone(),
                p.x.clone(),
                p.y.clone(),
                T::one(),
            ]
        })
        .collect();
    let scale = rows.iter().flatten().fold(0.0f64, |m, x| m.max(x.to_f64_lossy().abs()));
    let null = null_vector(&mut rows, scale)?;
    let mut conic = Conic::from_coefficients(null)?;
    let centroid;
    let probe = match interior {
        Some(p) => p,
        None => {
            let five = T::int(5);
            centroid = Point::new(
                pts.iter().fold(T::zero(), |s, p| s + p.x.clone()) / five.clone(),
                pts.iter().fold(T::zero(), |s, p| s + p.y.clone()) / five,
            );
            &centroid
        }
    };
    if conic.eval(probe).is_positive() {
        conic = conic.negated();
    }
    Ok(conic.canonical())
}

/// Null vector of a 5×6 matrix of rank 5 by Gauss-Jordan elimination with
/// largest-magnitude pivoting.
fn null_vector<T: Scalar>(rows: &mut [Vec<T>], scale: f64) -> Result<[T; 6]> {
    let n_rows = rows.len();
    let mut pivot_cols = Vec::with_capacity(n_rows);
    let mut r = 0;
    for col in 0..6 {
        if r == n_rows {
            break;
        }
        let (best, best_abs) = (r..n_rows)
            .map(|i| (i, rows[i][col].abs()))
            .fold((r, T::zero()), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best_abs.sign_rel(scale) == 0 {
            continue;
        }
        rows.swap(r, best);
        let piv = rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() / piv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - factor.clone() * p.clone();
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    if pivot_cols.len() < 5 {
        return Err(Error::Degenerate("five points do not determine a unique conic".into()));
    }
    let free = (0..6).find(|c| !pivot_cols.contains(c)).expect("one free column");
    let mut v: [T; 6] = std::array::from_fn(|_| T::zero());
    v[free] = T::one();
    for (row, &pc) in pivot_cols.iter().enumerate() {
        v[pc] = -rows[row][free].clone();
    }
    Ok(v)
}

pub(crate) fn check_conic_range(d: usize, k: usize) -> Result<()> {
    check_dim(d, 3)?;
    if 2 * k <= d || k >= d {
        return Err(Error::KOutOfRange { d, k, range: "d/2 < k < d" });
    }
    Ok(())
}

/// The five points at which `f̃_k` touches the pentagon bounding `S_k`,
/// in the order matching [`dual_tangent_lines`].
pub fn tangency_points<T: Scalar>(d: usize, k: usize) -> Result<[Point<T>; 5]> {
    check_conic_range(d, k)?;
    let (d, k) = (d as i64, k as i64);
    let den = d * d + d - 2;
    let q = T::ratio;
    Ok([
        Point::new(q(-d, k * den), q(d * d - k * d + d - 2 * k, k * den)),
        Point::new(q(d * d - k * d + d - k - 1, den), q(-(d - k + 1), den)),
        Point::new(q(2 * k * d - d * d + 2 * k - d - 2, den), q(2 * d - 2 * k, den)),
        Point::new(q(k * k * d + k * k + d - 3 * k, k * den), q(-(d - k + 1) * (d - k), k * den)),
        Point::new(q(d, 3 * d - 2 * k), q(-(2 * d - 2 * k), (d - 1) * (3 * d - 2 * k))),
    ])
}

/// The five points of `f_k` where it touches the lines bounding `P_k`,
/// ordered so that their tangent poles map under `α⁻¹` onto
/// [`tangency_points`].
pub fn primal_tangency_points<T: Scalar>(d: usize, k: usize) -> Result<[Point<T>; 5]> {
    check_conic_range(d, k)?;
    let (d, k) = (d as i64, k as i64);
    let den = d * d + d - 2;
    Ok([
        Point::new(T::one(), T::zero()),
        Point::new(T::zero(), T::one()),
        Point::new(T::zero(), T::ratio(-1, d - 1)),
        Point::new(T::ratio(-1, k * d - 1), T::zero()),
        Point::new(T::ratio(-2, den), T::ratio(d, den)),
    ])
}

/// The five lines tangent to `f̃_k`, as `n·x = c`.
pub fn dual_tangent_lines<T: Scalar>(d: usize, k: usize) -> Result<[HalfPlane<T>; 5]> {
    check_conic_range(d, k)?;
    let (di, ki) = (d as i64, k as i64);
    let line = |nx: i64, ny: i64, c: T| HalfPlane { nx: T::int(nx), ny: T::int(ny), c };
    Ok([
        line(di + 1, 1, T::ratio(-1, di - 1)),
        line(1, di + 1, T::ratio(-1, di - 1)),
        line(1, di + 1, T::one()),
        line(di + 1, 1, T::ratio(ki * di - 1, di - 1)),
        line(1, -(di - 1), T::one()),
    ])
}

/// `f̃_k`: the conic through the five tangency points, negative inside.
pub fn dual_conic<T: Scalar>(d: usize, k: usize) -> Result<Conic<T>> {
    conic_through_five_points(&tangency_points::<T>(d, k)?, None)
}
