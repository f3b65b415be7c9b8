//! Dense complex linear algebra: Hermitian operators, PSD tests, Schmidt
//! decompositions and the bipartite building blocks (maximally entangled
//! vector, flip operator, Kronecker products, trace pairing).
//!
//! Bipartite indices follow the row-major convention `(i, j) ↦ i·d_B + j`,
//! which is also what [`nalgebra::Matrix::kronecker`] produces.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Default relative tolerance for PSD decisions. Region boundary points
/// produce zero eigenvalues up to rounding.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

const HERMITIAN_TOL: f64 = 1e-12;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// A square complex matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    entries: CMatrix,
}

impl HermitianOperator {
    /// Validates squareness and Hermiticity within `1e-12 · max(1, ‖H‖_F)`.
    pub fn new(entries: CMatrix) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols || rows == 0 {
            return Err(Error::NotSquare { rows, cols });
        }
        let deviation = hermitian_deviation(&entries);
        let scale = entries.norm().max(1.0);
        if deviation > HERMITIAN_TOL * scale {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { entries })
    }

    /// Symmetrizes `(M + M†)/2` before wrapping; for operators assembled from
    /// formulas that are Hermitian up to rounding.
    pub fn from_hermitian_part(entries: CMatrix) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols || rows == 0 {
            return Err(Error::NotSquare { rows, cols });
        }
        let sym = (&entries + entries.adjoint()).scale(0.5);
        Ok(Self { entries: sym })
    }

    pub fn from_real(entries: DMatrix<f64>) -> Result<Self> {
        Self::new(entries.map(|x| c(x, 0.0)))
    }

    pub fn identity(dim: usize) -> Self {
        Self { entries: CMatrix::identity(dim, dim) }
    }

    /// `|v⟩⟨v|`.
    pub fn projector(v: &CVector) -> Self {
        Self { entries: v * v.adjoint() }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.norm()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.entries.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn spectral_norm(&self) -> f64 {
        let ev = self.eigenvalues();
        ev[0].abs().max(ev[ev.len() - 1].abs())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { entries: self.entries.map(|z| z * s) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self { entries: &self.entries + &other.entries })
    }

    /// `U H U†`, which stays Hermitian for any square `U`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<Self> {
        same_dim(self.dim(), u.nrows())?;
        Self::from_hermitian_part(u * &self.entries * u.adjoint())
    }

    /// `⟨v|H|v⟩`.
    pub fn expectation(&self, v: &CVector) -> f64 {
        (v.adjoint() * &self.entries * v)[(0, 0)].re
    }
}

fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn same_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// True iff the smallest eigenvalue is at least `−tol · max(1, ‖H‖₂)`.
pub fn is_psd(h: &HermitianOperator, tol: f64) -> bool {
    let ev = h.eigenvalues();
    let norm = ev[0].abs().max(ev[ev.len() - 1].abs());
    ev[0] >= -tol * norm.max(1.0)
}

/// [`is_psd`] for a raw matrix, enforcing the Hermitian contract first.
pub fn is_psd_matrix(m: &CMatrix, tol: f64) -> Result<bool> {
    Ok(is_psd(&HermitianOperator::new(m.clone())?, tol))
}

/// Cholesky-based PSD test of `H + tol·max(1, ‖H‖_F)·I`.
///
/// Much cheaper than an eigen-solve and used by the grid oracles. The
/// Frobenius norm bounds the spectral norm from above, so this accepts a
/// superset of what [`is_psd`] accepts at the same tolerance, by at most a
/// factor `√n` in the shift.
pub fn is_psd_cholesky(m: &CMatrix, tol: f64) -> bool {
    let n = m.nrows();
    let mut buf: Vec<C64> = (0..n * n).map(|k| m[(k / n, k % n)]).collect();
    cholesky_in_place(&mut buf, n, tol * m.norm().max(1.0))
}

/// Real-pivot Cholesky of `H + shift·I` on a row-major buffer, overwriting
/// the lower triangle. Returns false at the first non-positive pivot.
///
/// nalgebra's complex Cholesky takes complex square roots of the pivots and
/// never fails, so it cannot serve as a PSD test.
pub(crate) fn cholesky_in_place(l: &mut [C64], n: usize, shift: f64) -> bool {
    for j in 0..n {
        let mut pivot = l[j * n + j].re + shift;
        for k in 0..j {
            pivot -= l[j * n + k].norm_sqr();
        }
        if pivot.is_nan() || pivot <= 0.0 {
            return false;
        }
        let root = pivot.sqrt();
        l[j * n + j] = c(root, 0.0);
        let inv = 1.0 / root;
        for i in j + 1..n {
            let mut s = l[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = s * inv;
        }
    }
    true
}

/// A vector in `C^{d_A} ⊗ C^{d_B}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteVector {
    dim_a: usize,
    dim_b: usize,
    entries: CVector,
}

impl BipartiteVector {
    pub fn new(dim_a: usize, dim_b: usize, entries: CVector) -> Result<Self> {
        check_dim(dim_a, 1)?;
        check_dim(dim_b, 1)?;
        same_dim(dim_a * dim_b, entries.len())?;
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("bipartite vector entry".into()));
        }
        Ok(Self { dim_a, dim_b, entries })
    }

    /// `a ⊗ b`.
    pub fn product(a: &CVector, b: &CVector) -> Result<Self> {
        let entries = a.kronecker(b);
        Self::new(a.len(), b.len(), entries)
    }

    /// The basis vector `|i⟩ ⊗ |j⟩` (zero-based).
    pub fn basis(dim_a: usize, dim_b: usize, i: usize, j: usize) -> Result<Self> {
        let mut v = CVector::zeros(dim_a * dim_b);
        if i >= dim_a || j >= dim_b {
            return Err(Error::DimensionMismatch { expected: dim_a * dim_b, got: i * dim_b + j });
        }
        v[i * dim_b + j] = c(1.0, 0.0);
        Self::new(dim_a, dim_b, v)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    pub fn entries(&self) -> &CVector {
        &self.entries
    }

    pub fn norm(&self) -> f64 {
        self.entries.norm()
    }

    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0).then(|| Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            entries: self.entries.unscale(n),
        })
    }

    /// The `d_A × d_B` coefficient matrix `M[i][j] = ξ[i·d_B + j]`.
    pub fn coefficient_matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.dim_a, self.dim_b, |i, j| self.entries[i * self.dim_b + j])
    }
}

/// Schmidt coefficients `λ_1 ≥ … ≥ λ_k > 0`; the Schmidt rank is their count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtSpectrum {
    pub coefficients: Vec<f64>,
}

impl SchmidtSpectrum {
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn squared_sum(&self) -> f64 {
        self.coefficients.iter().map(|l| l * l).sum()
    }
}

/// Singular values of the coefficient matrix above `tol`, nonincreasing.
pub fn schmidt_spectrum(xi: &BipartiteVector, tol: f64) -> SchmidtSpectrum {
    let sv = xi.coefficient_matrix().singular_values();
    let mut coefficients: Vec<f64> = sv.iter().copied().filter(|&s| s > tol).collect();
    coefficients.sort_by(|a, b| b.total_cmp(a));
    SchmidtSpectrum { coefficients }
}

/// `Tr(XY)`; real because both operands are Hermitian.
pub fn pairing(x: &HermitianOperator, y: &HermitianOperator) -> Result<f64> {
    same_dim(x.dim(), y.dim())?;
    Ok(trace_product(x.matrix(), y.matrix()))
}

pub(crate) fn trace_product(x: &CMatrix, y: &CMatrix) -> f64 {
    let n = x.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += (x[(i, j)] * y[(j, i)]).re;
        }
    }
    acc
}

/// `Ω_d = d^{-1/2} Σ_j |jj⟩`.
pub fn max_entangled(d: usize) -> Result<BipartiteVector> {
    check_dim(d, 1)?;
    let mut v = CVector::zeros(d * d);
    let amp = 1.0 / (d as f64).sqrt();
    for j in 0..d {
        v[j * d + j] = c(amp, 0.0);
    }
    BipartiteVector::new(d, d, v)
}

/// The flip `F_d = Σ_{ij} |ij⟩⟨ji|`.
pub fn flip(d: usize) -> Result<HermitianOperator> {
    check_dim(d, 1)?;
    let mut m = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m[(i * d + j, j * d + i)] = c(1.0, 0.0);
        }
    }
    HermitianOperator::new(m)
}

/// Kronecker product `A ⊗ B` with row-major bipartite indexing.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// `|i⟩⟨j|` in dimension `d`.
pub fn matrix_unit(d: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    m[(i, j)] = c(1.0, 0.0);
    m
}
