//! Heuristic search for a Schmidt-rank-≤k vector `ξ` with `⟨ξ|X|ξ⟩ < 0`.
//! Finding one proves `X` is not k-block positive; not finding one proves
//! nothing.

use nalgebra::SymmetricEigen;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermitian::{BipartiteVector, CMatrix, CVector, HermitianOperator, C64};
use crate::rng::{sample_rng, standard_complex_gaussian};

#[derive(Debug, Clone, PartialEq)]
pub struct FalsifierHit {
    pub vector: BipartiteVector,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FalsifierStats {
    pub iterations: usize,
    pub best_value: f64,
}

fn side(x: &HermitianOperator) -> Result<usize> {
    let n = x.dim();
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n {
        return Err(Error::DimensionMismatch { expected: d * d, got: n });
    }
    Ok(d)
}

fn min_eigenvector(m: CMatrix) -> (f64, CVector) {
    let eig = SymmetricEigen::new(m);
    let (i, _) = eig.eigenvalues.iter().enumerate().fold((0, f64::INFINITY), |b, (i, &v)| if v < b.1 { (i, v) } else { b });
    (eig.eigenvalues[i], eig.eigenvectors.column(i).into_owned())
}

fn orthonormal_columns(m: CMatrix) -> CMatrix {
    m.qr().q()
}

/// Minimizes `⟨ξ|X|ξ⟩` over `ξ = Σ_r a_r ⊗ b_r`, `r ≤ k`, by alternating
/// exact minimization over the `a` factors (with the `b` factors
/// orthonormal) and over the `b` factors (with the `a` factors orthonormal).
/// Starts from a random `b` drawn from stream `(seed, 0)`.
pub fn block_positivity_falsifier_run(
    x: &HermitianOperator,
    k: usize,
    iters: usize,
    seed: u64,
) -> Result<(Option<FalsifierHit>, FalsifierStats)> {
    let d = side(x)?;
    if k == 0 || k > d {
        return Err(Error::KOutOfRange { d, k, range: "1 ≤ k ≤ d" });
    }
    let xm = x.matrix();
    let threshold = -1e-10 * x.frobenius_norm().max(1.0);
    let mut rng = sample_rng(seed, 0);
    let mut b = orthonormal_columns(CMatrix::from_fn(d, k, |_, _| standard_complex_gaussian(&mut rng)));
    let mut best = f64::INFINITY;
    let mut iterations = 0;
    for it in 0..iters {
        iterations = it + 1;
        // ξ(i,j) = Σ_r a[i,r] b[j,r]; with b fixed, ξ = T_b vec(a) and T_b is
        // an isometry when the columns of b are orthonormal.
        let t = embed(d, k, &b, true);
        let (_, va) = min_eigenvector(t.adjoint() * xm * &t);
        let a = orthonormal_columns(CMatrix::from_fn(d, k, |i, r| va[i * k + r]));
        let t = embed(d, k, &a, false);
        let (value, vb) = min_eigenvector(t.adjoint() * xm * &t);
        b = CMatrix::from_fn(d, k, |j, r| vb[j * k + r]);
        best = best.min(value);
        if value < threshold {
            let xi = xi_from(d, k, &a, &b);
            let v = BipartiteVector::new(d, d, xi)?.normalized().expect("nonzero");
            let exact = x.expectation(v.entries());
            return Ok((Some(FalsifierHit { vector: v, value: exact }), FalsifierStats { iterations, best_value: best }));
        }
        b = orthonormal_columns(b);
    }
    Ok((None, FalsifierStats { iterations, best_value: best }))
}

/// `block_positivity_falsifier_run` without the statistics.
pub fn block_positivity_falsifier(x: &HermitianOperator, k: usize, iters: usize, seed: u64) -> Result<Option<FalsifierHit>> {
    Ok(block_positivity_falsifier_run(x, k, iters, seed)?.0)
}

/// The `d² × dk` matrix mapping the free factor to `ξ`. With `fixed_is_b`,
/// the free factor is `a` indexed `(i, r)`; otherwise it is `b` indexed
/// `(j, r)`.
fn embed(d: usize, k: usize, fixed: &CMatrix, fixed_is_b: bool) -> CMatrix {
    let mut t = CMatrix::zeros(d * d, d * k);
    for i in 0..d {
        for j in 0..d {
            for r in 0..k {
                if fixed_is_b {
                    t[(i * d + j, i * k + r)] = fixed[(j, r)];
                } else {
                    t[(i * d + j, j * k + r)] = fixed[(i, r)];
                }
            }
        }
    }
    t
}

fn xi_from(d: usize, k: usize, a: &CMatrix, b: &CMatrix) -> CVector {
    CVector::from_fn(d * d, |idx, _| {
        let (i, j) = (idx / d, idx % d);
        (0..k).map(|r| a[(i, r)] * b[(j, r)]).fold(C64::default(), |s, z| s + z)
    })
}
