//! The orthogonally covariant maps
//! `L_{p,q}(Z) = (1−p−q)·Tr(Z)/d·I + pZ + qZᵀ`, the orthogonally invariant
//! operators `ρ_{a,b} = (1−a−b)/d²·I + a|Ω⟩⟨Ω| + (b/d)·F`, their Choi
//! correspondence, and twirling onto `Inv(O⊗O)`.
//!
//! The exact twirl is the trace-inner-product projection onto
//! `span(I, d|Ω⟩⟨Ω|, F)`; the Monte-Carlo twirl averages `(O⊗O)X(O⊗O)ᵀ` over
//! Haar-random orthogonal `O`.

use nalgebra::{DMatrix, Matrix3, Vector3};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::hermitian::{c, flip, max_entangled, CMatrix, HermitianOperator, C64};
use crate::rng::{sample_rng, standard_normal};
use crate::scalar::Scalar;

/// Parameters `(d, p, q)` of the covariant map `L_{p,q}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovariantMapParams<T = f64> {
    pub d: usize,
    pub p: T,
    pub q: T,
}

/// Parameters `(d, a, b)` of the invariant operator `ρ_{a,b}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantStateParams<T = f64> {
    pub d: usize,
    pub a: T,
    pub b: T,
}

impl<T: Scalar> CovariantMapParams<T> {
    pub fn new(d: usize, p: T, q: T) -> Result<Self> {
        check_dim(d, 2)?;
        Ok(Self { d, p, q })
    }

    pub fn to_f64(&self) -> CovariantMapParams<f64> {
        CovariantMapParams { d: self.d, p: self.p.to_f64_lossy(), q: self.q.to_f64_lossy() }
    }

    /// The invariant operator with the same parameters, i.e. the Choi matrix.
    pub fn choi_params(&self) -> InvariantStateParams<T> {
        InvariantStateParams { d: self.d, a: self.p.clone(), b: self.q.clone() }
    }
}

impl<T: Scalar> InvariantStateParams<T> {
    pub fn new(d: usize, a: T, b: T) -> Result<Self> {
        check_dim(d, 2)?;
        Ok(Self { d, a, b })
    }

    pub fn to_f64(&self) -> InvariantStateParams<f64> {
        InvariantStateParams { d: self.d, a: self.a.to_f64_lossy(), b: self.b.to_f64_lossy() }
    }

    /// The covariant map whose Choi matrix is this operator.
    pub fn map_params(&self) -> CovariantMapParams<T> {
        CovariantMapParams { d: self.d, p: self.a.clone(), q: self.b.clone() }
    }
}

/// `(1−p−q)·Tr(Z)/d·I + pZ + qZᵀ`.
pub fn apply_map(m: &CovariantMapParams, z: &CMatrix) -> Result<CMatrix> {
    if z.nrows() != m.d || z.ncols() != m.d {
        return Err(Error::DimensionMismatch { expected: m.d, got: z.nrows().max(z.ncols()) });
    }
    let d = m.d as f64;
    let depol = z.trace() * ((1.0 - m.p - m.q) / d);
    let mut out = z * c(m.p, 0.0) + z.transpose() * c(m.q, 0.0);
    for i in 0..m.d {
        out[(i, i)] += depol;
    }
    Ok(out)
}

/// `(id ⊗ L)(X)` for a `d² × d²` operator `X`, applied block by block.
pub fn apply_id_tensor_map(m: &CovariantMapParams, x: &CMatrix) -> Result<CMatrix> {
    let d = m.d;
    if x.nrows() != d * d || x.ncols() != d * d {
        return Err(Error::DimensionMismatch { expected: d * d, got: x.nrows() });
    }
    let mut out = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let block = x.view((i * d, j * d), (d, d)).into_owned();
            out.view_mut((i * d, j * d), (d, d)).copy_from(&apply_map(m, &block)?);
        }
    }
    Ok(out)
}

/// Normalized Choi matrix `(1/d) Σ_{ij} |i⟩⟨j| ⊗ L(|i⟩⟨j|)`, assembled from
/// the map's action on matrix units.
pub fn choi(m: &CovariantMapParams) -> Result<HermitianOperator> {
    check_dim(m.d, 2)?;
    let d = m.d;
    let mut out = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let image = apply_map(m, &crate::hermitian::matrix_unit(d, i, j))?;
            out.view_mut((i * d, j * d), (d, d)).copy_from(&image.unscale(d as f64));
        }
    }
    HermitianOperator::new(out)
}

/// `ρ_{a,b} = (1−a−b)/d²·I + a|Ω⟩⟨Ω| + (b/d)·F`.
pub fn materialize(s: &InvariantStateParams) -> Result<HermitianOperator> {
    check_dim(s.d, 2)?;
    let d = s.d as f64;
    let n = s.d * s.d;
    let omega = max_entangled(s.d)?;
    let omega_proj = omega.entries() * omega.entries().adjoint();
    let f = flip(s.d)?;
    let m = CMatrix::identity(n, n) * c((1.0 - s.a - s.b) / (d * d), 0.0)
        + omega_proj * c(s.a, 0.0)
        + f.matrix() * c(s.b / d, 0.0);
    HermitianOperator::new(m)
}

/// Coefficients in the ordered basis `(I, d|Ω⟩⟨Ω|, F)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantCoordinates {
    pub d: usize,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl InvariantCoordinates {
    pub fn of_state(s: &InvariantStateParams) -> Self {
        let d = s.d as f64;
        Self { d: s.d, c1: (1.0 - s.a - s.b) / (d * d), c2: s.a / d, c3: s.b / d }
    }

    pub fn materialize(&self) -> Result<HermitianOperator> {
        check_dim(self.d, 2)?;
        let n = self.d * self.d;
        let d = self.d as f64;
        let omega = max_entangled(self.d)?;
        let m = CMatrix::identity(n, n) * c(self.c1, 0.0)
            + (omega.entries() * omega.entries().adjoint()) * c(self.c2 * d, 0.0)
            + flip(self.d)?.matrix() * c(self.c3, 0.0);
        HermitianOperator::new(m)
    }

    pub fn trace(&self) -> f64 {
        let d = self.d as f64;
        self.c1 * d * d + (self.c2 + self.c3) * d
    }

    /// Reads off `(a, b)` after rescaling to unit trace; `None` for
    /// traceless inputs.
    pub fn state_params(&self) -> Option<InvariantStateParams> {
        let t = self.trace();
        if t.abs() < 1e-300 {
            return None;
        }
        let d = self.d as f64;
        Some(InvariantStateParams { d: self.d, a: d * self.c2 / t, b: d * self.c3 / t })
    }

    pub fn as_vector(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }
}

/// Gram matrix `Tr(G_i G_j)` of the basis `(I, d|Ω⟩⟨Ω|, F)`.
pub fn gram_matrix(d: usize) -> Matrix3<f64> {
    let d = d as f64;
    let dd = d * d;
    Matrix3::new(dd, d, d, d, dd, d, d, d, dd)
}

fn side_dim(n: usize) -> Result<usize> {
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n {
        return Err(Error::DimensionMismatch { expected: d * d, got: n });
    }
    check_dim(d, 2)?;
    Ok(d)
}

/// Orthogonal projection of `X` onto `Inv(O⊗O)`, returned as coordinates.
pub fn twirl_exact(x: &HermitianOperator) -> Result<InvariantCoordinates> {
    let d = side_dim(x.dim())?;
    let m = x.matrix();
    let mut t_id = 0.0;
    let mut t_omega = 0.0;
    let mut t_flip = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i == j {
                t_id += m[(i * d + j, i * d + j)].re;
            }
            // d⟨Ω|X|Ω⟩ = Σ_{ij} X[(ii),(jj)]
            t_omega += m[(i * d + i, j * d + j)].re;
            // Tr(FX) = Σ_{ij} X[(ji),(ij)]
            t_flip += m[(j * d + i, i * d + j)].re;
        }
    }
    for i in 0..d {
        for j in 0..d {
            if i != j {
                t_id += m[(i * d + j, i * d + j)].re;
            }
        }
    }
    let rhs = Vector3::new(t_id, t_omega, t_flip);
    let sol = gram_matrix(d)
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Degenerate("singular Gram matrix".into()))?;
    Ok(InvariantCoordinates { d, c1: sol[0], c2: sol[1], c3: sol[2] })
}

/// Haar-distributed real orthogonal matrix: QR of a Gaussian matrix with the
/// signs of `diag(R)` folded into `Q`.
pub fn haar_orthogonal<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(d, d, |_, _| standard_normal(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

const MC_CHUNK: usize = 512;

/// `(1/N) Σ_i (O_i⊗O_i) X (O_i⊗O_i)ᵀ` with `O_i` drawn from stream
/// `(seed, i)`. Deterministic in `(seed, N, d)` regardless of thread count.
pub fn twirl_monte_carlo(x: &HermitianOperator, samples: usize, seed: u64) -> Result<HermitianOperator> {
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    let d = side_dim(x.dim())?;
    let n = d * d;
    let flat: Vec<C64> = (0..n * n).map(|k| x.matrix()[(k / n, k % n)]).collect();
    let chunks = samples.div_ceil(MC_CHUNK);
    let partials: Vec<Vec<C64>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = vec![C64::default(); n * n];
            let mut scratch = OrthoConjugator::new(d);
            let start = chunk * MC_CHUNK;
            let end = (start + MC_CHUNK).min(samples);
            for i in start..end {
                let mut rng = sample_rng(seed, i as u64);
                let o = haar_orthogonal(d, &mut rng);
                scratch.accumulate(&o, &flat, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![C64::default(); n * n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    let inv = 1.0 / samples as f64;
    let m = CMatrix::from_fn(n, n, |r, col| total[r * n + col] * inv);
    HermitianOperator::from_hermitian_part(m)
}

/// Computes `(O⊗O) X (O⊗O)ᵀ` by four `d⁵` index contractions instead of
/// forming the `d² × d²` Kronecker product.
struct OrthoConjugator {
    d: usize,
    t1: Vec<C64>,
    t2: Vec<C64>,
}

impl OrthoConjugator {
    fn new(d: usize) -> Self {
        let n = d * d;
        Self { d, t1: vec![C64::default(); n * n], t2: vec![C64::default(); n * n] }
    }

    /// Adds `(O⊗O) X (O⊗O)ᵀ` into `acc`; `x` and `acc` are row-major `d²×d²`.
    fn accumulate(&mut self, o: &DMatrix<f64>, x: &[C64], acc: &mut [C64]) {
        let d = self.d;
        let n = d * d;
        // rows, first factor: t1[(a,j),c] = Σ_i O[a,i] x[(i,j),c]
        self.t1.iter_mut().for_each(|z| *z = C64::default());
        for a in 0..d {
            for i in 0..d {
                let w = o[(a, i)];
                for j in 0..d {
                    let src = &x[(i * d + j) * n..(i * d + j + 1) * n];
                    let dst = &mut self.t1[(a * d + j) * n..(a * d + j + 1) * n];
                    for (t, s) in dst.iter_mut().zip(src) {
                        *t += s * w;
                    }
                }
            }
        }
        // rows, second factor: t2[(a,b),c] = Σ_j O[b,j] t1[(a,j),c]
        self.t2.iter_mut().for_each(|z| *z = C64::default());
        for a in 0..d {
            for b in 0..d {
                for j in 0..d {
                    let w = o[(b, j)];
                    let (src_row, dst_row) = ((a * d + j) * n, (a * d + b) * n);
                    for col in 0..n {
                        self.t2[dst_row + col] += self.t1[src_row + col] * w;
                    }
                }
            }
        }
        // columns, first factor: t1[r,(a,j)] = Σ_i t2[r,(i,j)] O[a,i]
        self.t1.iter_mut().for_each(|z| *z = C64::default());
        for r in 0..n {
            let row = r * n;
            for a in 0..d {
                for i in 0..d {
                    let w = o[(a, i)];
                    for j in 0..d {
                        self.t1[row + a * d + j] += self.t2[row + i * d + j] * w;
                    }
                }
            }
        }
        // columns, second factor: acc[r,(a,b)] += Σ_j t1[r,(a,j)] O[b,j]
        for r in 0..n {
            let row = r * n;
            for a in 0..d {
                for b in 0..d {
                    let mut s = C64::default();
                    for j in 0..d {
                        s += self.t1[row + a * d + j] * o[(b, j)];
                    }
                    acc[row + a * d + b] += s;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{kron, matrix_unit, pairing, trace_product};
    use crate::rng::{random_hermitian, sample_rng};
    use proptest::{prop_assert, proptest};

    fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn apply_map_examples() {
        let mut rng = sample_rng(3, 0);
        let z = crate::rng::random_hermitian(4, &mut rng).into_matrix();
        let id = CovariantMapParams::new(4, 1.0, 0.0).unwrap();
        assert!(close(&apply_map(&id, &z).unwrap(), &z, 1e-15));

        let t = CovariantMapParams::new(3, 0.0, 1.0).unwrap();
        let e12 = matrix_unit(3, 0, 1);
        assert_eq!(apply_map(&t, &e12).unwrap(), matrix_unit(3, 1, 0));

        let dep = CovariantMapParams::new(3, 0.0, 0.0).unwrap();
        let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]));
        assert!(close(&apply_map(&dep, &diag).unwrap(), &(CMatrix::identity(3, 3) * c(2.0, 0.0)), 1e-15));

        assert!(apply_map(&dep, &CMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn maps_are_trace_preserving_on_matrix_units() {
        let m = CovariantMapParams::new(4, 0.3, -0.7).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let e = matrix_unit(4, i, j);
                assert!((apply_map(&m, &e).unwrap().trace() - e.trace()).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn choi_matches_materialize() {
        for d in 2..=5 {
            for &(p, q) in &[(0.3, -0.2), (1.0, 0.0), (0.0, 1.0), (-0.4, 0.9)] {
                let m = CovariantMapParams::new(d, p, q).unwrap();
                let s = InvariantStateParams::new(d, p, q).unwrap();
                assert!(close(choi(&m).unwrap().matrix(), materialize(&s).unwrap().matrix(), 1e-12));
            }
        }
    }

    #[test]
    fn choi_examples() {
        for d in 2..=4 {
            let omega = max_entangled(d).unwrap();
            let proj = omega.entries() * omega.entries().adjoint();
            assert!(close(choi(&CovariantMapParams::new(d, 1.0, 0.0).unwrap()).unwrap().matrix(), &proj, 1e-14));
            let n = d * d;
            let mixed = CMatrix::identity(n, n).unscale((n) as f64);
            assert!(close(choi(&CovariantMapParams::new(d, 0.0, 0.0).unwrap()).unwrap().matrix(), &mixed, 1e-14));
        }
        let f3 = flip(3).unwrap().into_matrix().unscale(3.0);
        assert!(close(choi(&CovariantMapParams::new(3, 0.0, 1.0).unwrap()).unwrap().matrix(), &f3, 1e-14));
    }

    #[test]
    fn materialize_is_unit_trace_hermitian() {
        let rho = materialize(&InvariantStateParams::new(4, 0.5, 0.25).unwrap()).unwrap();
        assert!((rho.trace() - 1.0).abs() < 1e-14);
        for &(a, b) in &[(0.0, 0.0), (2.0, -3.0), (-0.1, 0.7)] {
            assert!((materialize(&InvariantStateParams::new(5, a, b).unwrap()).unwrap().trace() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn gram_closed_form_matches_brute_force() {
        for d in 2..=5 {
            let n = d * d;
            let omega = max_entangled(d).unwrap();
            let basis = [
                CMatrix::identity(n, n),
                (omega.entries() * omega.entries().adjoint()) * c(d as f64, 0.0),
                flip(d).unwrap().into_matrix(),
            ];
            let g = gram_matrix(d);
            for i in 0..3 {
                for j in 0..3 {
                    assert!((trace_product(&basis[i], &basis[j]) - g[(i, j)]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn twirl_fixes_invariants() {
        let f = flip(3).unwrap();
        let t = twirl_exact(&f).unwrap();
        assert!(t.c1.abs() < 1e-14 && t.c2.abs() < 1e-14 && (t.c3 - 1.0).abs() < 1e-14);

        let s = InvariantStateParams::new(4, 0.3, -0.2).unwrap();
        let t = twirl_exact(&materialize(&s).unwrap()).unwrap();
        let expect = InvariantCoordinates::of_state(&s);
        for (x, y) in t.as_vector().iter().zip(expect.as_vector()) {
            assert!((x - y).abs() < 1e-14);
        }
        let back = t.state_params().unwrap();
        assert!((back.a - 0.3).abs() < 1e-13 && (back.b + 0.2).abs() < 1e-13);
    }

    #[test]
    fn coordinates_round_trip() {
        let coords = InvariantCoordinates { d: 4, c1: 0.1, c2: -0.35, c3: 0.8 };
        let again = twirl_exact(&coords.materialize().unwrap()).unwrap();
        for (x, y) in coords.as_vector().iter().zip(again.as_vector()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn haar_orthogonal_is_orthogonal() {
        let mut rng = sample_rng(11, 0);
        for d in 1..=6 {
            let o = haar_orthogonal(d, &mut rng);
            assert!((o.transpose() * &o - DMatrix::<f64>::identity(d, d)).norm() < 1e-12);
            for col in o.column_iter() {
                assert!((col.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn haar_orthogonal_d1_is_a_fair_sign() {
        // chi-square with one degree of freedom at the 1% level: 6.635
        let n = 10_000;
        let plus = (0..n).filter(|&i| haar_orthogonal(1, &mut sample_rng(5, i))[(0, 0)] > 0.0).count() as f64;
        let expected = n as f64 / 2.0;
        let chi2 = 2.0 * (plus - expected).powi(2) / expected;
        assert!(chi2 < 6.635, "chi2 = {chi2}");
    }

    #[test]
    fn haar_second_moment() {
        // E[O_11²] = 1/d and Var[O_11²] = 3/(d(d+2)) − 1/d²
        let d = 4;
        let n = 100_000;
        let xs: Vec<f64> = (0..n).map(|i| haar_orthogonal(d, &mut sample_rng(9, i))[(0, 0)].powi(2)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let df = d as f64;
        let var = 3.0 / (df * (df + 2.0)) - 1.0 / (df * df);
        let sigma = (var / n as f64).sqrt();
        assert!((mean - 1.0 / df).abs() < 3.0 * sigma, "mean {mean}");
    }

    #[test]
    fn monte_carlo_twirl_keeps_invariants() {
        let f = flip(3).unwrap();
        for n in [1, 7, 600] {
            let t = twirl_monte_carlo(&f, n, 4).unwrap();
            assert!(close(t.matrix(), f.matrix(), 1e-12));
        }
        let omega = HermitianOperator::projector(max_entangled(3).unwrap().entries());
        let t = twirl_monte_carlo(&omega, 50, 4).unwrap();
        assert!(close(t.matrix(), omega.matrix(), 1e-12));
        assert_eq!(twirl_monte_carlo(&f, 0, 1), Err(Error::ZeroSamples));
    }

    #[test]
    fn conjugator_matches_kronecker_product() {
        let mut rng = sample_rng(21, 0);
        let d = 3;
        let x = random_hermitian(d * d, &mut rng);
        let o = haar_orthogonal(d, &mut rng);
        let oc = o.map(|v| c(v, 0.0));
        let big = kron(&oc, &oc);
        let expect = &big * x.matrix() * big.transpose();
        let n = d * d;
        let flat: Vec<C64> = (0..n * n).map(|k| x.matrix()[(k / n, k % n)]).collect();
        let mut acc = vec![C64::default(); n * n];
        OrthoConjugator::new(d).accumulate(&o, &flat, &mut acc);
        let got = CMatrix::from_fn(n, n, |r, col| acc[r * n + col]);
        assert!(close(&got, &expect, 1e-12));
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let mut rng = sample_rng(2, 0);
        let x = random_hermitian(9, &mut rng);
        let a = twirl_monte_carlo(&x, 2000, 77).unwrap();
        let b = twirl_monte_carlo(&x, 2000, 77).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn monte_carlo_twirl_converges_to_projection() {
        let mut rng = sample_rng(8, 0);
        let x = random_hermitian(9, &mut rng);
        let exact = twirl_exact(&x).unwrap().materialize().unwrap();
        let mc = twirl_monte_carlo(&x, 100_000, 1).unwrap();
        assert!((mc.matrix() - exact.matrix()).norm() <= 1e-2);
    }

    #[test]
    fn covariance_under_orthogonal_conjugation() {
        let mut rng = sample_rng(13, 0);
        let m = CovariantMapParams::new(4, 0.37, -0.81).unwrap();
        for _ in 0..10 {
            let z = CMatrix::from_fn(4, 4, |_, _| crate::rng::standard_complex_gaussian(&mut rng));
            let o = haar_orthogonal(4, &mut rng).map(|v| c(v, 0.0));
            let lhs = apply_map(&m, &(&o * &z * o.transpose())).unwrap();
            let rhs = &o * apply_map(&m, &z).unwrap() * o.transpose();
            assert!(close(&lhs, &rhs, 1e-10));
        }
    }

    #[test]
    fn invariant_states_commute_with_orthogonal_pairs() {
        let rho = materialize(&InvariantStateParams::new(3, 0.4, -0.3).unwrap()).unwrap();
        for i in 0..20 {
            let o = haar_orthogonal(3, &mut sample_rng(17, i)).map(|v| c(v, 0.0));
            let u = kron(&o, &o);
            let comm = &u * rho.matrix() - rho.matrix() * &u;
            assert!(comm.norm() <= 1e-10);
        }
    }

    #[test]
    fn choi_pairing_matches_omega_sandwich() {
        // ⟨X, L⟩ = Tr(C_L X) = ⟨Ω|(id⊗L*)(X)|Ω⟩, and L_{p,q} is self-adjoint
        let d = 3;
        let omega = max_entangled(d).unwrap();
        for i in 0..10 {
            let mut rng = sample_rng(19, i);
            let x = materialize(&InvariantStateParams::new(d, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)).unwrap()).unwrap();
            let m = CovariantMapParams::new(d, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)).unwrap();
            let lhs = pairing(&choi(&m).unwrap(), &x).unwrap();
            let y = HermitianOperator::from_hermitian_part(apply_id_tensor_map(&m, x.matrix()).unwrap()).unwrap();
            let rhs = y.expectation(omega.entries());
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }

    proptest! {
        #[test]
        fn twirl_projection_properties(seed in 0u64..200, d in 2usize..5) {
            let mut rng = sample_rng(seed, 3);
            let x = random_hermitian(d * d, &mut rng);
            let y = random_hermitian(d * d, &mut rng);
            let tx = twirl_exact(&x).unwrap();
            let ty = twirl_exact(&y).unwrap();
            // self-duality of the projection
            let lhs = pairing(&tx.materialize().unwrap(), &y).unwrap();
            let rhs = pairing(&x, &ty.materialize().unwrap()).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10);
            // idempotence
            let again = twirl_exact(&tx.materialize().unwrap()).unwrap();
            for (a, b) in tx.as_vector().iter().zip(again.as_vector()) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
            // trace preservation
            prop_assert!((tx.trace() - x.trace()).abs() <= 1e-10);
        }
    }
}
