//! Orthonormal k-frames in `C^d` and the conjugate-overlap functional
//! `Σ_{j,j'} |⟨v_j|v̄_{j'}⟩|²`, minimized over frames.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::hermitian::{c, CMatrix, CVector, C64};
use crate::rng::{sample_rng, standard_complex_gaussian};

pub const FRAME_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameSource {
    Standard,
    Fourier,
    Pair,
    Random,
    Optimized,
}

/// An ordered orthonormal k-tuple in `C^d`, stored as the columns of a
/// `d × k` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    source: FrameSource,
    columns: CMatrix,
}

impl Frame {
    pub fn new(source: FrameSource, columns: CMatrix) -> Result<Self> {
        let (d, k) = columns.shape();
        check_dim(d, 1)?;
        if k == 0 || k > d {
            return Err(Error::KOutOfRange { d, k, range: "1 ≤ k ≤ d" });
        }
        let gram = columns.adjoint() * &columns;
        let deviation = (gram - CMatrix::identity(k, k)).camax();
        if deviation > FRAME_TOL {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self { source, columns })
    }

    pub fn from_vectors(source: FrameSource, vectors: &[CVector]) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::KOutOfRange { d: 0, k: 0, range: "1 ≤ k ≤ d" });
        }
        let d = vectors[0].len();
        if let Some(v) = vectors.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: v.len() });
        }
        Self::new(source, CMatrix::from_columns(vectors))
    }

    /// `e_1, …, e_k`.
    pub fn standard(d: usize, k: usize) -> Result<Self> {
        Self::new(FrameSource::Standard, CMatrix::identity(d, k.min(d)).resize(d, k, C64::default()))
    }

    /// `v_j = d^{-1/2} Σ_l ω^{l j} e_l` with `ω = e^{2πi/d}`, `j = 0, …, k−1`.
    pub fn fourier(d: usize, k: usize) -> Result<Self> {
        check_dim(d, 1)?;
        let s = 1.0 / (d as f64).sqrt();
        let m = CMatrix::from_fn(d, k, |l, j| {
            let t = 2.0 * PI * ((l * j) % d) as f64 / d as f64;
            c(s * t.cos(), s * t.sin())
        });
        Self::new(FrameSource::Fourier, m)
    }

    /// `v_j = (e_{2j} + i e_{2j+1})/√2`; requires `2k ≤ d`.
    pub fn pair(d: usize, k: usize) -> Result<Self> {
        if 2 * k > d {
            return Err(Error::KOutOfRange { d, k, range: "2k ≤ d" });
        }
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut m = CMatrix::zeros(d, k);
        for j in 0..k {
            m[(2 * j, j)] = c(s, 0.0);
            m[(2 * j + 1, j)] = c(0.0, s);
        }
        Self::new(FrameSource::Pair, m)
    }

    /// First k columns of a Haar-random unitary.
    pub fn random<R: Rng + ?Sized>(d: usize, k: usize, rng: &mut R) -> Result<Self> {
        check_dim(d, 1)?;
        if k == 0 || k > d {
            return Err(Error::KOutOfRange { d, k, range: "1 ≤ k ≤ d" });
        }
        let g = CMatrix::from_fn(d, k, |_, _| standard_complex_gaussian(rng));
        Self::new(FrameSource::Random, orthonormalize(g))
    }

    /// The three explicit frames that the proofs use: standard, Fourier and,
    /// when `2k ≤ d`, the pair frame.
    pub fn explicit(d: usize, k: usize) -> Result<Vec<Self>> {
        let mut out = vec![Self::standard(d, k)?, Self::fourier(d, k)?];
        if 2 * k <= d {
            out.push(Self::pair(d, k)?);
        }
        Ok(out)
    }

    pub fn d(&self) -> usize {
        self.columns.nrows()
    }

    pub fn k(&self) -> usize {
        self.columns.ncols()
    }

    pub fn source(&self) -> FrameSource {
        self.source
    }

    pub fn columns(&self) -> &CMatrix {
        &self.columns
    }

    pub fn vector(&self, j: usize) -> CVector {
        self.columns.column(j).into_owned()
    }

    /// Column vectors as `[re, im]` pairs, for JSON output.
    pub fn to_pairs(&self) -> Vec<Vec<[f64; 2]>> {
        self.columns.column_iter().map(|col| col.iter().map(|z| [z.re, z.im]).collect()).collect()
    }
}

/// QR with the phases of `diag(R)` folded into `Q`, which makes the result
/// Haar-distributed when the input is complex Gaussian.
fn orthonormalize(g: CMatrix) -> CMatrix {
    let k = g.ncols();
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..k {
        let z = r[(j, j)];
        let n = z.norm();
        if n > 0.0 {
            let phase = z / n;
            for i in 0..q.nrows() {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// `Σ_{j,j'} |⟨v_j|v̄_{j'}⟩|² = ‖VᵀV‖_F²`.
pub fn frame_overlap(fr: &Frame) -> f64 {
    (fr.columns.transpose() * &fr.columns).norm_squared()
}

/// The conjugate overlap of the Fourier frame counted exactly: pairs
/// `(j, j')` in `0..k` with `j + j' ≡ 0 (mod d)`.
pub fn fourier_overlap_exact(d: usize, k: usize) -> usize {
    (0..k).flat_map(|j| (0..k).map(move |jj| (j + jj) % d)).filter(|&r| r == 0).count()
}

/// The minimum over frames, `max(2k − d, 0)`.
pub fn overlap_lower_bound(d: usize, k: usize) -> usize {
    (2 * k).saturating_sub(d)
}

#[derive(Debug, Clone, Serialize)]
pub struct OverlapMinimum {
    pub d: usize,
    pub k: usize,
    /// Best value over explicit frames and all restarts.
    pub value: f64,
    pub source: FrameSource,
    /// Best value reached from random starts alone.
    pub descent_value: f64,
    pub explicit_value: f64,
    #[serde(skip)]
    pub frame: Frame,
}

/// Explicit frames plus `restarts` runs of projected gradient descent from
/// random frames (stream `(seed, restart)`), each of at most `iters` steps.
pub fn frame_overlap_minimize(d: usize, k: usize, restarts: usize, iters: usize, seed: u64) -> Result<OverlapMinimum> {
    let explicit = Frame::explicit(d, k)?;
    let (mut best, mut best_value) = (explicit[0].clone(), frame_overlap(&explicit[0]));
    for f in &explicit[1..] {
        let v = frame_overlap(f);
        if v < best_value {
            best_value = v;
            best = f.clone();
        }
    }
    let explicit_value = best_value;
    let mut descent_value = f64::INFINITY;
    for r in 0..restarts {
        let mut rng = sample_rng(seed, r as u64);
        let start = Frame::random(d, k, &mut rng)?;
        let (frame, value) = descend(start, iters);
        descent_value = descent_value.min(value);
        if value < best_value {
            best_value = value;
            best = frame;
        }
    }
    Ok(OverlapMinimum { d, k, value: best_value, source: best.source, descent_value, explicit_value, frame: best })
}

/// Gradient of `‖VᵀV‖²` with respect to `V̄` is `2·V̄·(VᵀV)`; steps are
/// retracted to the Stiefel manifold by QR and halved until they descend.
fn descend(start: Frame, iters: usize) -> (Frame, f64) {
    let mut v = start.columns;
    let objective = |m: &CMatrix| (m.transpose() * m).norm_squared();
    let mut value = objective(&v);
    let mut step = 0.25;
    for _ in 0..iters {
        if value < 1e-24 {
            break;
        }
        let s = v.transpose() * &v;
        let grad = v.conjugate() * s * c(2.0, 0.0);
        let mut accepted = false;
        while step > 1e-12 {
            let trial = orthonormalize(&v - &grad * c(step, 0.0));
            let tv = objective(&trial);
            if tv < value {
                v = trial;
                value = tv;
                step *= 1.5;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    let frame = Frame::new(FrameSource::Optimized, v).expect("QR output is orthonormal");
    (frame, value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use proptest::{prop_assert, proptest};

    fn real_frame<R: Rng + ?Sized>(d: usize, k: usize, rng: &mut R) -> Frame {
        let g = DMatrix::from_fn(d, k, |_, _| crate::rng::standard_normal(rng)).map(|x| c(x, 0.0));
        Frame::new(FrameSource::Random, g.qr().q()).unwrap()
    }

    #[test]
    fn explicit_frames_are_orthonormal() {
        for d in 1..=8 {
            for k in 1..=d {
                for f in Frame::explicit(d, k).unwrap() {
                    let g = f.columns().adjoint() * f.columns();
                    assert!((g - CMatrix::identity(k, k)).camax() <= FRAME_TOL);
                }
            }
        }
        assert!(Frame::pair(5, 3).is_err());
        assert!(Frame::standard(3, 4).is_err());
    }

    #[test]
    fn rejects_non_orthonormal() {
        let mut m = CMatrix::identity(3, 2);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(matches!(Frame::new(FrameSource::Random, m), Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn overlap_examples() {
        let mut rng = sample_rng(1, 0);
        for d in 2..=8 {
            for k in 1..=d {
                assert!((frame_overlap(&real_frame(d, k, &mut rng)) - k as f64).abs() < 1e-10);
                assert!((frame_overlap(&Frame::standard(d, k).unwrap()) - k as f64).abs() < 1e-12);
                let f = frame_overlap(&Frame::fourier(d, k).unwrap());
                assert!((f - fourier_overlap_exact(d, k) as f64).abs() < 1e-10);
                if 2 * k > d {
                    assert_eq!(fourier_overlap_exact(d, k), 2 * k - d);
                } else {
                    assert_eq!(frame_overlap(&Frame::pair(d, k).unwrap()), 0.0);
                }
            }
        }
    }

    #[test]
    fn minimizer_examples() {
        let m = frame_overlap_minimize(6, 3, 5, 100, 1).unwrap();
        assert!(m.value.abs() < 1e-12);
        let m = frame_overlap_minimize(5, 4, 5, 100, 1).unwrap();
        assert!((m.value - 3.0).abs() < 1e-12);
        let m = frame_overlap_minimize(7, 5, 50, 300, 1).unwrap();
        assert!((m.value - 3.0).abs() < 1e-9);
        assert!(m.descent_value >= 3.0 - 1e-9);
        assert!((m.descent_value - 3.0).abs() < 1e-6, "descent reached {}", m.descent_value);
    }

    proptest! {
        #[test]
        fn random_frames_respect_the_lower_bound(seed in 0u64..1000, d in 1usize..9, kk in 0usize..8) {
            let k = kk % d + 1;
            let f = Frame::random(d, k, &mut sample_rng(seed, 0)).unwrap();
            let g = f.columns().adjoint() * f.columns();
            prop_assert!((g - CMatrix::identity(k, k)).camax() <= FRAME_TOL);
            prop_assert!(frame_overlap(&f) >= overlap_lower_bound(d, k) as f64 - 1e-9);
        }
    }
}
