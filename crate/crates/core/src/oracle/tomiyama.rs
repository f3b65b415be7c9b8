//! The Tomiyama criterion: `L` is k-positive iff
//! `C_k^v(L) = Σ_{i,j} |i⟩⟨j| ⊗ L(|v_i⟩⟨v_j|)` is positive semidefinite for
//! every orthonormal k-frame `v`.

use crate::error::{Error, Result};
use crate::hermitian::{c, cholesky_in_place, CMatrix, HermitianOperator, C64, DEFAULT_PSD_TOL};
use crate::oracle::frame::Frame;
use crate::oracle::report::{OracleReport, Statistics, Witness};
use crate::rng::{derive_seed, sample_rng};
use crate::symmetry::{apply_map, CovariantMapParams};

/// Literal block assembly of `C_k^v(L)`.
pub fn tomiyama_matrix(m: &CovariantMapParams, fr: &Frame) -> Result<HermitianOperator> {
    if fr.d() != m.d {
        return Err(Error::DimensionMismatch { expected: m.d, got: fr.d() });
    }
    let (d, k) = (m.d, fr.k());
    let mut out = CMatrix::zeros(k * d, k * d);
    for i in 0..k {
        for j in 0..k {
            let vi = fr.vector(i);
            let vj = fr.vector(j);
            let block = apply_map(m, &(&vi * vj.adjoint()))?;
            out.view_mut((i * d, j * d), (d, d)).copy_from(&block);
        }
    }
    HermitianOperator::from_hermitian_part(out)
}

/// `C_k^v(L_{p,q}) = (1−p−q)/d·I + p·A + q·B`, with `A` the blocks
/// `v_i v_j*` and `B` their transposes, stored row-major for repeated
/// PSD tests at many `(p, q)`.
#[derive(Debug, Clone)]
pub struct TomiyamaParts {
    d: usize,
    n: usize,
    a: Vec<C64>,
    b: Vec<C64>,
}

impl TomiyamaParts {
    pub fn new(fr: &Frame) -> Self {
        let (d, k) = (fr.d(), fr.k());
        let n = d * k;
        let v = fr.columns();
        let mut a = vec![C64::default(); n * n];
        let mut b = vec![C64::default(); n * n];
        for i in 0..k {
            for j in 0..k {
                for r in 0..d {
                    for s in 0..d {
                        let row = i * d + r;
                        let col = j * d + s;
                        a[row * n + col] = v[(r, i)] * v[(s, j)].conj();
                        b[row * n + col] = v[(s, i)] * v[(r, j)].conj();
                    }
                }
            }
        }
        Self { d, n, a, b }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn assemble(&self, p: f64, q: f64, out: &mut [C64]) {
        let diag = (1.0 - p - q) / self.d as f64;
        for (o, (a, b)) in out.iter_mut().zip(self.a.iter().zip(&self.b)) {
            *o = a * p + b * q;
        }
        for i in 0..self.n {
            out[i * self.n + i] += c(diag, 0.0);
        }
    }

    pub fn matrix(&self, p: f64, q: f64) -> CMatrix {
        let mut buf = vec![C64::default(); self.n * self.n];
        self.assemble(p, q, &mut buf);
        CMatrix::from_fn(self.n, self.n, |r, s| buf[r * self.n + s])
    }

    /// Cholesky test of `C + tol·max(1, ‖C‖_F)·I`; `scratch` must hold `n²`.
    pub fn is_psd(&self, p: f64, q: f64, tol: f64, scratch: &mut [C64]) -> bool {
        self.assemble(p, q, scratch);
        let norm = scratch.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cholesky_in_place(scratch, self.n, tol * norm.max(1.0))
    }
}

/// Explicit frames followed by `n_random` Haar-random frames from stream
/// family `derive_seed(seed, k)`.
#[derive(Debug, Clone)]
pub struct FrameBank {
    pub frames: Vec<Frame>,
    pub parts: Vec<TomiyamaParts>,
    pub n_explicit: usize,
}

impl FrameBank {
    pub fn new(d: usize, k: usize, n_random: usize, seed: u64) -> Result<Self> {
        let mut frames = Frame::explicit(d, k)?;
        let n_explicit = frames.len();
        let family = derive_seed(seed, k as u64);
        for i in 0..n_random {
            frames.push(Frame::random(d, k, &mut sample_rng(family, i as u64))?);
        }
        let parts = frames.iter().map(TomiyamaParts::new).collect();
        Ok(Self { frames, parts, n_explicit })
    }

    pub fn dim(&self) -> usize {
        self.parts[0].dim()
    }

    /// Index of the first frame whose Tomiyama matrix is not PSD.
    pub fn first_violation(&self, p: f64, q: f64, scratch: &mut [C64]) -> Option<usize> {
        self.parts.iter().position(|part| !part.is_psd(p, q, DEFAULT_PSD_TOL, scratch))
    }
}

/// Smallest eigenvalue of `C_k^v` relative to `max(1, ‖C‖₂)`.
fn relative_min_eigenvalue(m: &HermitianOperator) -> f64 {
    let ev = m.eigenvalues();
    let scale = ev[0].abs().max(ev[ev.len() - 1].abs()).max(1.0);
    ev[0] / scale
}

/// PSD test of `C_k^v(L_{p,q})` on the explicit frames and `n_random`
/// random ones. Violated when some frame gives a negative eigenvalue beyond
/// the PSD tolerance; the witness is the first such frame.
pub fn tomiyama_check(d: usize, p: f64, q: f64, k: usize, n_random: usize, seed: u64) -> Result<OracleReport> {
    let m = CovariantMapParams::new(d, p, q)?;
    let bank = FrameBank::new(d, k, n_random, seed)?;
    let mut worst = f64::INFINITY;
    for (index, fr) in bank.frames.iter().enumerate() {
        let t = tomiyama_matrix(&m, fr)?;
        let margin = relative_min_eigenvalue(&t);
        worst = worst.min(margin);
        if margin < -DEFAULT_PSD_TOL {
            let witness = Witness::Frame { source: fr.source(), index, min_eigenvalue: t.min_eigenvalue(), vectors: fr.to_pairs() };
            let stats = Statistics::new(index + 1, worst).with("d", d).with("k", k).with("p", p).with("q", q);
            return Ok(OracleReport::violated("tomiyama", witness, stats));
        }
    }
    let stats = Statistics::new(bank.frames.len(), worst).with("d", d).with("k", k).with("p", p).with("q", q);
    Ok(OracleReport::consistent("tomiyama", stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{Classifier, Status, BOUNDARY_TOL};
    use crate::hermitian::is_psd;
    use crate::oracle::frame::FrameSource;
    use crate::oracle::report::Verdict;
    use rand::Rng;

    #[test]
    fn identity_map_gives_rank_one_projector() {
        let m = CovariantMapParams::new(4, 1.0, 0.0).unwrap();
        let fr = Frame::standard(4, 3).unwrap();
        let t = tomiyama_matrix(&m, &fr).unwrap();
        let mut w = crate::hermitian::CVector::zeros(12);
        for i in 0..3 {
            w[i * 4 + i] = c(1.0, 0.0);
        }
        assert!((t.matrix() - &w * w.adjoint()).norm() < 1e-14);
        assert!(is_psd(&t, DEFAULT_PSD_TOL));
    }

    #[test]
    fn depolarizing_map_gives_scaled_identity() {
        let m = CovariantMapParams::new(5, 0.0, 0.0).unwrap();
        let fr = Frame::random(5, 3, &mut sample_rng(4, 0)).unwrap();
        let t = tomiyama_matrix(&m, &fr).unwrap();
        assert!((t.matrix() - CMatrix::identity(15, 15).unscale(5.0)).norm() < 1e-12);
    }

    #[test]
    fn transpose_is_not_two_positive() {
        let m = CovariantMapParams::new(3, 0.0, 1.0).unwrap();
        let t = tomiyama_matrix(&m, &Frame::standard(3, 2).unwrap()).unwrap();
        assert!(t.min_eigenvalue() < -0.5);
        let r = tomiyama_check(3, 0.0, 1.0, 2, 10, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(matches!(r.witness, Some(Witness::Frame { source: FrameSource::Standard, .. })));
    }

    #[test]
    fn parts_match_literal_assembly() {
        let mut rng = sample_rng(7, 0);
        for d in 2..=5 {
            for k in 1..=d {
                let fr = Frame::random(d, k, &mut rng).unwrap();
                let parts = TomiyamaParts::new(&fr);
                let (p, q) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let lit = tomiyama_matrix(&CovariantMapParams::new(d, p, q).unwrap(), &fr).unwrap();
                assert!((lit.matrix() - parts.matrix(p, q)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn interior_and_exterior_points() {
        let d = 4;
        let cl = Classifier::<f64>::new(d, BOUNDARY_TOL).unwrap();
        let mut rng = sample_rng(12, 0);
        let mut seen = (0, 0);
        while seen.0 < 3 || seen.1 < 3 {
            let (p, q) = (rng.gen_range(-0.6..1.1), rng.gen_range(-0.6..1.1));
            let v = cl.map_verdict(&p, &q, 3).unwrap();
            if v.margin.abs() < 1e-3 {
                continue;
            }
            let r = tomiyama_check(d, p, q, 3, 500, 3).unwrap();
            if v.status == Status::Inside {
                assert!(r.is_consistent());
                assert!(r.statistics.worst_margin > 0.0);
                seen.0 += 1;
            } else {
                assert!(!r.is_consistent());
                seen.1 += 1;
            }
        }
    }

    #[test]
    fn cholesky_and_eigen_agree_on_tomiyama_matrices() {
        let mut rng = sample_rng(5, 0);
        let bank = FrameBank::new(3, 2, 20, 9).unwrap();
        let mut scratch = vec![C64::default(); bank.dim() * bank.dim()];
        for _ in 0..200 {
            let (p, q) = (rng.gen_range(-0.6..1.1), rng.gen_range(-0.6..1.1));
            for (fr, part) in bank.frames.iter().zip(&bank.parts) {
                let t = tomiyama_matrix(&CovariantMapParams::new(3, p, q).unwrap(), fr).unwrap();
                let ev = relative_min_eigenvalue(&t);
                if ev.abs() > 1e-6 {
                    assert_eq!(part.is_psd(p, q, DEFAULT_PSD_TOL, &mut scratch), ev > 0.0);
                }
            }
        }
    }
}
