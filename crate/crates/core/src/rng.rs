//! Counter-based random streams.
//!
//! Every Monte-Carlo draw is addressed by `(seed, index)`: the ChaCha key is
//! derived from the seed and the stream id is the index, so a sample does not
//! depend on how work is split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::hermitian::{c, CMatrix, HermitianOperator, C64};

pub type SampleRng = ChaCha8Rng;

pub fn sample_rng(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Derives a child seed, used to give independent sub-experiments their own
/// stream families.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut rng = sample_rng(seed, tag ^ 0x5eed_0000_0000_0000);
    rng.gen()
}

pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Real and imaginary parts independent `N(0, 1)`.
pub fn standard_complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c(standard_normal(rng), standard_normal(rng))
}

/// A GUE-distributed Hermitian matrix rescaled to unit Frobenius norm.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianOperator {
    let g = CMatrix::from_fn(n, n, |_, _| standard_complex_gaussian(rng));
    let h = (&g + g.adjoint()).scale(0.5);
    let norm = h.norm();
    HermitianOperator::from_hermitian_part(h.unscale(norm)).expect("square by construction")
}
