//! Sampled checks that dual cone pairs pair nonnegatively: entanglement
//! breaking Choi matrices against positive maps, CP against CP, and
//! Schmidt-rank-≤k mixtures against k-positive maps.

use rand::Rng;

use crate::classifier::{Classifier, Status, BOUNDARY_TOL};
use crate::error::{check_dim, Error, Result};
use crate::hermitian::{pairing, CMatrix, CVector, HermitianOperator, C64};
use crate::oracle::report::{OracleReport, Statistics, Witness};
use crate::rng::{derive_seed, sample_rng, standard_complex_gaussian};
use crate::symmetry::{choi, CovariantMapParams};

pub const DUALITY_TOL: f64 = 1e-10;
const MAX_DUALITY_DIM: usize = 4;
const MIXTURE_TERMS: usize = 6;

fn random_unit<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CVector {
    let v = CVector::from_fn(n, |_, _| standard_complex_gaussian(rng));
    let norm = v.norm();
    v.unscale(norm)
}

/// Convex mixture of `|x_i⟩⟨x_i| ⊗ |y_i⟩⟨y_i|`, unit trace.
pub fn random_product_mixture<R: Rng + ?Sized>(d: usize, rng: &mut R) -> HermitianOperator {
    random_rank_k_mixture(d, 1, rng)
}

/// Convex mixture of projectors onto random vectors of Schmidt rank `≤ k`.
pub fn random_rank_k_mixture<R: Rng + ?Sized>(d: usize, k: usize, rng: &mut R) -> HermitianOperator {
    let mut acc = CMatrix::zeros(d * d, d * d);
    let weights: Vec<f64> = (0..MIXTURE_TERMS).map(|_| rng.gen::<f64>()).collect();
    let total: f64 = weights.iter().sum();
    for w in weights {
        let mut xi = CVector::zeros(d * d);
        for _ in 0..k {
            let (x, y) = (random_unit(d, rng), random_unit(d, rng));
            let c = standard_complex_gaussian(rng);
            for i in 0..d {
                for j in 0..d {
                    xi[i * d + j] += c * x[i] * y[j];
                }
            }
        }
        let xi = xi.unscale(xi.norm());
        acc += (&xi * xi.adjoint()).scale(w / total);
    }
    HermitianOperator::from_hermitian_part(acc).expect("square")
}

/// Random PSD `G G*` normalized to unit trace.
pub fn random_psd<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianOperator {
    let g = CMatrix::from_fn(n, n, |_, _| standard_complex_gaussian(rng));
    let m = &g * g.adjoint();
    let tr: C64 = m.trace();
    HermitianOperator::from_hermitian_part(m.unscale(tr.re)).expect("square")
}

/// Rejection-samples a map `L_{p,q}` that the classifier places strictly
/// inside `P_k`.
fn random_k_positive<R: Rng + ?Sized>(cl: &Classifier, k: usize, rng: &mut R) -> Result<CovariantMapParams> {
    let d = cl.d();
    loop {
        let (p, q) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if cl.map_verdict(&p, &q, k)?.status == Status::Inside {
            return CovariantMapParams::new(d, p, q);
        }
    }
}

struct Family {
    name: &'static str,
    worst: f64,
    worst_at: Option<(f64, f64, usize)>,
}

impl Family {
    fn new(name: &'static str) -> Self {
        Self { name, worst: f64::INFINITY, worst_at: None }
    }

    fn record(&mut self, value: f64, at: Option<(f64, f64, usize)>) {
        if value < self.worst {
            self.worst = value;
            self.worst_at = at;
        }
    }
}

/// For each sample `i` (stream `(seed, i)`): an EB Choi matrix against a
/// positive `L_{p,q}`, a CP Choi matrix against another CP Choi matrix, and
/// for every `k` a Schmidt-rank-≤k mixture against a k-positive `L_{p,q}`.
/// Consistent iff every pairing is `≥ −1e-10`.
pub fn duality_sanity(d: usize, samples: usize, seed: u64) -> Result<OracleReport> {
    check_dim(d, 2)?;
    if d > MAX_DUALITY_DIM {
        return Err(Error::Degenerate(format!("duality sampling supports d ≤ {MAX_DUALITY_DIM}, got {d}")));
    }
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    let cl = Classifier::<f64>::new(d, BOUNDARY_TOL)?;
    let family = derive_seed(seed, 0xd0a1);
    let mut eb = Family::new("eb_vs_positive");
    let mut cp = Family::new("cp_vs_cp");
    let mut sn = Family::new("schmidt_vs_k_positive");
    for i in 0..samples {
        let mut rng = sample_rng(family, i as u64);
        let rho = random_product_mixture(d, &mut rng);
        let m = random_k_positive(&cl, 1, &mut rng)?;
        eb.record(pairing(&rho, &choi(&m)?)?, Some((m.p, m.q, 1)));

        let (x, y) = (random_psd(d * d, &mut rng), random_psd(d * d, &mut rng));
        cp.record(pairing(&x, &y)?, None);

        for k in 1..=d {
            let rho = random_rank_k_mixture(d, k, &mut rng);
            let m = random_k_positive(&cl, k, &mut rng)?;
            sn.record(pairing(&rho, &choi(&m)?)?, Some((m.p, m.q, k)));
        }
    }
    let families = [eb, cp, sn];
    let worst = families.iter().map(|f| f.worst).fold(f64::INFINITY, f64::min);
    let mut stats = Statistics::new(samples, worst).with("d", d).with("seed", seed);
    for f in &families {
        stats = stats.with(f.name, f.worst);
    }
    if let Some(f) = families.iter().find(|f| f.worst < -DUALITY_TOL) {
        let (x, y, k) = f.worst_at.unwrap_or((f64::NAN, f64::NAN, 0));
        let note = format!("{} pairing {:e}", f.name, f.worst);
        return Ok(OracleReport::violated("duality", Witness::Point { x, y, k, note }, stats));
    }
    Ok(OracleReport::consistent("duality", stats))
}
