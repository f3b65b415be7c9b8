//! Grid and sampling drivers that compare the classifier against each
//! oracle and summarize the outcome as an [`OracleReport`].

use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::{schmidt_number, Classifier, MembershipVerdict, SchmidtNumber, BOUNDARY_TOL};
use crate::error::{check_dim, Error, Result};
use crate::hermitian::{pairing, C64};
use crate::oracle::block::block_positive;
use crate::oracle::duality::duality_sanity;
use crate::oracle::frame::{fourier_overlap_exact, frame_overlap_minimize, overlap_lower_bound};
use crate::oracle::report::{OracleReport, Statistics, Witness};
use crate::oracle::tomiyama::FrameBank;
use crate::oracle::witness::WitnessScanner;
use crate::region::state_vertices;
use crate::rng::{derive_seed, random_hermitian, sample_rng};
use crate::symmetry::{twirl_exact, twirl_monte_carlo};

/// Points within this distance of a region boundary are skipped by the
/// grid suites.
pub const GRID_BAND: f64 = 1e-6;
pub const GRID_LO: f64 = -0.6;
pub const GRID_HI: f64 = 1.1;
pub const OVERLAP_TOL: f64 = 1e-6;
pub const OVERLAP_FLOOR_TOL: f64 = 1e-9;
pub const TWIRL_MC_TOL: f64 = 1e-2;
pub const TWIRL_EXACT_TOL: f64 = 1e-10;

/// `n × n` points of `[lo, hi]²`, row-major in `q` then `p`.
pub fn grid(lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    (0..n).flat_map(|j| (0..n).map(move |i| (lo + step * i as f64, lo + step * j as f64))).collect()
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct GridTally {
    pub k: usize,
    pub checked: usize,
    pub skipped: usize,
    pub inside: usize,
    pub disagreements: usize,
    /// Exterior points violated only by a random frame.
    pub random_only: usize,
}

#[derive(Debug, Clone, Copy)]
enum Outcome {
    Skipped,
    Agree { inside: bool, random_only: bool },
    Disagree,
}

fn tally(k: usize, outcomes: &[Outcome]) -> GridTally {
    let mut t = GridTally { k, ..Default::default() };
    for o in outcomes {
        match *o {
            Outcome::Skipped => t.skipped += 1,
            Outcome::Agree { inside, random_only } => {
                t.checked += 1;
                t.inside += inside as usize;
                t.random_only += random_only as usize;
            }
            Outcome::Disagree => {
                t.checked += 1;
                t.disagreements += 1;
            }
        }
    }
    t
}

fn first_disagreement(points: &[(f64, f64)], outcomes: &[Outcome]) -> Option<(f64, f64)> {
    outcomes.iter().position(|o| matches!(o, Outcome::Disagree)).map(|i| points[i])
}

fn grid_report(
    oracle: &str,
    d: usize,
    n: usize,
    tallies: Vec<GridTally>,
    first: Option<(f64, f64, usize)>,
    worst_margin: f64,
) -> OracleReport {
    let checked = tallies.iter().map(|t| t.checked).sum();
    let disagreements: usize = tallies.iter().map(|t| t.disagreements).sum();
    let stats = Statistics::new(checked, worst_margin)
        .with("d", d)
        .with("grid", n)
        .with("disagreements", disagreements)
        .with("per_k", &tallies);
    match first {
        Some((x, y, k)) => {
            OracleReport::violated(oracle, Witness::Point { x, y, k, note: "classifier and oracle disagree".into() }, stats)
        }
        None => OracleReport::consistent(oracle, stats),
    }
}

/// Smallest `|margin|` among checked points; a sanity value showing how
/// close to the boundary the grid came.
fn closest(verdicts: &[MembershipVerdict]) -> f64 {
    verdicts.iter().map(|v| v.margin.abs()).filter(|m| *m > GRID_BAND).fold(f64::INFINITY, f64::min)
}

/// Classifier against the Tomiyama criterion on an `n × n` grid over
/// `[−0.6, 1.1]²` for every `k`, with the explicit frames and `n_random`
/// random frames per point.
pub fn tomiyama_suite(d: usize, n: usize, n_random: usize, seed: u64) -> Result<OracleReport> {
    check_dim(d, 2)?;
    let cl = Classifier::<f64>::new(d, BOUNDARY_TOL)?;
    let points = grid(GRID_LO, GRID_HI, n);
    let mut tallies = Vec::new();
    let mut first = None;
    let mut near = f64::INFINITY;
    for k in 1..=d {
        let bank = FrameBank::new(d, k, n_random, seed)?;
        let verdicts: Vec<MembershipVerdict> =
            points.iter().map(|(p, q)| cl.map_verdict(p, q, k)).collect::<Result<_>>()?;
        near = near.min(closest(&verdicts));
        let outcomes: Vec<Outcome> = points
            .par_iter()
            .zip(verdicts.par_iter())
            .map_init(
                || vec![C64::default(); bank.dim() * bank.dim()],
                |scratch, (&(p, q), v)| {
                    if v.margin.abs() <= GRID_BAND {
                        return Outcome::Skipped;
                    }
                    let hit = bank.first_violation(p, q, scratch);
                    match (v.is_member(), hit) {
                        (true, None) => Outcome::Agree { inside: true, random_only: false },
                        (false, Some(i)) => Outcome::Agree { inside: false, random_only: i >= bank.n_explicit },
                        _ => Outcome::Disagree,
                    }
                },
            )
            .collect();
        if first.is_none() {
            first = first_disagreement(&points, &outcomes).map(|(p, q)| (p, q, k));
        }
        tallies.push(tally(k, &outcomes));
    }
    let mut report = grid_report("tomiyama", d, n, tallies, first, near);
    report.statistics = report.statistics.with("frames", n_random).with("seed", seed);
    Ok(report)
}

/// Classifier against the reduced block conditions for `1 < k < d`.
pub fn block_suite(d: usize, n: usize) -> Result<OracleReport> {
    check_dim(d, 3)?;
    let cl = Classifier::<f64>::new(d, BOUNDARY_TOL)?;
    let points = grid(GRID_LO, GRID_HI, n);
    let mut tallies = Vec::new();
    let mut first = None;
    let mut near = f64::INFINITY;
    for k in 2..d {
        let verdicts: Vec<MembershipVerdict> =
            points.iter().map(|(p, q)| cl.map_verdict(p, q, k)).collect::<Result<_>>()?;
        near = near.min(closest(&verdicts));
        let outcomes: Vec<Outcome> = points
            .iter()
            .zip(&verdicts)
            .map(|(&(p, q), v)| {
                if v.margin.abs() <= GRID_BAND {
                    return Ok(Outcome::Skipped);
                }
                let ok = block_positive(d, &p, &q, k)?;
                Ok(if ok == v.is_member() { Outcome::Agree { inside: ok, random_only: false } } else { Outcome::Disagree })
            })
            .collect::<Result<_>>()?;
        if first.is_none() {
            first = first_disagreement(&points, &outcomes).map(|(p, q)| (p, q, k));
        }
        tallies.push(tally(k, &outcomes));
    }
    Ok(grid_report("block", d, n, tallies, first, near))
}

#[derive(Debug, Clone, Serialize)]
pub struct OverlapRow {
    pub k: usize,
    pub lower_bound: usize,
    pub fourier_exact: usize,
    pub explicit_value: f64,
    pub descent_value: f64,
    pub value: f64,
}

/// Frame-overlap minimum for every `k`: explicit frames must attain
/// `max(2k−d, 0)`, and no descent may go below it.
pub fn frames_suite(d: usize, restarts: usize, iters: usize, seed: u64) -> Result<OracleReport> {
    check_dim(d, 1)?;
    let rows: Vec<OverlapRow> = (1..=d)
        .into_par_iter()
        .map(|k| {
            let m = frame_overlap_minimize(d, k, restarts, iters, derive_seed(seed, k as u64))?;
            Ok(OverlapRow {
                k,
                lower_bound: overlap_lower_bound(d, k),
                fourier_exact: fourier_overlap_exact(d, k),
                explicit_value: m.explicit_value,
                descent_value: m.descent_value,
                value: m.value,
            })
        })
        .collect::<Result<_>>()?;
    let mut worst = f64::INFINITY;
    let mut bad = None;
    for r in &rows {
        let lb = r.lower_bound as f64;
        worst = worst.min(r.value - lb + OVERLAP_FLOOR_TOL);
        let attained = (r.value - lb).abs() <= OVERLAP_TOL && (r.explicit_value - lb).abs() <= OVERLAP_TOL;
        let floor = r.value >= lb - OVERLAP_FLOOR_TOL && r.descent_value >= lb - OVERLAP_FLOOR_TOL;
        let exact = 2 * r.k <= d || r.fourier_exact == r.lower_bound;
        if bad.is_none() && !(attained && floor && exact) {
            bad = Some(r.clone());
        }
    }
    let stats = Statistics::new(rows.len() * restarts, worst)
        .with("d", d)
        .with("restarts", restarts)
        .with("iters", iters)
        .with("seed", seed)
        .with("per_k", &rows);
    Ok(match bad {
        Some(r) => {
            let note = format!("overlap minimum {} against bound {}", r.value, r.lower_bound);
            OracleReport::violated("frames", Witness::Point { x: r.value, y: r.lower_bound as f64, k: r.k, note }, stats)
        }
        None => OracleReport::consistent("frames", stats),
    })
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct TwirlErrors {
    pub monte_carlo: f64,
    pub idempotence: f64,
    pub trace: f64,
    pub self_duality: f64,
}

/// Monte-Carlo against exact twirl for `n_ops` random Hermitian `d² × d²`
/// operators (stream `(seed, i)`), plus idempotence, trace preservation
/// and adjoint self-duality of the exact projection.
pub fn twirl_suite(d: usize, n_ops: usize, samples: usize, seed: u64) -> Result<OracleReport> {
    check_dim(d, 2)?;
    if n_ops == 0 || samples == 0 {
        return Err(Error::ZeroSamples);
    }
    let family = derive_seed(seed, 0x7e1);
    let mut worst = TwirlErrors::default();
    for i in 0..n_ops {
        let mut rng = sample_rng(family, i as u64);
        let x = random_hermitian(d * d, &mut rng);
        let y = random_hermitian(d * d, &mut rng);
        let tx = twirl_exact(&x)?.materialize()?;
        let ty = twirl_exact(&y)?.materialize()?;
        let mc = twirl_monte_carlo(&x, samples, derive_seed(family, i as u64))?;
        let e = TwirlErrors {
            monte_carlo: (mc.matrix() - tx.matrix()).norm(),
            idempotence: (twirl_exact(&tx)?.materialize()?.matrix() - tx.matrix()).norm(),
            trace: (tx.trace() - x.trace()).abs(),
            self_duality: (pairing(&tx, &y)? - pairing(&x, &ty)?).abs(),
        };
        worst.monte_carlo = worst.monte_carlo.max(e.monte_carlo);
        worst.idempotence = worst.idempotence.max(e.idempotence);
        worst.trace = worst.trace.max(e.trace);
        worst.self_duality = worst.self_duality.max(e.self_duality);
    }
    let ok = worst.monte_carlo <= TWIRL_MC_TOL
        && worst.idempotence <= TWIRL_EXACT_TOL
        && worst.trace <= TWIRL_EXACT_TOL
        && worst.self_duality <= TWIRL_EXACT_TOL;
    let stats = Statistics::new(n_ops, TWIRL_MC_TOL - worst.monte_carlo)
        .with("d", d)
        .with("mc_samples", samples)
        .with("seed", seed)
        .with("errors", worst);
    Ok(if ok {
        OracleReport::consistent("twirl", stats)
    } else {
        let note = format!("twirl errors {worst:?}");
        OracleReport::violated("twirl", Witness::Point { x: worst.monte_carlo, y: worst.idempotence, k: d, note }, stats)
    })
}

/// An `n × n` grid over the bounding box of `S_d`, restricted to states.
pub fn state_grid(d: usize, n: usize) -> Result<Vec<(f64, f64)>> {
    let v = state_vertices::<f64>(d, d)?.vertices;
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in &v {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    let cl = Classifier::<f64>::new(d, BOUNDARY_TOL)?;
    let mut out = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let a = x0 + (x1 - x0) * (i as f64 + 0.5) / n as f64;
            let b = y0 + (y1 - y0) * (j as f64 + 0.5) / n as f64;
            if cl.state_verdict(&a, &b, d)?.is_member() {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// Witness search against the Schmidt number on a grid of states: for every
/// `k`, a violating extreme map of `P_k` is found iff `SN > k`.
pub fn witness_suite(d: usize, n: usize, arc_samples: usize) -> Result<OracleReport> {
    check_dim(d, 2)?;
    let points = state_grid(d, n)?;
    let scanners: Vec<WitnessScanner> = (1..=d).map(|k| WitnessScanner::new(d, k, arc_samples)).collect::<Result<_>>()?;
    let mut tallies: Vec<GridTally> = (1..=d).map(|k| GridTally { k, ..Default::default() }).collect();
    let mut first = None;
    let mut worst = f64::INFINITY;
    for &(a, b) in &points {
        let prof = schmidt_number(d, &a, &b, BOUNDARY_TOL)?;
        let SchmidtNumber::Value(sn) = prof.schmidt_number else { continue };
        for (sc, (t, v)) in scanners.iter().zip(tallies.iter_mut().zip(&prof.per_k)) {
            let k = sc.k();
            if v.margin.abs() <= GRID_BAND {
                t.skipped += 1;
                continue;
            }
            let hit = sc.most_negative(a, b);
            worst = worst.min(hit.pairing.abs());
            let found = sc.scan(a, b).is_some();
            t.checked += 1;
            t.inside += (sn <= k) as usize;
            if found != (sn > k) {
                t.disagreements += 1;
                first.get_or_insert((a, b, k));
            }
        }
    }
    let mut report = grid_report("witness", d, n, tallies, first, worst);
    report.statistics = report.statistics.with("arc_samples", arc_samples).with("states", points.len());
    Ok(report)
}

/// Mapping-cone duality sampling.
pub fn duality_suite(d: usize, samples: usize, seed: u64) -> Result<OracleReport> {
    duality_sanity(d, samples, seed)
}
