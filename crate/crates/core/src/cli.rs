//! Command-line front end. JSON goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 answered, 2 usage or input error, 3 an oracle suite
//! reported an inconsistency.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::classifier::{Classifier, BOUNDARY_TOL};
use crate::error::{Error, Result};
use crate::oracle::{
    block_suite, duality_suite, frames_suite, tomiyama_suite, twirl_suite, witness_suite, OracleReport, WitnessScanner,
};
use crate::region::render::{self, Style, DEFAULT_STYLE_TOML};
use crate::region::{
    boundary_sk, dual_conic, dual_tangent_lines, extreme_points_pk, f_k, primal_tangency_points, tangency_points, Conic,
    Point, RegionBoundary,
};
use crate::scalar::{parse_f64, parse_rational, rational_to_string, Scalar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const THREADS_ENV: &str = "SCHMIDT_CONE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "schmidt-cone", version, about = "k-positivity and Schmidt numbers for orthogonally symmetric maps and states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Largest k for which L_{p,q} is k-positive.
    ClassifyMap(MapArgs),
    /// Schmidt number of ρ_{a,b}.
    ClassifyState(StateArgs),
    /// Boundary of P_k (map) or S_k (state) as JSON, CSV or SVG.
    Region(RegionArgs),
    /// Run oracle suites against the classifier.
    Verify(VerifyArgs),
    /// Search the extreme points of P_k for a map witnessing SN(ρ_{a,b}) > k.
    Witness(WitnessArgs),
    /// Coefficients and classification of f_k or its dual conic.
    Conic(ConicArgs),
}

#[derive(Debug, Args)]
struct MapArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Decide with exact rational arithmetic.
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Args)]
struct StateArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegionWhich {
    Map,
    State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Args)]
struct RegionArgs {
    #[arg(value_enum)]
    which: RegionWhich,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    k: usize,
    /// Points per conic arc.
    #[arg(long, default_value_t = 64)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// TOML file overriding SVG style keys.
    #[arg(long)]
    style: Option<PathBuf>,
    /// Write the artifact here and print a JSON summary instead.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Tomiyama,
    Block,
    Frames,
    Twirl,
    Witness,
    Duality,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Grid side; defaults to 200 for map grids and 100 for state grids.
    #[arg(long)]
    grid: Option<usize>,
    /// Random frames per grid point.
    #[arg(long, default_value_t = 200)]
    frames: usize,
    /// Monte-Carlo samples for twirl (default 100000) or duality (default 1000).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 50)]
    restarts: usize,
    #[arg(long, default_value_t = 300)]
    iters: usize,
    #[arg(long, default_value_t = 256)]
    arc_samples: usize,
    /// Random operators for the twirl suite.
    #[arg(long, default_value_t = 20)]
    operators: usize,
}

#[derive(Debug, Args)]
struct WitnessArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 256)]
    arc_samples: usize,
}

#[derive(Debug, Args)]
struct ConicArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    k: usize,
    /// The dual conic through the five tangency points instead of f_k.
    #[arg(long)]
    dual: bool,
}

enum Failure {
    Usage(String),
    Inconsistent(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match thread_pool() {
        Ok(Some(pool)) => pool.install(|| dispatch(cli.command)),
        Ok(None) => dispatch(cli.command),
        Err(msg) => Err(Failure::Usage(msg)),
    };
    match result {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Inconsistent(v)) => {
            let _ = writeln!(out, "{}", pretty(&v));
            let _ = writeln!(err, "error: an oracle suite reported an inconsistency");
            EXIT_INCONSISTENT
        }
    }
}

fn thread_pool() -> std::result::Result<Option<rayon::ThreadPool>, String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(None) };
    let n: usize = raw.trim().parse().map_err(|_| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err(format!("{THREADS_ENV} must be positive"));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build().map(Some).map_err(|e| e.to_string())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

fn to_value<S: serde::Serialize>(s: &S) -> Value {
    serde_json::to_value(s).expect("serializable")
}

fn dispatch(cmd: Command) -> std::result::Result<String, Failure> {
    match cmd {
        Command::ClassifyMap(a) => classify_map(a).map(|v| pretty(&v)),
        Command::ClassifyState(a) => classify_state(a).map(|v| pretty(&v)),
        Command::Region(a) => region(a),
        Command::Verify(a) => verify(a).map(|v| pretty(&v)),
        Command::Witness(a) => witness(a).map(|v| pretty(&v)),
        Command::Conic(a) => conic(a).map(|v| pretty(&v)),
    }
}

fn with_input(mut v: Value, input: Value) -> Value {
    v.as_object_mut().expect("profile is an object").insert("input".into(), input);
    v
}

fn classify_map(a: MapArgs) -> std::result::Result<Value, Failure> {
    let input = json!({ "p": a.p, "q": a.q });
    let (kp, sp) = if a.exact {
        let (p, q) = (parse_rational(&a.p)?, parse_rational(&a.q)?);
        let cl = Classifier::<BigRational>::new(a.d, 0.0)?;
        (to_value(&cl.k_positivity(&p, &q)?), to_value(&cl.superpositivity(&p, &q)?))
    } else {
        let (p, q) = (parse_f64(&a.p)?, parse_f64(&a.q)?);
        let cl = Classifier::<f64>::new(a.d, BOUNDARY_TOL)?;
        (to_value(&cl.k_positivity(&p, &q)?), to_value(&cl.superpositivity(&p, &q)?))
    };
    let mut v = with_input(kp, input);
    let obj = v.as_object_mut().expect("object");
    obj.insert("superpositivity".into(), json!({ "max_k": sp["max_k"], "min_k": sp["min_k"] }));
    Ok(v)
}

fn classify_state(a: StateArgs) -> std::result::Result<Value, Failure> {
    let input = json!({ "a": a.a, "b": a.b });
    let prof = if a.exact {
        let (x, y) = (parse_rational(&a.a)?, parse_rational(&a.b)?);
        to_value(&Classifier::<BigRational>::new(a.d, 0.0)?.schmidt(&x, &y)?)
    } else {
        let (x, y) = (parse_f64(&a.a)?, parse_f64(&a.b)?);
        to_value(&Classifier::<f64>::new(a.d, BOUNDARY_TOL)?.schmidt(&x, &y)?)
    };
    Ok(with_input(prof, input))
}

fn load_style(path: Option<&PathBuf>) -> Result<Style> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            Style::from_toml(&text)
        }
        None => Style::from_toml(DEFAULT_STYLE_TOML),
    }
}

fn region_boundary(which: RegionWhich, d: usize, k: usize, samples: usize) -> Result<RegionBoundary> {
    match which {
        RegionWhich::Map => extreme_points_pk(d, k, samples),
        RegionWhich::State => boundary_sk(d, k, samples),
    }
}

fn region(a: RegionArgs) -> std::result::Result<String, Failure> {
    let b = region_boundary(a.which, a.d, a.k, a.samples)?;
    let text = match a.format {
        Format::Json => render::to_json(&b),
        Format::Csv => render::to_csv(&b),
        Format::Svg => render::to_svg(&b, &load_style(a.style.as_ref())?),
    };
    let Some(path) = a.output else {
        return Ok(text.trim_end().to_string());
    };
    std::fs::write(&path, &text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let summary = json!({
        "kind": b.kind,
        "d": b.d,
        "k": b.k,
        "case": b.case,
        "vertices": b.vertices.len(),
        "segments": b.segment_count(),
        "arcs": b.arc_count(),
        "format": format!("{:?}", a.format).to_lowercase(),
        "output": path.display().to_string(),
    });
    Ok(pretty(&summary))
}

fn verify(a: VerifyArgs) -> std::result::Result<Value, Failure> {
    let suites = match a.suite {
        Suite::All => vec![Suite::Tomiyama, Suite::Block, Suite::Frames, Suite::Twirl, Suite::Witness, Suite::Duality],
        s => vec![s],
    };
    let mut reports: Vec<OracleReport> = Vec::new();
    let mut skipped = Vec::new();
    for s in suites {
        let all = a.suite == Suite::All;
        let r = match s {
            Suite::Tomiyama => tomiyama_suite(a.d, a.grid.unwrap_or(200), a.frames, a.seed)?,
            Suite::Block if all && a.d < 3 => {
                skipped.push("block");
                continue;
            }
            Suite::Block => block_suite(a.d, a.grid.unwrap_or(200))?,
            Suite::Frames => frames_suite(a.d, a.restarts, a.iters, a.seed)?,
            Suite::Twirl => twirl_suite(a.d, a.operators, a.samples.unwrap_or(100_000), a.seed)?,
            Suite::Witness => witness_suite(a.d, a.grid.unwrap_or(100), a.arc_samples)?,
            Suite::Duality if all && a.d > 4 => {
                skipped.push("duality");
                continue;
            }
            Suite::Duality => duality_suite(a.d, a.samples.unwrap_or(1000), a.seed)?,
            Suite::All => unreachable!("expanded above"),
        };
        reports.push(r);
    }
    let consistent = reports.iter().all(OracleReport::is_consistent);
    let v = json!({ "d": a.d, "seed": a.seed, "consistent": consistent, "skipped": skipped, "reports": reports });
    if consistent {
        Ok(v)
    } else {
        Err(Failure::Inconsistent(v))
    }
}

fn witness(a: WitnessArgs) -> std::result::Result<Value, Failure> {
    let (x, y) = (parse_f64(&a.a)?, parse_f64(&a.b)?);
    let cl = Classifier::<f64>::new(a.d, BOUNDARY_TOL)?;
    let sn = cl.schmidt(&x, &y)?.schmidt_number;
    let sc = WitnessScanner::new(a.d, a.k, a.arc_samples)?;
    let best = sc.most_negative(x, y);
    let found = sc.scan(x, y).is_some();
    Ok(json!({
        "d": a.d,
        "k": a.k,
        "input": { "a": a.a, "b": a.b },
        "schmidt_number": sn,
        "found": found,
        "p": best.p,
        "q": best.q,
        "pairing": best.pairing,
        "extreme_points": sc.extreme_points().len(),
    }))
}

fn exact_pair(p: &Point<BigRational>) -> Value {
    json!([rational_to_string(&p.x), rational_to_string(&p.y)])
}

fn conic_json(c: &Conic<BigRational>) -> Value {
    let coeffs = c.coefficients();
    json!({
        "order": ["x^2", "xy", "y^2", "x", "y", "1"],
        "exact": coeffs.iter().map(rational_to_string).collect::<Vec<_>>(),
        "float": coeffs.iter().map(|x| x.to_f64_lossy()).collect::<Vec<_>>(),
    })
}

fn conic(a: ConicArgs) -> std::result::Result<Value, Failure> {
    type Q = BigRational;
    let (d, k) = (a.d, a.k);
    if a.dual {
        let c = dual_conic::<Q>(d, k)?;
        let points: Vec<Value> = tangency_points::<Q>(d, k)?
            .iter()
            .map(|p| json!({ "point": exact_pair(p), "value": rational_to_string(&c.eval(p)) }))
            .collect();
        let cf = c.to_f64();
        let lines: Vec<Value> = dual_tangent_lines::<Q>(d, k)?
            .iter()
            .map(|l| {
                json!({
                    "nx": rational_to_string(&l.nx),
                    "ny": rational_to_string(&l.ny),
                    "c": rational_to_string(&l.c),
                    "relative_discriminant": cf.relative_line_discriminant(&l.to_f64()),
                })
            })
            .collect();
        return Ok(json!({
            "d": d, "k": k, "conic": "dual",
            "coefficients": conic_json(&c),
            "classification": c.classify().to_string(),
            "tangency_points": points,
            "tangent_lines": lines,
        }));
    }
    if d < 3 || k < 1 || k > d {
        return Err(Error::KOutOfRange { d, k, range: "1 ≤ k ≤ d, d ≥ 3" }.into());
    }
    let c = f_k::<Q>(d, k);
    let mut out = json!({
        "d": d, "k": k, "conic": "f_k",
        "coefficients": conic_json(&c),
        "classification": c.classify().to_string(),
    });
    if let Ok(points) = primal_tangency_points::<Q>(d, k) {
        let lines: Vec<Value> = points
            .iter()
            .map(|p| {
                let (gx, gy) = c.gradient(p);
                let rhs = gx.clone() * p.x.clone() + gy.clone() * p.y.clone();
                json!({ "point": exact_pair(p), "value": rational_to_string(&c.eval(p)),
                        "nx": rational_to_string(&gx), "ny": rational_to_string(&gy), "c": rational_to_string(&rhs) })
            })
            .collect();
        out.as_object_mut().expect("object").insert("tangent_lines".into(), Value::Array(lines));
    }
    Ok(out)
}
