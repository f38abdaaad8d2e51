//! `holosos`: exact rank computations for squared norms of holomorphic
//! polynomial maps.
//!
//! Exit codes: 0 success, 1 identity mismatch (`verify`), 2 parse or
//! precondition failure, 3 modifying map does not vanish at the origin,
//! 4 modifying map is not minimal.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use holosos::bounds::{
    check_named, check_nonhomogeneous_product, check_rational_modification, gap_intervals, prime_substitution,
    verify_injective, BoundKind, BoundReport,
};
use holosos::document::{Document, FormDocument, MapDocument};
use holosos::ensemble::{run_ensemble, EnsembleConfig, CSV_HEADER};
use holosos::isometry::{identity_difference, multiset_count};
use holosos::par::Execution;
use holosos::scalar::parse_rational;
use holosos::{
    divide_by_norm, inertia, lambda_family_report, solve_h, span_rank, tensor_rank_e, Error, HermitianForm, ScaledMap,
    SquaredNorm,
};

const ENSEMBLE_HELP: &str = "\
CSV columns (header always emitted, rows in sample order):
  n       number of variables
  d       number of components of the sampled map f (all independent)
  degree  largest component degree allowed for the sample
  m       rank of h in (1+|z|^2)(1+|f|^2) = 1+|h|^2
  lower   lower bound on m for (n, d)
  upper   upper bound on m for (n, d); empty when d > n
  in_gap  true when m lies strictly inside an excluded interval";

#[derive(Parser)]
#[command(name = "holosos", version, about = "Exact sums of squares for holomorphic polynomial maps")]
struct Cli {
    /// Output format (default: csv for `ensemble`, text otherwise).
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Rank and inertia of a map's squared norm, or of a form.
    Rank(InputArgs),
    /// Minimal h with (1+|z|^2)^b (1+|f|^2)^c = 1 + |h|^2.
    SolveH(SolveArgs),
    /// Exact check of (1+|z|^2)^b (1+|f|^2)^c = (1+|h|^2)^a.
    Verify(VerifyArgs),
    /// e such that (1, f)^{(x)c} has rank e + 1.
    TensorRank(TensorArgs),
    /// Excluded intervals of target dimensions in dimension n.
    Gaps(GapsArgs),
    /// Evaluate a named bound on supplied integers (KEY=VALUE ...).
    Bounds(BoundsArgs),
    /// Exponents making z^a -> t^(a . w) injective on degrees <= t.
    Primes(PrimesArgs),
    /// Divide a bihomogeneous form by |Z|^2.
    Divide(DivideArgs),
    /// The family (1+|z|^2)^4 - lambda |z|^4 in one variable.
    Example1(Example1Args),
    /// Seeded random ensemble of modifying maps, one CSV row per sample.
    #[command(after_help = ENSEMBLE_HELP)]
    Ensemble(EnsembleArgs),
}

#[derive(Args)]
struct InputArgs {
    /// JSON map or form document.
    #[arg(long, short)]
    input: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    /// JSON map document for f.
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, default_value_t = 1)]
    b: u32,
    #[arg(long, default_value_t = 1)]
    c: u32,
    /// Also write h as a map document to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON map document for f.
    #[arg(long)]
    f: PathBuf,
    /// JSON map document for h.
    #[arg(long)]
    h: PathBuf,
    #[arg(long, default_value_t = 1)]
    a: u32,
    #[arg(long, default_value_t = 1)]
    b: u32,
    #[arg(long, default_value_t = 1)]
    c: u32,
}

#[derive(Args)]
struct TensorArgs {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, default_value_t = 1)]
    c: u32,
}

#[derive(Args)]
struct GapsArgs {
    #[arg(value_name = "N", required_unless_present = "n")]
    n_pos: Option<u64>,
    #[arg(long, conflicts_with = "n_pos")]
    n: Option<u64>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Bound id: one of one-modification, gap, rational-modification,
    /// homogeneous-product, affine-product, nonhomogeneous-product, power,
    /// best-lower.
    id: String,
    /// Named integers, e.g. n=2 p=1 r=4.
    #[arg(value_name = "KEY=VALUE")]
    values: Vec<String>,
}

#[derive(Args)]
struct PrimesArgs {
    #[arg(value_name = "N", required_unless_present = "n")]
    n_pos: Option<usize>,
    #[arg(value_name = "T", required_unless_present = "t")]
    t_pos: Option<u64>,
    #[arg(long, conflicts_with = "n_pos")]
    n: Option<usize>,
    #[arg(long, conflicts_with = "t_pos")]
    t: Option<u64>,
}

#[derive(Args)]
struct DivideArgs {
    /// JSON form document (or a map document, whose squared norm is used).
    #[arg(long, short)]
    input: PathBuf,
    /// Also write the quotient as a form document to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Example1Args {
    /// lambda as an exact rational "p/q".
    #[arg(value_name = "LAMBDA", conflicts_with = "lambda")]
    lambda_pos: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
}

#[derive(Args)]
struct EnsembleArgs {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d_max: usize,
    #[arg(long, default_value_t = 2)]
    degree_max: u32,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bound on |numerator| and denominator of coefficient parts.
    #[arg(long, default_value_t = 4)]
    height: u32,
    /// Evaluate samples one at a time instead of in parallel.
    #[arg(long)]
    sequential: bool,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonzeroAtOrigin => 3,
            Error::NotMinimal { .. } => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type Outcome = Result<(String, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_scaled(path: &Path) -> Result<ScaledMap, Failure> {
    Ok(MapDocument::parse(&read(path)?)?.to_scaled()?)
}

fn cmd_rank(args: &InputArgs) -> Outcome {
    let doc = Document::parse(&read(&args.input)?)?;
    let mut out = String::new();
    match &doc {
        Document::Map(m) => {
            let f = m.to_scaled()?;
            let rank = span_rank(&f.polys());
            writeln!(out, "rank={rank}").unwrap();
            writeln!(out, "inertia={}", inertia(&f.squared_norm())).unwrap();
            writeln!(out, "minimal={}", rank == f.len()).unwrap();
        }
        Document::Form(d) => {
            let a = d.to_form()?;
            let inert = inertia(&a);
            writeln!(out, "rank={}", inert.rank()).unwrap();
            writeln!(out, "inertia={inert}").unwrap();
            writeln!(out, "sos={}", inert.is_sos()).unwrap();
        }
    }
    Ok((out, 0))
}

fn report_line(rep: &BoundReport, format: Format) -> String {
    match format {
        Format::Text => rep.to_string(),
        Format::Csv => {
            let upper = rep.upper.map(|u| u.to_string()).unwrap_or_default();
            format!(
                "bound,observed,lower,upper,satisfied\n{},{},{},{},{}",
                rep.kind, rep.observed, rep.lower, upper, rep.satisfied
            )
        }
    }
}

fn cmd_solve_h(args: &SolveArgs, format: Format) -> Outcome {
    let f = read_scaled(&args.input)?;
    let h = solve_h(f.clone(), args.b, args.c)?;
    let (n, p, m) = (f.nvars() as u64, f.len() as u64, h.len() as u64);
    let report = if args.b == 1 && args.c == 1 {
        check_nonhomogeneous_product(n, p, m)?
    } else {
        let e = tensor_rank_e(&f.polys(), args.c)? as u64;
        check_rational_modification(n, e, m, 1, args.b as u64)?
    };
    if let Some(path) = &args.output {
        write(path, &MapDocument::from_scaled(&h).to_json())?;
    }
    let mut out = String::new();
    writeln!(out, "m={m}").unwrap();
    writeln!(out, "h={h}").unwrap();
    writeln!(out, "{}", report_line(&report, format)).unwrap();
    Ok((out, 0))
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let f = read_scaled(&args.f)?;
    let h = read_scaled(&args.h)?;
    let diff = identity_difference(&f, &h, args.a, args.b, args.c)?;
    if diff.is_zero() {
        return Ok(("identity=true\n".into(), 0));
    }
    let mut out = String::from("identity=false\ndifference support:\n");
    for (r, c, v) in diff.entries() {
        writeln!(out, "  [{r} | {c}] {v}").unwrap();
    }
    Ok((out, 1))
}

fn cmd_tensor_rank(args: &TensorArgs) -> Outcome {
    let f = MapDocument::parse(&read(&args.input)?)?.to_map()?;
    let e = tensor_rank_e(&f, args.c)?;
    let d = f.len() as u64;
    let c = args.c as u64;
    Ok((format!("e={e}\nbounds=[{},{}]\n", c * d, multiset_count(d, c)), 0))
}

fn cmd_gaps(args: &GapsArgs, format: Format) -> Outcome {
    let n = args.n.or(args.n_pos).ok_or_else(|| usage("gaps needs N"))?;
    if n == 0 {
        return Err(Error::NonPositive("n").into());
    }
    let gaps = gap_intervals(n);
    let out = match format {
        Format::Text => {
            let list: Vec<String> = gaps.iter().map(ToString::to_string).collect();
            format!("{}\n", list.join(" "))
        }
        Format::Csv => {
            let mut s = String::from("k,lo,hi,has_integers\n");
            for g in &gaps {
                writeln!(s, "{},{},{},{}", g.k, g.lo, g.hi, !g.has_no_integers()).unwrap();
            }
            s
        }
    };
    Ok((out, 0))
}

fn cmd_bounds(args: &BoundsArgs, format: Format) -> Outcome {
    let kind: BoundKind = args.id.parse()?;
    let mut values = BTreeMap::new();
    for kv in &args.values {
        let (k, v) = kv.split_once('=').ok_or_else(|| usage(format!("expected KEY=VALUE, got `{kv}`")))?;
        let v: u64 = v.parse().map_err(|_| usage(format!("`{v}` is not a non-negative integer")))?;
        values.insert(k.to_string(), v);
    }
    let known = kind.inputs();
    if let Some(k) = values.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(usage(format!("bound `{kind}` takes {}; unexpected `{k}`", known.join(", "))));
    }
    let rep = check_named(kind, &values)?;
    Ok((format!("{}\n", report_line(&rep, format)), 0))
}

fn cmd_primes(args: &PrimesArgs) -> Outcome {
    let n = args.n.or(args.n_pos).ok_or_else(|| usage("primes needs N"))?;
    let t = args.t.or(args.t_pos).ok_or_else(|| usage("primes needs T"))?;
    let a = prime_substitution(n, t)?;
    let t32 = u32::try_from(t).map_err(|_| usage("t is too large"))?;
    let list: Vec<String> = a.iter().map(ToString::to_string).collect();
    Ok((format!("{}\ninjective={}\n", list.join(" "), verify_injective(&a, n, t32)), 0))
}

fn cmd_divide(args: &DivideArgs) -> Outcome {
    let s = Document::parse(&read(&args.input)?)?.to_form()?;
    match divide_by_norm(&s)? {
        Some(r) => {
            if let Some(path) = &args.output {
                write(path, &FormDocument::from_form(&r).to_json())?;
            }
            Ok((format!("divisible=true\nquotient={r}\ninertia={}\n", inertia(&r)), 0))
        }
        None => Ok(("divisible=false\n".into(), 0)),
    }
}

fn diagonal(a: &HermitianForm) -> String {
    let c: Vec<String> = a.diagonal_coeffs_1d().iter().map(ToString::to_string).collect();
    format!("({})", c.join(", "))
}

fn cmd_example1(args: &Example1Args) -> Outcome {
    let text = args.lambda.as_deref().or(args.lambda_pos.as_deref()).unwrap_or("7");
    let lambda = parse_rational(text)?;
    let rep = lambda_family_report(&lambda);
    let mut out = String::new();
    writeln!(out, "lambda={lambda}").unwrap();
    writeln!(out, "R coefficients={} inertia={}", diagonal(&rep.r), rep.r_inertia).unwrap();
    writeln!(out, "(1+|z|^2)R coefficients={} inertia={}", diagonal(&rep.r_times_norm), inertia(&rep.r_times_norm))
        .unwrap();
    writeln!(out, "R^2 coefficients={} inertia={}", diagonal(&rep.r_squared), inertia(&rep.r_squared)).unwrap();
    writeln!(out, "R-1 inertia={}", rep.r_tail_inertia).unwrap();
    match &rep.h {
        Some(h) => writeln!(out, "m={}\nh={h}", h.len()).unwrap(),
        None => writeln!(out, "m=none ((1+|z|^2)R is not 1 + a sum of squares)").unwrap(),
    }
    match &rep.f {
        Some(f) => writeln!(out, "d={}\nf={f}", f.len()).unwrap(),
        None => writeln!(out, "d=none (R^2 is not 1 + a sum of squares)").unwrap(),
    }
    match rep.identity {
        Some(true) => writeln!(out, "identity (a,b,c)=(2,2,1): verified").unwrap(),
        Some(false) => writeln!(out, "identity (a,b,c)=(2,2,1): FAILED").unwrap(),
        None => writeln!(out, "identity (a,b,c)=(2,2,1): not applicable").unwrap(),
    }
    let code = if rep.identity == Some(false) { 1 } else { 0 };
    Ok((out, code))
}

fn cmd_ensemble(args: &EnsembleArgs, format: Format) -> Outcome {
    let config = EnsembleConfig {
        n: args.n,
        d_max: args.d_max,
        degree_max: args.degree_max,
        count: args.count,
        seed: args.seed,
        coefficient_height: args.height,
    };
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let rows = run_ensemble(&config, exec)?;
    let mut out = String::new();
    match format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}").unwrap();
            for r in &rows {
                writeln!(out, "{}", r.csv_line()).unwrap();
            }
        }
        Format::Text => {
            for (i, r) in rows.iter().enumerate() {
                let upper = r.upper.map_or("inf".to_string(), |u| u.to_string());
                writeln!(
                    out,
                    "#{i} n={} d={} degree={} m={} bounds=[{},{upper}] in_gap={}",
                    r.n, r.d, r.degree, r.m, r.lower, r.in_gap
                )
                .unwrap();
            }
            let inside = rows.iter().filter(|r| r.lower as usize <= r.m && r.upper.is_none_or(|u| r.m as u64 <= u));
            let gaps = rows.iter().filter(|r| r.in_gap).count();
            writeln!(out, "samples={} within_bounds={} in_gap={gaps}", rows.len(), inside.count()).unwrap();
        }
    }
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.unwrap_or(Format::Text);
    let result = match &cli.command {
        Command::Rank(a) => cmd_rank(a),
        Command::SolveH(a) => cmd_solve_h(a, format),
        Command::Verify(a) => cmd_verify(a),
        Command::TensorRank(a) => cmd_tensor_rank(a),
        Command::Gaps(a) => cmd_gaps(a, format),
        Command::Bounds(a) => cmd_bounds(a, format),
        Command::Primes(a) => cmd_primes(a),
        Command::Divide(a) => cmd_divide(a),
        Command::Example1(a) => cmd_example1(a),
        Command::Ensemble(a) => cmd_ensemble(a, cli.format.unwrap_or(Format::Csv)),
    };
    match result {
        Ok((text, code)) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
