//! Command-line surface for the spherical-ensemble library: sampling,
//! closed-form density and moment evaluation, spacing statistics, and the
//! validation suite.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage or configuration
//! error, 3 I/O error, 4 numeric/solver failure.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rayon::prelude::*;

use output::{Cell, Format, Report, Table};
use sphens::analytic::{build_density_model, eval_density, semicircle_density, AnalyticError};
use sphens::eigen::{eigenvalues, Spectrum};
use sphens::ensembles::{sample_batch, RngState};
use sphens::exact::{
    moment_gue, moment_semicircle, moment_spherical, parse_rational, rational_string,
    rational_to_f64,
};
use sphens::matrix::{Beta, EnsembleSpec};
use sphens::stats::{
    empirical_moments, extract_middle_spacings, histogram, integrate, integrate_open,
    ks_distance_two_sample, normalize_spacings,
};
use sphens::validate::{all_checks, ValidateOptions};

#[derive(Parser)]
#[command(
    name = "sphens",
    version,
    about = "Spherical (fixed Frobenius-norm) random matrix ensembles: samplers, exact moments, closed-form densities, spacing statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample matrices and emit sorted eigenvalue rows
    Sample(SampleArgs),
    /// Evaluate the closed-form spectral density on a grid (β = 2 only)
    Density(DensityArgs),
    /// Exact or Monte Carlo moment tables with the semicircle limit column
    Moments(MomentsArgs),
    /// Middle-bulk spacing statistics with optional GUE comparison
    Spacings(SpacingsArgs),
    /// Run the validation suite and print a pass/fail table
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Spherical,
    Gaussian,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    /// Dyson index: 1, 2, or 4
    #[arg(long, default_value = "2")]
    beta: u32,
    /// Matrix size N
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    dim: u32,
    #[arg(long, value_enum, default_value = "spherical")]
    kind: Kind,
    /// Frobenius radius r (spherical); defaults to √N
    #[arg(long)]
    radius: Option<f64>,
    /// Squared radius, an alternative to --radius
    #[arg(long)]
    radius_sq: Option<f64>,
    /// Gaussian scale q
    #[arg(long)]
    q: Option<f64>,
    #[arg(long, default_value = "1")]
    count: usize,
    /// 64-bit seed, or "auto" for entropy from the clock
    #[arg(long, default_value = "1")]
    seed: String,
    /// Sub-stream index of the first draw
    #[arg(long, default_value = "0")]
    stream: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct DensityArgs {
    /// Dyson index; the closed form exists for β = 2 only
    #[arg(long, default_value = "2")]
    beta: u32,
    /// Matrix size N ≥ 2
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    dim: u32,
    /// Frobenius radius r; defaults to √N
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    radius_sq: Option<f64>,
    /// Evaluation grid min:max:points; defaults to -r:r:401
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MomentMode {
    Exact,
    Mc,
}

#[derive(Args)]
struct MomentsArgs {
    #[arg(long, value_enum, default_value = "exact")]
    mode: MomentMode,
    #[arg(long, default_value = "2")]
    beta: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    dim: u32,
    #[arg(long, value_enum, default_value = "spherical")]
    kind: Kind,
    /// Radius as a decimal literal (read exactly in exact mode)
    #[arg(long)]
    radius: Option<String>,
    /// Squared radius as an integer or fraction "p/q" (keeps r = √N exact)
    #[arg(long)]
    radius_sq: Option<String>,
    /// Gaussian scale q, integer, fraction, or decimal
    #[arg(long)]
    q: Option<String>,
    #[arg(long, default_value = "8")]
    max_k: u32,
    /// Monte Carlo sample count (mc mode)
    #[arg(long, default_value = "10000")]
    count: usize,
    #[arg(long, default_value = "1")]
    seed: String,
    /// File of exact Gaussian moments "k p/q" per line, enabling exact
    /// spherical transfer for β ≠ 2
    #[arg(long)]
    gaussian_moments: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SpacingsArgs {
    #[arg(long, default_value = "2")]
    beta: u32,
    /// Matrix size N; must be at least --take
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    dim: u32,
    #[arg(long, value_enum, default_value = "spherical")]
    kind: Kind,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long, default_value = "500")]
    count: usize,
    #[arg(long, default_value = "1")]
    seed: String,
    /// Number of middle eigenvalues (odd); their consecutive differences
    /// are the spacings
    #[arg(long, default_value = "21")]
    take: usize,
    #[arg(long, default_value = "50")]
    bins: usize,
    /// Histogram range lo:hi
    #[arg(long, default_value = "0:4", allow_hyphen_values = true)]
    hist_range: String,
    /// Emit a two-sample KS distance against a Gaussian reference run
    #[arg(long)]
    compare: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ValidateArgs {
    /// Reduced Monte Carlo sizes with looser tolerances
    #[arg(long)]
    quick: bool,
    /// Full-size spacing comparison (2000 matrices per ensemble)
    #[arg(long)]
    full_spacings: bool,
    /// Directory containing the density golden records
    #[arg(long)]
    golden_dir: Option<PathBuf>,
}

enum CliError {
    Config(String),
    Io(String),
    Numeric(String),
    ValidationFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::ValidationFailed => 1,
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }

    fn message(&self) -> Option<&str> {
        match self {
            CliError::Config(m) | CliError::Io(m) | CliError::Numeric(m) => Some(m),
            CliError::ValidationFailed => None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(m) = e.message() {
                eprintln!("sphens: {m}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sample(args) => cmd_sample(args),
        Command::Density(args) => cmd_density(args),
        Command::Moments(args) => cmd_moments(args),
        Command::Spacings(args) => cmd_spacings(args),
        Command::Validate(args) => cmd_validate(args),
    }
}

fn parse_beta(v: u32) -> Result<Beta, CliError> {
    Beta::from_value(v).ok_or_else(|| CliError::Config(format!("--beta must be 1, 2, or 4, got {v}")))
}

fn parse_seed(s: &str) -> Result<u64, CliError> {
    if s == "auto" {
        let nanos = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0);
        return Ok(nanos ^ 0x9E37_79B9_7F4A_7C15);
    }
    s.parse::<u64>().map_err(|_| CliError::Config(format!("--seed must be a u64 or \"auto\", got `{s}`")))
}

fn radius_from(radius: Option<f64>, radius_sq: Option<f64>, dim: u32) -> Result<f64, CliError> {
    match (radius, radius_sq) {
        (Some(_), Some(_)) => {
            Err(CliError::Config("--radius and --radius-sq are mutually exclusive".into()))
        }
        (Some(r), None) if r > 0.0 && r.is_finite() => Ok(r),
        (None, Some(r2)) if r2 > 0.0 && r2.is_finite() => Ok(r2.sqrt()),
        (None, None) => Ok((dim as f64).sqrt()),
        _ => Err(CliError::Config("radius must be positive and finite".into())),
    }
}

/// Radius flags apply to spherical runs and q to Gaussian runs; an
/// explicitly set flag for the other kind is a configuration error.
fn build_spec(
    kind: Kind,
    beta: Beta,
    dim: u32,
    radius: Option<f64>,
    radius_sq: Option<f64>,
    q: Option<f64>,
    default_q: f64,
) -> Result<EnsembleSpec, CliError> {
    match kind {
        Kind::Spherical => {
            if q.is_some() {
                return Err(CliError::Config("--q applies to --kind gaussian only".into()));
            }
            let r = radius_from(radius, radius_sq, dim)?;
            EnsembleSpec::spherical(beta, dim as usize, r)
                .map_err(|e| CliError::Config(e.to_string()))
        }
        Kind::Gaussian => {
            if radius.is_some() || radius_sq.is_some() {
                return Err(CliError::Config(
                    "--radius/--radius-sq apply to --kind spherical only".into(),
                ));
            }
            EnsembleSpec::gaussian(beta, dim as usize, q.unwrap_or(default_q))
                .map_err(|e| CliError::Config(e.to_string()))
        }
    }
}

fn solve_batch(spec: &EnsembleSpec, count: usize, seed: u64, stream: u64) -> Result<Vec<Spectrum>, CliError> {
    let batch = sample_batch(spec, count, RngState::with_stream(seed, stream))
        .map_err(|e| CliError::Config(e.to_string()))?;
    batch
        .par_iter()
        .map(|a| eigenvalues(a).map_err(|e| CliError::Numeric(e.to_string())))
        .collect()
}

fn write_report(report: &Report, out: &OutputArgs) -> Result<(), CliError> {
    report.write(out.format, &out.output).map_err(|e| CliError::Io(e.to_string()))
}

fn describe_kind(spec: &EnsembleSpec, report: &mut Report) {
    match spec.kind {
        sphens::matrix::EnsembleKind::Spherical { radius } => {
            report.meta("kind", "spherical");
            report.meta("radius", radius);
        }
        sphens::matrix::EnsembleKind::Gaussian { q } => {
            report.meta("kind", "gaussian");
            report.meta("q", q);
        }
    }
}

fn cmd_sample(args: SampleArgs) -> Result<(), CliError> {
    let beta = parse_beta(args.beta)?;
    let seed = parse_seed(&args.seed)?;
    let spec = build_spec(args.kind, beta, args.dim, args.radius, args.radius_sq, args.q, 1.0)?;
    let spectra = solve_batch(&spec, args.count, seed, args.stream)?;

    let mut report = Report::new("sample");
    report.meta("beta", beta);
    report.meta("dim", args.dim);
    describe_kind(&spec, &mut report);
    report.meta("count", args.count);
    report.meta("seed", seed);
    report.meta("stream", args.stream);

    let mut columns = vec!["index".to_string()];
    columns.extend((1..=args.dim).map(|i| format!("lambda_{i}")));
    let rows = spectra
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut row = vec![Cell::Int(i as i64)];
            row.extend(s.values.iter().map(|&v| Cell::Float(v)));
            row
        })
        .collect();
    report.tables.push(Table { name: "eigenvalues".into(), columns, rows });
    write_report(&report, &args.out)
}

fn parse_grid(s: &str) -> Result<(f64, f64, usize), CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Config(format!("--grid must be min:max:points, got `{s}`")));
    }
    let min: f64 = parts[0].parse().map_err(|_| CliError::Config("bad grid min".into()))?;
    let max: f64 = parts[1].parse().map_err(|_| CliError::Config("bad grid max".into()))?;
    let points: usize = parts[2].parse().map_err(|_| CliError::Config("bad grid points".into()))?;
    if !(min < max) || points < 2 {
        return Err(CliError::Config("grid needs min < max and at least 2 points".into()));
    }
    Ok((min, max, points))
}

fn cmd_density(args: DensityArgs) -> Result<(), CliError> {
    if args.beta != 2 {
        return Err(CliError::Config(format!(
            "the closed-form density exists for β = 2 only, got β = {}",
            args.beta
        )));
    }
    let radius = radius_from(args.radius, args.radius_sq, args.dim)?;
    let model = build_density_model(args.dim, radius).map_err(|e| match e {
        AnalyticError::InvalidDimension(_) => {
            CliError::Config("density requires --dim at least 2".into())
        }
        other => CliError::Numeric(other.to_string()),
    })?;
    let (lo, hi, points) = match &args.grid {
        Some(g) => parse_grid(g)?,
        None => (-radius, radius, 401),
    };

    let mut report = Report::new("density");
    report.meta("beta", 2);
    report.meta("dim", args.dim);
    report.meta("radius", radius);
    report.meta("grid", format!("{lo}:{hi}:{points}"));
    report.meta("exponent", format!("{}/2", model.exponent.0));
    report.meta("pi_factor", model.pi_factor);
    let coeffs: Vec<String> = model.p.coeffs().iter().map(rational_string).collect();
    report.meta("p_coeffs", coeffs.join("|"));
    report.meta("l1_semicircle_gap", l1_gap_to_scaled_semicircle(&model, radius));

    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let x = lo + (hi - lo) * i as f64 / (points - 1) as f64;
        let (value, flag) = match eval_density(&model, x) {
            Ok(f) => (Cell::Float(f), ""),
            Err(AnalyticError::BoundaryDivergence) => (Cell::Str("inf".into()), "divergent"),
            Err(e) => return Err(CliError::Numeric(e.to_string())),
        };
        rows.push(vec![Cell::Float(x), value, Cell::Str(flag.into())]);
    }
    report.tables.push(Table {
        name: "density".into(),
        columns: vec!["x".into(), "f".into(), "flag".into()],
        rows,
    });
    write_report(&report, &args.out)
}

/// L¹ distance between the model density and the semicircle rescaled to the
/// model's variance, reported in the density metadata.
fn l1_gap_to_scaled_semicircle(model: &sphens::analytic::DensityModel, radius: f64) -> f64 {
    let var = match if model.dim == 2 {
        integrate_open(|x| x * x * eval_density(model, x).unwrap_or(0.0), -radius, radius, 1e-9)
    } else {
        integrate(|x| x * x * eval_density(model, x).unwrap_or(0.0), -radius, radius, 1e-9)
    } {
        Ok(v) if v > 0.0 => v,
        _ => return f64::NAN,
    };
    let s = var.sqrt();
    let gap = |x: f64| {
        (eval_density(model, x).unwrap_or(0.0) - semicircle_density(x / s) / s).abs()
    };
    let edge = 2.0 * s;
    let hi = radius.max(edge);
    let mut total = 0.0;
    let quad = |f: &dyn Fn(f64) -> f64, a: f64, b: f64| {
        if model.dim == 2 {
            integrate_open(f, a, b, 1e-7).unwrap_or(f64::NAN)
        } else {
            integrate(f, a, b, 1e-7).unwrap_or(f64::NAN)
        }
    };
    if edge < hi {
        total += quad(&gap, -hi, -edge) + quad(&gap, edge, hi);
        total += quad(&gap, -edge, edge);
    } else {
        total += quad(&gap, -hi, hi);
    }
    total
}

fn cmd_moments(args: MomentsArgs) -> Result<(), CliError> {
    let beta = parse_beta(args.beta)?;
    let mut report = Report::new("moments");
    report.meta("beta", beta);
    report.meta("dim", args.dim);
    report.meta("max_k", args.max_k);

    let columns_exact =
        vec!["k".to_string(), "moment".into(), "moment_float".into(), "semicircle_limit".into()];
    match args.mode {
        MomentMode::Exact => {
            report.meta("mode", "exact");
            let rows = exact_moment_rows(&args, beta, &mut report)?;
            report.tables.push(Table { name: "moments".into(), columns: columns_exact, rows });
        }
        MomentMode::Mc => {
            report.meta("mode", "mc");
            let seed = parse_seed(&args.seed)?;
            let radius = args
                .radius
                .as_ref()
                .map(|r| r.parse::<f64>().map_err(|_| CliError::Config("bad --radius".into())))
                .transpose()?;
            let radius_sq = args
                .radius_sq
                .as_ref()
                .map(|r2| {
                    parse_rational(r2)
                        .map(|r| rational_to_f64(&r))
                        .ok_or_else(|| CliError::Config("bad --radius-sq".into()))
                })
                .transpose()?;
            let q = args
                .q
                .as_ref()
                .map(|s| s.parse::<f64>().map_err(|_| CliError::Config("bad --q".into())))
                .transpose()?;
            let spec =
                build_spec(args.kind, beta, args.dim, radius, radius_sq, q, args.dim as f64)?;
            describe_kind(&spec, &mut report);
            report.meta("count", args.count);
            report.meta("seed", seed);
            let spectra = solve_batch(&spec, args.count, seed, 0)?;
            let em = empirical_moments(&spectra, args.max_k as usize)
                .map_err(|e| CliError::Numeric(e.to_string()))?;
            let rows = (0..=args.max_k as usize)
                .map(|k| {
                    vec![
                        Cell::Int(k as i64),
                        Cell::Float(em.m[k]),
                        Cell::Float(em.se[k]),
                        Cell::Float(rational_to_f64(&moment_semicircle(k as u32))),
                    ]
                })
                .collect();
            report.tables.push(Table {
                name: "moments".into(),
                columns: vec!["k".into(), "moment".into(), "se".into(), "semicircle_limit".into()],
                rows,
            });
        }
    }
    write_report(&report, &args.out)
}

fn exact_moment_rows(
    args: &MomentsArgs,
    beta: Beta,
    report: &mut Report,
) -> Result<Vec<Vec<Cell>>, CliError> {
    let q: BigRational = match &args.q {
        Some(s) => parse_rational(s).ok_or_else(|| CliError::Config("bad --q".into()))?,
        None => BigRational::from_integer(1.into()),
    };
    if args.kind == Kind::Gaussian && (args.radius.is_some() || args.radius_sq.is_some()) {
        return Err(CliError::Config("--radius/--radius-sq apply to --kind spherical only".into()));
    }
    let moment_at = |k: u32| -> Result<BigRational, CliError> {
        match args.kind {
            Kind::Gaussian => {
                if beta != Beta::Two {
                    return Err(CliError::Config(
                        "exact Gaussian moments exist for β = 2 only".into(),
                    ));
                }
                Ok(moment_gue(k, args.dim, &q))
            }
            Kind::Spherical => {
                let r_sq: BigRational = match (&args.radius, &args.radius_sq) {
                    (None, Some(s)) => parse_rational(s)
                        .ok_or_else(|| CliError::Config("bad --radius-sq".into()))?,
                    (Some(s), None) => {
                        let r = parse_rational(s)
                            .ok_or_else(|| CliError::Config("bad --radius".into()))?;
                        &r * &r
                    }
                    (None, None) => BigRational::from_integer((args.dim as i64).into()),
                    _ => {
                        return Err(CliError::Config(
                            "--radius and --radius-sq are mutually exclusive".into(),
                        ))
                    }
                };
                let gaussian = gaussian_moment_for(k, args, beta, &q)?;
                moment_spherical(k, beta, args.dim, &r_sq, &gaussian, &q)
                    .map_err(|e| CliError::Numeric(e.to_string()))
            }
        }
    };
    report.meta("kind", match args.kind {
        Kind::Gaussian => "gaussian",
        Kind::Spherical => "spherical",
    });
    if args.kind == Kind::Spherical {
        let r_sq_str = args
            .radius_sq
            .clone()
            .unwrap_or_else(|| args.radius.clone().unwrap_or_else(|| format!("{}", args.dim)));
        report.meta("radius_sq_or_radius", r_sq_str);
    } else {
        report.meta("q", rational_string(&q));
    }

    (0..=args.max_k)
        .map(|k| {
            let m = moment_at(k)?;
            Ok(vec![
                Cell::Int(k as i64),
                Cell::Str(rational_string(&m)),
                Cell::Float(rational_to_f64(&m)),
                Cell::Str(rational_string(&moment_semicircle(k))),
            ])
        })
        .collect()
}

/// Gaussian moments feeding the exact spherical transfer: the closed form
/// for β = 2, otherwise values supplied via --gaussian-moments.
fn gaussian_moment_for(
    k: u32,
    args: &MomentsArgs,
    beta: Beta,
    q: &BigRational,
) -> Result<BigRational, CliError> {
    if beta == Beta::Two {
        return Ok(moment_gue(k, args.dim, q));
    }
    let path = args.gaussian_moments.as_ref().ok_or_else(|| {
        CliError::Config(
            "exact spherical moments for β ≠ 2 need --gaussian-moments FILE (lines: `k p/q`)"
                .into(),
        )
    })?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(e.to_string()))?;
    if k % 2 == 1 {
        return Ok(BigRational::from_integer(0.into()));
    }
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let kk: u32 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| CliError::Config(format!("bad moment line `{line}`")))?;
        if kk == k {
            let val = parts
                .next()
                .and_then(parse_rational)
                .ok_or_else(|| CliError::Config(format!("bad moment line `{line}`")))?;
            return Ok(val);
        }
    }
    Err(CliError::Config(format!("--gaussian-moments file lacks k = {k}")))
}

fn cmd_spacings(args: SpacingsArgs) -> Result<(), CliError> {
    let beta = parse_beta(args.beta)?;
    let seed = parse_seed(&args.seed)?;
    if args.take < 2 || args.take % 2 == 0 {
        return Err(CliError::Config("--take must be an odd count of at least 3".into()));
    }
    if (args.dim as usize) < args.take {
        return Err(CliError::Config(format!(
            "--dim must be at least --take ({}), got {}",
            args.take, args.dim
        )));
    }
    let spec =
        build_spec(args.kind, beta, args.dim, args.radius, None, args.q, args.dim as f64)?;
    let (hist_lo, hist_hi) = {
        let parts: Vec<&str> = args.hist_range.split(':').collect();
        if parts.len() != 2 {
            return Err(CliError::Config("--hist-range must be lo:hi".into()));
        }
        let lo: f64 = parts[0].parse().map_err(|_| CliError::Config("bad hist lo".into()))?;
        let hi: f64 = parts[1].parse().map_err(|_| CliError::Config("bad hist hi".into()))?;
        (lo, hi)
    };

    let pooled = pooled_spacings(&spec, args.count, seed, args.take)?;
    let sample = normalize_spacings(&pooled).map_err(|e| CliError::Numeric(e.to_string()))?;

    let mut report = Report::new("spacings");
    report.meta("beta", beta);
    report.meta("dim", args.dim);
    describe_kind(&spec, &mut report);
    report.meta("count", args.count);
    report.meta("seed", seed);
    report.meta("take", args.take);
    report.meta("spacings_per_matrix", args.take - 1);
    report.meta("unfolding", "pooled-mean-normalized");
    report.meta("degenerate", sample.degenerate);

    if let Some(target) = &args.compare {
        if target != "gue" {
            return Err(CliError::Config(format!("--compare supports only `gue`, got `{target}`")));
        }
        // Reference run: Gaussian β = 2 at q = N, disjoint sub-streams.
        let gue_spec = EnsembleSpec::gaussian(Beta::Two, args.dim as usize, args.dim as f64)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let gue_pooled = pooled_spacings_with_stream(
            &gue_spec,
            args.count,
            seed,
            args.count as u64,
            args.take,
        )?;
        let gue = normalize_spacings(&gue_pooled).map_err(|e| CliError::Numeric(e.to_string()))?;
        let ks = ks_distance_two_sample(&sample.spacings, &gue.spacings);
        report.meta("ks_vs_gue", ks);
    }

    let mut rows = Vec::with_capacity(sample.spacings.len());
    for (i, s) in sample.spacings.iter().enumerate() {
        rows.push(vec![Cell::Int(i as i64), Cell::Float(*s)]);
    }
    report.tables.push(Table {
        name: "spacings".into(),
        columns: vec!["index".into(), "spacing".into()],
        rows,
    });

    let h = histogram(&sample.spacings, hist_lo, hist_hi, args.bins);
    let density = h.density();
    let width = h.bin_width();
    let hist_rows = h
        .counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            vec![
                Cell::Float(hist_lo + i as f64 * width),
                Cell::Float(hist_lo + (i + 1) as f64 * width),
                Cell::Int(c as i64),
                Cell::Float(density[i]),
            ]
        })
        .collect();
    report.tables.push(Table {
        name: "histogram".into(),
        columns: vec!["bin_lo".into(), "bin_hi".into(), "count".into(), "density".into()],
        rows: hist_rows,
    });
    write_report(&report, &args.out)
}

fn pooled_spacings(
    spec: &EnsembleSpec,
    count: usize,
    seed: u64,
    take: usize,
) -> Result<Vec<f64>, CliError> {
    pooled_spacings_with_stream(spec, count, seed, 0, take)
}

fn pooled_spacings_with_stream(
    spec: &EnsembleSpec,
    count: usize,
    seed: u64,
    stream: u64,
    take: usize,
) -> Result<Vec<f64>, CliError> {
    let spectra = solve_batch(spec, count, seed, stream)?;
    let mut pooled = Vec::with_capacity(count * (take - 1));
    for s in &spectra {
        let sp = extract_middle_spacings(s, take).map_err(|e| CliError::Config(e.to_string()))?;
        pooled.extend(sp);
    }
    Ok(pooled)
}

fn cmd_validate(args: ValidateArgs) -> Result<(), CliError> {
    let opts = ValidateOptions {
        quick: args.quick,
        full_spacings: args.full_spacings,
        golden_dir: args.golden_dir,
    };
    let results = all_checks(&opts);
    let mut all_ok = true;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("[{status}] {} {}", r.id, r.name);
        for line in r.detail.lines() {
            println!("    {line}");
        }
        all_ok &= r.passed;
    }
    let (passed, total) = (results.iter().filter(|r| r.passed).count(), results.len());
    println!("{passed}/{total} checks passed");
    if all_ok {
        Ok(())
    } else {
        Err(CliError::ValidationFailed)
    }
}
