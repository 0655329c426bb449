//! Command-line front end: spectra, eigenfunction tables, family
//! classification and the verification suites, with CSV or JSON output.

mod output;

use clap::{Args, Parser, Subcommand};
use darboux::darboux::{
    classify, eigenfunction, infinite_eigenfunction, infinite_spectrum, spectrum, Family,
    FamilyKind, LameProblem, Rational,
};
use darboux::specfun::Modulus;
use darboux::verify::{run as run_suites, VerifyConfig, SUITE_NAMES};
use output::{Format, Row, Table};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "darboux",
    version,
    about = "Quasi-exactly-solvable spectra and eigenfunctions of the associated Lame equation"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Eigenvalues of the catalogued series families at (l, m, k2)
    Spectrum(SpectrumArgs),
    /// Tabulate one eigenfunction on a grid
    Eigenfunction(EigenfunctionArgs),
    /// List every admissible family at (l, m)
    Classify(ProblemArgs),
    /// Run the verification suites
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct ProblemArgs {
    /// Strength parameter l as a rational, e.g. 1/2 or -2
    #[arg(long, allow_hyphen_values = true)]
    l: String,
    /// Strength parameter m as a rational
    #[arg(long, allow_hyphen_values = true)]
    m: String,
    /// Squared modulus in (0, 1)
    #[arg(long)]
    k2: f64,
    /// Output path (stdout when absent)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Output format
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    prob: ProblemArgs,
    /// Restrict to one family (e.g. Psi_tilde_5, psi_hyp_1, Phi_2)
    #[arg(long)]
    family: Option<String>,
    /// Scan window for infinite-series eigenvalues, as lo:hi
    #[arg(long, default_value = "0:40")]
    window: String,
    /// Number of infinite-series eigenvalues per family
    #[arg(long, default_value_t = 1)]
    count: usize,
}

#[derive(Args)]
struct EigenfunctionArgs {
    #[command(flatten)]
    prob: ProblemArgs,
    /// Family name
    #[arg(long)]
    family: String,
    /// Eigenvalue; may be omitted in favor of --index
    #[arg(long, allow_negative_numbers = true)]
    energy: Option<f64>,
    /// Index into the computed spectrum (ascending)
    #[arg(long)]
    index: Option<usize>,
    /// Grid umin:umax:points; bounds accept a K suffix, e.g. 0:2K:200
    #[arg(long, default_value = "0:2K:101", allow_hyphen_values = true)]
    grid: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only suites whose name starts with this prefix
    #[arg(long)]
    only: Option<String>,
    /// Tolerance override NAME=VALUE; repeatable
    #[arg(long = "tol")]
    tolerances: Vec<String>,
}

enum CliError {
    Config(String),
    Solver(String),
    Verification,
}

impl CliError {
    fn config<E: std::fmt::Display>(e: E) -> CliError {
        CliError::Config(e.to_string())
    }

    fn solver<E: std::fmt::Display>(e: E) -> CliError {
        CliError::Solver(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Spectrum(args) => cmd_spectrum(args),
        Cmd::Eigenfunction(args) => cmd_eigenfunction(args),
        Cmd::Classify(args) => cmd_classify(args),
        Cmd::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification) => ExitCode::from(1),
        Err(CliError::Config(msg)) => {
            eprintln!("configuration error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Solver(msg)) => {
            eprintln!("solver error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn parse_problem(args: &ProblemArgs) -> Result<LameProblem, CliError> {
    let l = Rational::from_str(&args.l).map_err(CliError::config)?;
    let m = Rational::from_str(&args.m).map_err(CliError::config)?;
    let k2 = Modulus::new(args.k2).map_err(CliError::config)?;
    Ok(LameProblem::new(l, m, k2))
}

fn spectrum_rows(
    prob: &LameProblem,
    family: Option<&Family>,
    window: (f64, f64),
    count: usize,
) -> Result<Vec<Row>, CliError> {
    let listing = classify(prob).map_err(CliError::solver)?;
    let mut rows = Vec::new();
    for spec in &listing.finite {
        if let Some(f) = family {
            if *f != spec.family {
                continue;
            }
        }
        let s = spectrum(prob, spec).map_err(CliError::solver)?;
        for (e, r) in s.eigenvalues.iter().zip(s.residuals.iter()) {
            rows.push(Row::spectrum(spec, *e, *r));
        }
    }
    for &index in &listing.infinite {
        let requested = match family {
            Some(f) if f.kind == FamilyKind::Infinite => f.index == index,
            _ => false,
        };
        if !requested {
            continue;
        }
        let energies =
            infinite_spectrum(prob, index, window, count).map_err(CliError::solver)?;
        for e in energies {
            let f = infinite_eigenfunction(prob, index, e).map_err(CliError::solver)?;
            let residual = f.residual(0.37 * prob.quarter_period()).map_err(CliError::solver)?;
            rows.push(Row::spectrum(&f.spec, e, residual));
        }
    }
    if rows.is_empty() {
        return Err(CliError::Solver("no eigenvalues for the requested selection".into()));
    }
    Ok(rows)
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), CliError> {
    let prob = parse_problem(&args.prob)?;
    let family = match &args.family {
        Some(name) => Some(Family::from_str(name).map_err(CliError::config)?),
        None => None,
    };
    let window = parse_window(&args.window)?;
    let rows = spectrum_rows(&prob, family.as_ref(), window, args.count)?;
    Table::new("spectrum", Row::SPECTRUM_HEADER, rows)
        .write(args.prob.format, args.prob.out.as_deref())
        .map_err(CliError::solver)
}

fn cmd_eigenfunction(args: EigenfunctionArgs) -> Result<(), CliError> {
    let prob = parse_problem(&args.prob)?;
    let family = Family::from_str(&args.family).map_err(CliError::config)?;
    let (umin, umax, points) = parse_grid(&args.grid, prob.quarter_period())?;
    let f = if family.kind == FamilyKind::Infinite {
        let energy = match (args.energy, args.index) {
            (Some(e), _) => e,
            (None, idx) => {
                let take = idx.unwrap_or(0) + 1;
                let es = infinite_spectrum(&prob, family.index, (0.0, 40.0), take)
                    .map_err(CliError::solver)?;
                *es.get(idx.unwrap_or(0))
                    .ok_or_else(|| CliError::Solver("spectrum index out of range".into()))?
            }
        };
        infinite_eigenfunction(&prob, family.index, energy).map_err(CliError::solver)?
    } else {
        let listing = classify(&prob).map_err(CliError::solver)?;
        let spec = listing
            .finite
            .iter()
            .find(|s| s.family == family)
            .ok_or_else(|| CliError::Solver(format!("family {family} not admissible here")))?;
        let s = spectrum(&prob, spec).map_err(CliError::solver)?;
        let energy = match (args.energy, args.index) {
            (Some(e), _) => e,
            (None, Some(i)) => *s
                .eigenvalues
                .get(i)
                .ok_or_else(|| CliError::Solver("spectrum index out of range".into()))?,
            (None, None) => s.eigenvalues[0],
        };
        eigenfunction(&prob, spec, energy).map_err(CliError::solver)?
    };
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let u = umin + (umax - umin) * i as f64 / (points - 1) as f64;
        let psi = f.eval(u).map_err(CliError::solver)?;
        let residual = f.residual(u).map_err(CliError::solver)?;
        rows.push(Row::eigenfunction(u, psi, residual));
    }
    Table::new("eigenfunction", Row::EIGENFUNCTION_HEADER, rows)
        .write(args.prob.format, args.prob.out.as_deref())
        .map_err(CliError::solver)
}

fn cmd_classify(args: ProblemArgs) -> Result<(), CliError> {
    let prob = parse_problem(&args)?;
    let listing = classify(&prob).map_err(CliError::solver)?;
    let mut rows: Vec<Row> = listing.finite.iter().map(Row::classification).collect();
    for index in listing.infinite {
        rows.push(Row::infinite_family(index));
    }
    Table::new("classify", Row::CLASSIFY_HEADER, rows)
        .write(args.format, args.out.as_deref())
        .map_err(CliError::solver)
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    if let Some(only) = &args.only {
        if !SUITE_NAMES.iter().any(|n| n.starts_with(only.as_str())) {
            return Err(CliError::Config(format!(
                "no suite matches '{only}'; available: {}",
                SUITE_NAMES.join(", ")
            )));
        }
    }
    let mut cfg = VerifyConfig::default();
    for spec in &args.tolerances {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("expected NAME=VALUE, got {spec}")))?;
        let value: f64 = value
            .parse()
            .map_err(|_| CliError::Config(format!("bad tolerance value in {spec}")))?;
        cfg.tolerances.insert(name.to_string(), value);
    }
    let results = run_suites(&cfg, args.only.as_deref());
    let mut all_ok = true;
    for r in &results {
        println!(
            "{} {:<14} ({:>6} ms) {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.millis,
            r.detail
        );
        all_ok &= r.passed;
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}

/// Parses a grid bound that may carry a K suffix (quarter periods).
fn parse_bound(s: &str, quarter: f64) -> Result<f64, CliError> {
    let s = s.trim();
    if let Some(head) = s.strip_suffix('K') {
        let factor: f64 = if head.is_empty() {
            1.0
        } else {
            head.parse().map_err(|_| CliError::Config(format!("bad grid bound {s}")))?
        };
        Ok(factor * quarter)
    } else {
        s.parse().map_err(|_| CliError::Config(format!("bad grid bound {s}")))
    }
}

fn parse_grid(s: &str, quarter: f64) -> Result<(f64, f64, usize), CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Config(format!("grid must be umin:umax:points, got {s}")));
    }
    let umin = parse_bound(parts[0], quarter)?;
    let umax = parse_bound(parts[1], quarter)?;
    let points: usize =
        parts[2].parse().map_err(|_| CliError::Config(format!("bad point count in {s}")))?;
    if points < 2 {
        return Err(CliError::Config("grid points must be at least 2".into()));
    }
    Ok((umin, umax, points))
}

fn parse_window(s: &str) -> Result<(f64, f64), CliError> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| CliError::Config(format!("window must be lo:hi, got {s}")))?;
    let lo: f64 = lo.parse().map_err(|_| CliError::Config("bad window bound".into()))?;
    let hi: f64 = hi.parse().map_err(|_| CliError::Config("bad window bound".into()))?;
    if hi <= lo {
        return Err(CliError::Config("window must be increasing".into()));
    }
    Ok((lo, hi))
}
