//! `stationary`: validate, certify, solve, simulate, and generate finite
//! Markov chains from matrix files.
//!
//! Every command prints one JSON report on standard output and one JSON
//! diagnostic on standard error when it fails. Exit codes: 0 success,
//! 2 validation failure, 3 reducible chain, 4 solver failure, 5 I/O or
//! parse error.

mod matrix_file;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use stationary_core::{
    cesaro_solve, default_max_k, empirical_distribution, full_certificate, generate,
    is_irreducible, sample_trajectory, solve_stationary_direct, Error, FixtureKind, FixtureSpec,
    StochasticMatrix, DEFAULT_COUPLING, DEFAULT_EPS, DEFAULT_ROW_SUM_TOL, DEFAULT_SEED,
};

use matrix_file::{read_rows, write_rows, FileError};
use report::{to_json, MethodReport, RunReport};

#[derive(Parser)]
#[command(
    name = "stationary",
    version,
    about = "Stationary distributions of finite Markov chains: validate, certify, solve, simulate."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Kernel extraction from the transposed fixed-point equation.
    Direct,
    /// Running averages of the power walk, stopped by residual.
    Cesaro,
    /// Run both and report their distance.
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file holds a square, nonnegative, row-stochastic matrix.
    Validate {
        file: PathBuf,
        /// Largest acceptable deviation of a row sum from 1.
        #[arg(long, default_value_t = DEFAULT_ROW_SUM_TOL)]
        tol: f64,
        /// Rescale rows that pass the tolerance so they sum to 1 exactly.
        #[arg(long)]
        renormalize: bool,
    },
    /// Certify irreducibility or exhibit an unreachable pair of states.
    Check {
        file: PathBuf,
        /// Tabulate, for every pair (i, j), the smallest k with P^k(i,j) > 0.
        #[arg(long)]
        full: bool,
    },
    /// Compute the stationary distribution.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
        /// Residual target for the averaging route.
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        /// Iteration cap for the averaging route. The default cap is high
        /// enough that the guaranteed 2/k defect decay reaches eps.
        #[arg(long)]
        max_iter: Option<u64>,
    },
    /// Sample a seeded trajectory and report occupation frequencies.
    Simulate {
        file: PathBuf,
        /// Number of transitions to sample.
        #[arg(long)]
        steps: u64,
        /// PRNG seed. Falls back to STATIONARY_SEED from the environment,
        /// then to the built-in default.
        #[arg(long)]
        seed: Option<u64>,
        /// State the walk starts in.
        #[arg(long, default_value_t = 0)]
        start: usize,
        /// Also solve directly and report the distance to the empirical law.
        #[arg(long)]
        compare: bool,
    },
    /// Write a seeded test matrix to a file (format chosen by extension).
    Generate {
        /// Family to draw from: random_dense, random_sparse_irreducible,
        /// cycle, doubly_stochastic, reducible_blocks, near_reducible.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Cross-block mass; only the near_reducible family reads it.
        #[arg(long)]
        coupling: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Diagnostic printed on standard error when a command fails.
#[derive(Serialize)]
struct Diagnostic {
    command: &'static str,
    error: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    kernel_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<(usize, usize)>,
}

struct Failure {
    code: u8,
    diagnostic: Diagnostic,
}

impl Failure {
    fn from_core(command: &'static str, err: &Error) -> Self {
        let (code, kind) = classify(err);
        let kernel_dimension = match err {
            Error::NotUniqueStationary { kernel_dimension } => Some(*kernel_dimension),
            _ => None,
        };
        Failure {
            code,
            diagnostic: Diagnostic {
                command,
                error: kind,
                message: err.to_string(),
                kernel_dimension,
                witness: None,
            },
        }
    }

    fn from_file(command: &'static str, err: FileError) -> Self {
        Failure {
            code: 5,
            diagnostic: Diagnostic {
                command,
                error: err.kind,
                message: err.message,
                kernel_dimension: None,
                witness: None,
            },
        }
    }

    fn usage(command: &'static str, message: String) -> Self {
        Failure {
            code: 2,
            diagnostic: Diagnostic {
                command,
                error: "invalid_argument",
                message,
                kernel_dimension: None,
                witness: None,
            },
        }
    }
}

fn classify(err: &Error) -> (u8, &'static str) {
    match err {
        Error::NotSquare => (2, "not_square"),
        Error::NegativeEntry { .. } => (2, "negative_entry"),
        Error::RowSumViolation { .. } => (2, "row_sum_violation"),
        Error::NegativeVectorEntry { .. } => (2, "negative_vector_entry"),
        Error::VectorSumViolation { .. } => (2, "vector_sum_violation"),
        Error::DimensionMismatch { .. } => (2, "dimension_mismatch"),
        Error::IndexOutOfRange { .. } => (2, "index_out_of_range"),
        Error::InvalidSpec { .. } => (2, "invalid_spec"),
        Error::NotUniqueStationary { .. } => (3, "not_unique_stationary"),
        Error::NonPositiveEntry { .. } => (4, "non_positive_entry"),
        Error::MaxIterationsExceeded { .. } => (4, "max_iterations_exceeded"),
    }
}

fn load(
    command: &'static str,
    path: &Path,
    tol: f64,
    renormalize: bool,
) -> Result<StochasticMatrix, Failure> {
    let rows = read_rows(path).map_err(|e| Failure::from_file(command, e))?;
    StochasticMatrix::validate(&rows, tol, renormalize)
        .map_err(|e| Failure::from_core(command, &e))
}

fn resolve_seed(command: &'static str, explicit: Option<u64>) -> Result<u64, Failure> {
    if let Some(seed) = explicit {
        return Ok(seed);
    }
    match std::env::var("STATIONARY_SEED") {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| {
            Failure::usage(
                command,
                format!("STATIONARY_SEED must be an unsigned integer, got {text:?}"),
            )
        }),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn cmd_validate(file: &Path, tol: f64, renormalize: bool) -> Result<(RunReport, u8), Failure> {
    let p = load("validate", file, tol, renormalize)?;
    let mut report = RunReport::new("validate");
    report.matrix_file = Some(file.display().to_string());
    report.n = Some(p.n());
    if renormalize {
        report.renormalized = Some(true);
    }
    Ok((report, 0))
}

fn cmd_check(file: &Path, full: bool) -> Result<(RunReport, u8), Failure> {
    let p = load("check", file, DEFAULT_ROW_SUM_TOL, false)?;
    let cert = if full {
        full_certificate(&p)
    } else {
        is_irreducible(&p)
    };
    let mut report = RunReport::new("check");
    report.matrix_file = Some(file.display().to_string());
    report.n = Some(p.n());
    report.irreducible = Some(cert.verdict());
    report.witness = cert.witness();
    if full && cert.verdict() {
        let n = p.n();
        report.min_powers = Some(
            (0..n)
                .map(|i| (0..n).map(|j| cert.min_power(i, j).unwrap()).collect())
                .collect(),
        );
    }
    let code = if cert.verdict() { 0 } else { 3 };
    Ok((report, code))
}

fn cmd_solve(
    file: &Path,
    method: Method,
    eps: f64,
    max_iter: Option<u64>,
) -> Result<(RunReport, u8), Failure> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Failure::usage(
            "solve",
            format!("eps must be a positive finite number, got {eps}"),
        ));
    }
    let cap = max_iter.unwrap_or_else(|| default_max_k(eps));
    if cap == 0 {
        return Err(Failure::usage(
            "solve",
            "max-iter must be at least 1".to_string(),
        ));
    }
    let p = load("solve", file, DEFAULT_ROW_SUM_TOL, false)?;
    let mut report = RunReport::new("solve");
    report.matrix_file = Some(file.display().to_string());
    report.n = Some(p.n());
    report.irreducible = Some(is_irreducible(&p).verdict());
    match method {
        Method::Direct | Method::Cesaro => {
            let (pi, solve) = match method {
                Method::Direct => solve_stationary_direct(&p),
                _ => cesaro_solve(&p, eps, cap),
            }
            .map_err(|e| Failure::from_core("solve", &e))?;
            report.method = Some(solve.method.name());
            report.pi = Some(pi.entries().to_vec());
            report.residual = Some(solve.residual);
            report.iterations = Some(solve.iterations);
            report.positivity_margin = Some(solve.positivity_margin);
            report.kernel_dimension = solve.kernel_dimension;
        }
        Method::Both => {
            let (direct_pi, direct_report) =
                solve_stationary_direct(&p).map_err(|e| Failure::from_core("solve", &e))?;
            let (cesaro_pi, cesaro_report) =
                cesaro_solve(&p, eps, cap).map_err(|e| Failure::from_core("solve", &e))?;
            let distance = direct_pi
                .infinity_distance(&cesaro_pi)
                .map_err(|e| Failure::from_core("solve", &e))?;
            report.method = Some("both");
            report.direct = Some(MethodReport::new(&direct_pi, &direct_report));
            report.cesaro = Some(MethodReport::new(&cesaro_pi, &cesaro_report));
            report.distance_inf = Some(distance);
        }
    }
    Ok((report, 0))
}

fn cmd_simulate(
    file: &Path,
    steps: u64,
    seed: Option<u64>,
    start: usize,
    compare: bool,
) -> Result<(RunReport, u8), Failure> {
    if steps == 0 {
        return Err(Failure::usage(
            "simulate",
            "steps must be at least 1".to_string(),
        ));
    }
    let seed = resolve_seed("simulate", seed)?;
    let p = load("simulate", file, DEFAULT_ROW_SUM_TOL, false)?;
    if compare {
        let cert = is_irreducible(&p);
        if !cert.verdict() {
            return Err(Failure {
                code: 3,
                diagnostic: Diagnostic {
                    command: "simulate",
                    error: "reducible",
                    message: "comparison needs an irreducible chain, and this matrix is not"
                        .to_string(),
                    kernel_dimension: None,
                    witness: cert.witness(),
                },
            });
        }
    }
    let stats =
        sample_trajectory(&p, start, steps, seed).map_err(|e| Failure::from_core("simulate", &e))?;
    let empirical = empirical_distribution(&stats);
    let mut report = RunReport::new("simulate");
    report.matrix_file = Some(file.display().to_string());
    report.n = Some(p.n());
    report.seed = Some(seed);
    report.steps = Some(steps);
    report.start = Some(start);
    report.counts = Some(stats.counts().to_vec());
    report.empirical = Some(empirical.entries().to_vec());
    if compare {
        let (pi, _) =
            solve_stationary_direct(&p).map_err(|e| Failure::from_core("simulate", &e))?;
        let distance = pi
            .infinity_distance(&empirical)
            .map_err(|e| Failure::from_core("simulate", &e))?;
        report.irreducible = Some(true);
        report.pi = Some(pi.entries().to_vec());
        report.distance_inf = Some(distance);
    }
    Ok((report, 0))
}

fn cmd_generate(
    kind_name: &str,
    n: usize,
    seed: u64,
    coupling: Option<f64>,
    out: &Path,
) -> Result<(RunReport, u8), Failure> {
    let kind = FixtureKind::from_name(kind_name).ok_or_else(|| {
        let names: Vec<&str> = FixtureKind::ALL.iter().map(|k| k.name()).collect();
        Failure::usage(
            "generate",
            format!("unknown kind {kind_name:?}; expected one of {}", names.join(", ")),
        )
    })?;
    let spec = FixtureSpec {
        kind,
        n,
        seed,
        coupling: coupling.unwrap_or(DEFAULT_COUPLING),
    };
    let p = generate(&spec).map_err(|e| Failure::from_core("generate", &e))?;
    write_rows(out, &p.to_rows()).map_err(|e| Failure::from_file("generate", e))?;
    let mut report = RunReport::new("generate");
    report.matrix_file = Some(out.display().to_string());
    report.kind = Some(kind.name());
    report.n = Some(n);
    report.seed = Some(seed);
    if kind == FixtureKind::NearReducible || coupling.is_some() {
        report.coupling = Some(spec.coupling);
    }
    Ok((report, 0))
}

fn dispatch(command: &Command) -> Result<(RunReport, u8), Failure> {
    match command {
        Command::Validate {
            file,
            tol,
            renormalize,
        } => cmd_validate(file, *tol, *renormalize),
        Command::Check { file, full } => cmd_check(file, *full),
        Command::Solve {
            file,
            method,
            eps,
            max_iter,
        } => cmd_solve(file, *method, *eps, *max_iter),
        Command::Simulate {
            file,
            steps,
            seed,
            start,
            compare,
        } => cmd_simulate(file, *steps, *seed, *start, *compare),
        Command::Generate {
            kind,
            n,
            seed,
            coupling,
            out,
        } => cmd_generate(kind, *n, *seed, *coupling, out),
    }
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    match dispatch(&cli.command) {
        Ok((mut report, code)) => {
            report.elapsed_ms = started.elapsed().as_millis() as u64;
            println!("{}", to_json(&report));
            std::io::stdout().flush().ok();
            std::process::exit(code.into());
        }
        Err(failure) => {
            eprintln!("{}", to_json(&failure.diagnostic));
            std::io::stderr().flush().ok();
            std::process::exit(failure.code.into());
        }
    }
}
