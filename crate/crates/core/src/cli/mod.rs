//! Command-line front end: `lattice`, `spectrum` and `verify`.
//!
//! Exit codes: 0 success, 1 configuration or validation error, 2 a
//! verification check failed.

pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::fs;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;

pub use config::{test_matrix, CommonArgs, Format};
pub use output::{Metadata, Method, ResultRow, CSV_HEADER};
pub use verify::{Check, Suite};

use crate::error::Result;
use crate::rootdata::CaseParams;
use crate::spectrum::{eta_closed, eta_recursive, SpectralValue};
use crate::weights::{enumerate, Weight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "coslambda", version, about = "Spectrum of the Cos^lambda transform on Grassmannian line bundles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the spherical weights μ with |μ| ≤ max-degree.
    Lattice(CommonArgs),
    /// Tabulate η_μ(λ) over the weights and λ values.
    Spectrum(CommonArgs),
    /// Run numerical cross-checks and print a pass/fail report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        args: CommonArgs,
    },
}

fn row(case: &CaseParams, mu: &Weight, lambda: Complex64, value: SpectralValue, method: Method) -> ResultRow {
    let eta = (!value.is_pole()).then_some(value.eta);
    ResultRow::new(case, mu, lambda, eta, value.status, method)
}

/// All rows for `spectrum`, ordered by weight, then λ, then method.
pub fn spectrum_rows(case: &CaseParams, weights: &[Weight], lambdas: &[Complex64], cross_check: bool) -> Result<Vec<ResultRow>> {
    let jobs: Vec<(&Weight, Complex64)> =
        weights.iter().flat_map(|mu| lambdas.iter().map(move |&lam| (mu, lam))).collect();
    let chunks: Vec<Vec<ResultRow>> = jobs
        .par_iter()
        .map(|&(mu, lam)| {
            let mut rows = vec![row(case, mu, lam, eta_closed(case, &mu.0, lam)?, Method::Closed)];
            if cross_check {
                rows.push(row(case, mu, lam, eta_recursive(case, &mu.0, lam)?.value, Method::Recursive));
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

fn emit(args: &CommonArgs, text: &str) -> std::result::Result<(), String> {
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fail_config(message: impl std::fmt::Display) -> i32 {
    eprintln!("error: {message}");
    EXIT_CONFIG
}

/// Parse arguments and run; returns the process exit code.
pub fn run_from<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> i32 {
    match &cli.command {
        Command::Lattice(args) => {
            let case = match args.require_case() {
                Ok(c) => c,
                Err(e) => return fail_config(e),
            };
            let weights = enumerate(&case, args.max_degree);
            let meta = Metadata::new("lattice", args);
            match output::render_lattice(&case, &weights, args.format, &meta).and_then(|t| emit(args, &t)) {
                Ok(()) => EXIT_OK,
                Err(e) => fail_config(e),
            }
        }
        Command::Spectrum(args) => {
            let prepared = args.require_case().and_then(|case| Ok((case, args.lambdas()?)));
            let (case, lambdas) = match prepared {
                Ok(v) => v,
                Err(e) => return fail_config(e),
            };
            let weights = enumerate(&case, args.max_degree);
            let rows = match spectrum_rows(&case, &weights, &lambdas, args.cross_check) {
                Ok(rows) => rows,
                Err(e) => return fail_config(e),
            };
            let meta = Metadata::new("spectrum", args);
            match output::render_rows(&rows, args.format, &meta).and_then(|t| emit(args, &t)) {
                Ok(()) => EXIT_OK,
                Err(e) => fail_config(e),
            }
        }
        Command::Verify { suite, args } => {
            let checks = match verify::run_suite(*suite, args) {
                Ok(c) => c,
                Err(e) => return fail_config(e),
            };
            let text = match args.format {
                Format::Csv => verify::render_report(&checks),
                Format::Json => {
                    let command = format!("verify {}", suite.as_str());
                    let meta = Metadata::new(&command, args);
                    let doc = serde_json::json!({ "metadata": meta, "checks": checks });
                    serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
                }
            };
            if let Err(e) = emit(args, &text) {
                return fail_config(e);
            }
            if checks.iter().all(|c| c.passed) {
                EXIT_OK
            } else {
                EXIT_VERIFY
            }
        }
    }
}
