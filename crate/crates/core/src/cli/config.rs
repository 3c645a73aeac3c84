use std::fs;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{make_case, CaseParams, Field};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Flags shared by every subcommand. Serialized verbatim into output metadata.
#[derive(Debug, Clone, Default, Args, Serialize)]
pub struct CommonArgs {
    /// Field of the Grassmannian: R or C.
    #[arg(long)]
    pub field: Option<Field>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    /// Line bundle parameter (complex field only).
    #[arg(long, allow_negative_numbers = true)]
    pub l: Option<i64>,
    /// Real grid START:STOP:STEP (closed range).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// JSON file with a list of λ values, each a number or [re, im].
    #[arg(long)]
    pub lambda_list: Option<PathBuf>,
    /// Largest |μ| enumerated.
    #[arg(long, default_value_t = 10)]
    pub max_degree: i64,
    /// Monte-Carlo sample count per estimate.
    #[arg(long)]
    pub samples: Option<u64>,
    /// Seed for Monte-Carlo suites (required there).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also emit recursively computed rows.
    #[arg(long)]
    pub cross_check: bool,
    /// Accept l = 0 for the complex field.
    #[arg(long)]
    pub allow_trivial: bool,
}

/// The cases exercised when no case is given on the command line.
pub fn test_matrix() -> Vec<CaseParams> {
    [
        (Field::R, 2, 3, 0),
        (Field::R, 2, 5, 0),
        (Field::C, 1, 2, 1),
        (Field::C, 1, 3, 2),
        (Field::C, 2, 2, 1),
        (Field::C, 2, 3, 3),
    ]
    .into_iter()
    .map(|(field, p, q, l)| make_case(field, p, q, l, false).expect("matrix case is valid"))
    .collect()
}

impl CommonArgs {
    /// The case selected by --field/--p/--q/--l, if any flag is present.
    pub fn case(&self) -> Result<Option<CaseParams>> {
        match (self.field, self.p, self.q) {
            (None, None, None) if self.l.is_none() => Ok(None),
            (Some(field), Some(p), Some(q)) => {
                let l = match (field, self.l) {
                    (Field::R, l) => l.unwrap_or(0),
                    (Field::C, Some(l)) => l,
                    (Field::C, None) => {
                        return Err(Error::InvalidArgument("--l is required for the complex field".into()))
                    }
                };
                make_case(field, p, q, l, self.allow_trivial).map(Some)
            }
            _ => Err(Error::InvalidArgument("--field, --p and --q must be given together".into())),
        }
    }

    /// Fill in field C and p = 1 when only --q (and --l) are given.
    pub fn with_projective_defaults(&self) -> CommonArgs {
        let mut args = self.clone();
        if args.field.is_none() && args.p.is_none() && args.q.is_some() {
            args.field = Some(Field::C);
            args.p = Some(1);
        }
        args
    }

    pub fn require_case(&self) -> Result<CaseParams> {
        self.case()?
            .ok_or_else(|| Error::InvalidArgument("a case (--field, --p, --q, --l) is required".into()))
    }

    /// Cases to run: the selected one, or the whole test matrix.
    pub fn cases(&self) -> Result<Vec<CaseParams>> {
        Ok(match self.case()? {
            Some(case) => vec![case],
            None => test_matrix(),
        })
    }

    pub fn require_seed(&self) -> Result<u64> {
        self.seed
            .ok_or_else(|| Error::InvalidArgument("--seed is required for Monte-Carlo checks".into()))
    }

    /// λ values from --lambda or --lambda-list, in the given order.
    pub fn lambdas(&self) -> Result<Vec<Complex64>> {
        match (&self.lambda, &self.lambda_list) {
            (Some(grid), None) => parse_grid(grid),
            (None, Some(path)) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
                parse_lambda_list(&text)
            }
            (None, None) => Err(Error::InvalidArgument("one of --lambda or --lambda-list is required".into())),
            (Some(_), Some(_)) => {
                Err(Error::InvalidArgument("--lambda and --lambda-list are mutually exclusive".into()))
            }
        }
    }
}

/// Parse START:STOP:STEP into the closed grid start + i·step.
pub fn parse_grid(grid: &str) -> Result<Vec<Complex64>> {
    let bad = || Error::InvalidArgument(format!("lambda grid must be START:STOP:STEP, got {grid:?}"));
    let parts: Vec<f64> = grid
        .split(':')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step == 0.0 {
        return Err(bad());
    }
    let span = (stop - start) / step;
    if span < -1e-9 {
        return Err(Error::InvalidArgument(format!("step {step} does not lead from {start} to {stop}")));
    }
    let count = (span + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| Complex64::new(start + i as f64 * step, 0.0)).collect())
}

/// Parse a JSON list whose entries are numbers or [re, im] pairs.
pub fn parse_lambda_list(text: &str) -> Result<Vec<Complex64>> {
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Real(f64),
        Pair([f64; 2]),
    }
    let entries: Vec<Entry> = serde_json::from_str(text)
        .map_err(|e| Error::InvalidArgument(format!("lambda list is not a JSON list of numbers or pairs: {e}")))?;
    Ok(entries
        .into_iter()
        .map(|e| match e {
            Entry::Real(x) => Complex64::new(x, 0.0),
            Entry::Pair([re, im]) => Complex64::new(re, im),
        })
        .collect())
}
