//! Scenario runners: each takes a `RunConfig`, recomputes one family of
//! claims from scratch, and returns a deterministic `Report`.
//!
//! Runners never consult wall-clock time or global state; identical
//! configurations produce byte-identical reports.

mod example12;
mod example14;
mod example15;
mod example16;
mod sweeps;

use thiserror::Error;

use crate::compositum::CompError;
use crate::extension::ExtError;
use crate::funcfield::FuncError;
use crate::hensel::HenselError;
use crate::ordgroup::GroupError;
use crate::report::{Report, RunConfig};
use crate::resfield::FieldError;
use crate::series::SeriesError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RunError {
    #[error("unknown example '{0}'")]
    UnknownExample(String),
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Func(#[from] FuncError),
    #[error(transparent)]
    Hensel(#[from] HenselError),
    #[error(transparent)]
    Comp(#[from] CompError),
    #[error(transparent)]
    Ext(#[from] ExtError),
}

/// Names the CLI accepts for `example`.
pub const RUNNERS: [&str; 8] = [
    "example12",
    "example14",
    "example15",
    "example16",
    "sweeps",
    "lemma17",
    "lemma18",
    "lcm-table",
];

pub fn run(cfg: &RunConfig) -> Result<Report, RunError> {
    let claims = match cfg.example.as_str() {
        "example12" => example12::run(cfg)?,
        "example14" => example14::run(cfg)?,
        "example15" => example15::run(cfg)?,
        "example16" => example16::run(cfg)?,
        "sweeps" => sweeps::random_tame(cfg)?,
        "lemma17" => sweeps::fractional_generation(cfg)?,
        "lemma18" => sweeps::rank_two(cfg)?,
        "lcm-table" => sweeps::lcm_table(cfg)?,
        other => return Err(RunError::UnknownExample(other.to_string())),
    };
    Ok(Report::new(cfg.clone(), claims))
}

pub(crate) fn parse_precision(cfg: &RunConfig) -> Result<crate::Rat, RunError> {
    crate::arith::parse_rat(&cfg.precision)
        .map_err(|e| RunError::BadConfig(format!("precision: {e}")))
}
