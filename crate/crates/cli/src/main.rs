//! Command-line front end: runs one named scenario, prints its report as
//! text or JSON, and exits 0 when every claim verified, 1 when any claim
//! was refuted (or, under `--strict`, inconclusive), 2 on invalid
//! configuration.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use ramify_core::report::{ClaimStatus, RunConfig};
use ramify_core::runners::{run, RUNNERS};

#[derive(Parser)]
#[command(
    name = "ramify",
    version,
    about = "Verify ramification invariants of valued field extensions",
    after_help = format!("Scenarios: {}", RUNNERS.join(", "))
)]
struct Cli {
    /// Scenario to run.
    example: String,
    /// Residue characteristic p.
    #[arg(long, default_value_t = 7)]
    prime: u64,
    /// Radical degree n (scenarios example14 and example16).
    #[arg(long, default_value_t = 3)]
    n: u64,
    /// Index prime q (scenario lemma18).
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Largest denominator e (scenarios lemma17 and lcm-table).
    #[arg(long = "e-max", default_value_t = 12)]
    e_max: u64,
    /// Monomial exponent budget for the enumeration oracle.
    #[arg(long = "degree-bound", default_value_t = 8)]
    degree_bound: i64,
    /// Series precision cutoff, a rational exponent like "64" or "1/2".
    #[arg(long, default_value = "64")]
    precision: String,
    /// Seed for the randomized sweeps.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report format: text or json.
    #[arg(long, default_value = "text")]
    format: String,
    /// Perturbation series d for example16, e.g. "t^(2)".
    #[arg(long)]
    d: Option<String>,
    /// Write the report to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Treat inconclusive-at-precision claims as failures.
    #[arg(long)]
    strict: bool,
    /// Record wall-clock runtime in the report.  Off by default so that
    /// identical configurations produce byte-identical reports.
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if cli.format != "text" && cli.format != "json" {
        eprintln!("error: format must be 'text' or 'json', got '{}'", cli.format);
        return ExitCode::from(2);
    }

    let cfg = RunConfig {
        example: cli.example.clone(),
        prime: cli.prime,
        n: cli.n,
        q: cli.q,
        e_max: cli.e_max,
        degree_bound: cli.degree_bound,
        precision: cli.precision.clone(),
        seed: cli.seed,
        format: cli.format.clone(),
        d: cli.d.clone(),
        timings: cli.timings,
    };

    let started = Instant::now();
    let mut report = match run(&cfg) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.timings {
        report.runtime_ms = started.elapsed().as_millis().max(1) as u64;
    }

    let payload = match cli.format.as_str() {
        "json" => format!("{}\n", report.to_json()),
        _ => report.render_text(),
    };
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, &payload) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        print!("{payload}");
    }

    match report.overall() {
        ClaimStatus::Verified => ExitCode::SUCCESS,
        ClaimStatus::Refuted => ExitCode::from(1),
        ClaimStatus::InconclusiveAtPrecision => {
            if cli.strict {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
