use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use equicolor::nbarray::FormId;
use equicolor::pipeline::{self, ClassifyOptions, Report, RunConfig};
use equicolor::QuotientMatrix;

/// Perfect 2-colorings of Johnson graphs: constructions, census and
/// exhaustive classification on J(10,3).
#[derive(Parser)]
#[command(name = "equicolor", version)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Omit per-claim runtimes so reports are byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timings: bool,

    /// Run independent claims concurrently.
    #[arg(long, global = true)]
    parallel: bool,

    /// Search workers per deduction run.
    #[arg(long, global = true, env = "EQUICOLOR_WORKERS", default_value_t = 1)]
    workers: usize,

    /// Time budget per deduction run, in seconds.
    #[arg(long, global = true, default_value_t = 600)]
    time_budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the 8-orbit coloring of J(10,3) and its two merges.
    ConstructJ10 {
        /// Directory for orbits.json, type0.json and type1.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the symmetric perfect 2-colorings of J(6,3).
    CensusJ63,
    /// Run the deduction engine on the seeded nb-array forms.
    ClassifyJ10 {
        /// Only run the seed for this form (1..=11).
        #[arg(long)]
        seed_form: Option<u8>,
        /// Leave out the redundant pair-count equations.
        #[arg(long)]
        no_lemma1: bool,
    },
    /// Check a coloring file.
    Verify {
        file: PathBuf,
        /// Expected quotient, rows separated by ';' (e.g. "12,9;9,12").
        #[arg(long)]
        quotient: Option<String>,
    },
    /// Spectrum of the subgraph induced by one part (1-based, file order).
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        part: usize,
    },
}

fn run(cli: &Cli) -> Result<Report> {
    let cfg = RunConfig {
        workers: cli.workers.max(1),
        parallel_claims: cli.parallel,
        time_budget: Duration::from_secs(cli.time_budget),
        ..RunConfig::default()
    };
    Ok(match &cli.command {
        Command::ConstructJ10 { out } => pipeline::cmd_construct_j10(out.as_deref(), &cfg),
        Command::CensusJ63 => pipeline::cmd_census_j63(&cfg),
        Command::ClassifyJ10 { seed_form, no_lemma1 } => {
            let opts = ClassifyOptions {
                seed_form: seed_form.map(FormId::new).transpose()?,
                include_pair_identities: !no_lemma1,
            };
            pipeline::cmd_classify_j10(&opts, &cfg)
        }
        Command::Verify { file, quotient } => {
            let q = quotient.as_deref().map(QuotientMatrix::parse).transpose()?;
            pipeline::cmd_verify(file, q.as_ref(), &cfg).with_context(|| format!("verifying {}", file.display()))?
        }
        Command::Spectrum { file, part } => {
            pipeline::cmd_spectrum(file, *part, &cfg).with_context(|| format!("reading {}", file.display()))?
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let report = if cli.no_timings { report.without_timings() } else { report };
            if cli.pretty {
                print!("{}", report.to_human());
            } else {
                println!("{}", report.to_json());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
