use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use pfaffian_spheres::pfaffian::TieBreak;
use pfaffian_spheres::verify::{
    complex_stats, suite, suite_document, verify_determinantal, verify_formulas, verify_h_equality,
    verify_main_theorem, verify_pfaffian_determinant, CoeffField, EngineOptions,
    VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "pfaffian-spheres",
    version,
    about = "Exact Groebner certification and combinatorial checks for Pfaffian and stack-polyomino determinantal ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Verify a single claim and report witnesses
    Verify {
        #[command(subcommand)]
        claim: VerifyCommands,
    },
    /// Statistics for one crossing or nesting complex
    Complex {
        #[command(subcommand)]
        what: ComplexCommands,
    },
    /// Run the whole verification matrix
    Suite {
        /// Skip the large prime-field instance (default)
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        /// Include the large prime-field instance
        #[arg(long)]
        full: bool,
        /// Write the JSON report document here
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TieBreakArg {
    /// Distance, then span, then lexicographic endpoints
    SpanLex,
    /// Distance, then lexicographic endpoints
    Lex,
}

impl From<TieBreakArg> for TieBreak {
    fn from(t: TieBreakArg) -> TieBreak {
        match t {
            TieBreakArg::SpanLex => TieBreak::SpanThenLex,
            TieBreakArg::Lex => TieBreak::Lex,
        }
    }
}

#[derive(Subcommand)]
enum VerifyCommands {
    /// Groebner certification and initial-ideal checks for the sub-Pfaffian ideal
    Pfaffian {
        /// Size of the skew-symmetric matrix
        #[arg(long)]
        n: u32,
        /// Pfaffian size parameter (generators are 2r x 2r sub-Pfaffians)
        #[arg(long)]
        r: u32,
        /// Coefficient field: `rational` or `prime:P`
        #[arg(long, default_value = "rational", value_parser = CoeffField::parse)]
        field: CoeffField,
        /// Tie-break for equal-distance variables
        #[arg(long, value_enum, default_value_t = TieBreakArg::SpanLex)]
        tie_break: TieBreakArg,
        /// Maximum number of S-pair reductions
        #[arg(long, default_value_t = 200_000)]
        spair_budget: usize,
        /// Write the JSON report here
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Product formulas against enumerated facet counts
    Formulas {
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// h-polynomial equality of the crossing and nesting complexes
    HEquality {
        #[arg(long)]
        n: u32,
        /// Ideal parameter; the complexes carry parameter r-1
        #[arg(long)]
        r: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Determinantal ideal of a stack polyomino given by column heights
    Polyomino {
        /// Column heights, e.g. 2,3,2
        #[arg(long, value_delimiter = ',', required = true)]
        heights: Vec<u16>,
        /// Minor size
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "rational", value_parser = CoeffField::parse)]
        field: CoeffField,
        #[arg(long, default_value_t = 200_000)]
        spair_budget: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Squared Pfaffian versus the symbolic cofactor determinant
    PfDet {
        #[arg(long)]
        m_max: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ComplexCommands {
    /// f/h-vectors, facet count, and sphere-certificate flags
    Stats {
        /// Complex family: delta (crossing) or sigma (nesting)
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
        /// Complex parameter (not the ideal parameter)
        #[arg(long)]
        r: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn print_report(report: &VerificationReport) {
    let status = if report.pass { "PASS" } else { "FAIL" };
    println!(
        "[{status}] {} {} ({} ms)",
        report.claim, report.params, report.timing_ms
    );
    if let Some(failure) = &report.witnesses.failure {
        println!("       {failure}");
    }
}

fn write_json(path: &Option<PathBuf>, value: &Value) -> std::io::Result<()> {
    if let Some(path) = path {
        let mut text = serde_json::to_string_pretty(value).expect("serializable report");
        text.push('\n');
        fs::write(path, text)?;
    }
    Ok(())
}

fn single(report: VerificationReport, json: &Option<PathBuf>) -> std::io::Result<bool> {
    print_report(&report);
    write_json(json, &serde_json::to_value(&report).expect("serializable"))?;
    Ok(report.pass)
}

fn run() -> std::io::Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Commands::Verify { claim } => match claim {
            VerifyCommands::Pfaffian {
                n,
                r,
                field,
                tie_break,
                spair_budget,
                json,
            } => {
                let opts = EngineOptions {
                    tie_break: tie_break.into(),
                    spair_budget,
                };
                single(verify_main_theorem(n, r, field, &opts), &json)
            }
            VerifyCommands::Formulas { n_max, json } => single(verify_formulas(n_max), &json),
            VerifyCommands::HEquality { n, r, json } => single(verify_h_equality(n, r), &json),
            VerifyCommands::Polyomino {
                heights,
                r,
                field,
                spair_budget,
                json,
            } => {
                let opts = EngineOptions {
                    spair_budget,
                    ..EngineOptions::default()
                };
                single(verify_determinantal(&heights, r, field, &opts), &json)
            }
            VerifyCommands::PfDet { m_max, json } => {
                single(verify_pfaffian_determinant(m_max), &json)
            }
        },
        Commands::Complex { what } => match what {
            ComplexCommands::Stats { family, n, r, json } => {
                single(complex_stats(&family, n, r), &json)
            }
        },
        Commands::Suite {
            quick: _,
            full,
            json,
        } => {
            let name = if full { "full" } else { "quick" };
            let reports = suite(full, &EngineOptions::default());
            for report in &reports {
                print_report(report);
            }
            let pass = reports.iter().all(|r| r.pass);
            println!(
                "suite {name}: {} of {} claims passed",
                reports.iter().filter(|r| r.pass).count(),
                reports.len()
            );
            write_json(&json, &suite_document(name, &reports))?;
            Ok(pass)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("io error: {e}");
            ExitCode::FAILURE
        }
    }
}
