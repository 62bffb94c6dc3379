//! Command-line front end: build and dump two-generated dihedral algebras,
//! emit the classification table, run the axiom verifier, and run the
//! exhaustive independence scan.
//!
//! Exit codes: 0 on success; 1 when the inputs are well-formed but
//! inconsistent (no algebra exists, closure fails, or a verification check
//! fails); 2 on validation errors (bad flags, malformed rationals,
//! unsupported orbit sizes).

use clap::{Args, Parser, Subcommand, ValueEnum};
use dihedral_griess::algebra::{build_algebra, AlgebraError, DihedralAlgebra};
use dihedral_griess::classify::{classification_table, render_csv, render_json};
use dihedral_griess::independence::infeasibility_scan;
use dihedral_griess::orbit::ParamRecord;
use dihedral_griess::rational::Rational;
use dihedral_griess::verify::verify_axioms;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

/// Environment variable that prefixes relative `--output` paths.
const OUTPUT_DIR_ENV: &str = "DIHEDRAL_GRIESS_OUTPUT_DIR";

#[derive(Parser)]
#[command(
    name = "dihedral-griess",
    about = "Exact construction and verification of the subalgebra generated by two Ising vectors"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Build the full multiplication table at given parameters and dump it.
    Build(BuildArgs),
    /// Emit the classification of admissible inner-product parameters.
    Classify(ClassifyArgs),
    /// Build an algebra and run the full axiom verification suite.
    Verify(VerifyArgs),
    /// Exhaustively scan bounded-denominator overlap sequences for a
    /// violation of the independence certificate.
    Scan(ScanArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// Orbit size N = |e^T ∪ f^T|, between 1 and 6.
    #[arg(long)]
    n: usize,
    /// (e|f) as an exact fraction "p/q" (or ⟨e,f⟩ with --bracket).
    #[arg(long)]
    lambda1: String,
    /// (e|e^{τ_f}) as an exact fraction "p/q" (or ⟨e,e^{τ_f}⟩ with --bracket).
    #[arg(long)]
    lambda2: String,
    /// Interpret the parameters on the ⟨·,·⟩ scale instead of (·|·) = 4⟨·,·⟩.
    #[arg(long)]
    bracket: bool,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Output format for the dump.
    #[arg(long, value_enum, default_value_t = DumpFormat::Json)]
    format: DumpFormat,
    /// Write to this path instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Output format for the table.
    #[arg(long, value_enum, default_value_t = DumpFormat::Csv)]
    format: DumpFormat,
    /// Write to this path instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Output format for the report.
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    /// Write to this path instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Denominator bound of the overlap grid (at least 2).
    #[arg(long, default_value_t = 12)]
    bound: u64,
    /// Write to this path instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

/// Error wrapper carrying the process exit code.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn failure(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        let code = if e.code() == "validation" { 2 } else { 1 };
        CliError {
            code,
            message: format!("{} ({})", e, e.code()),
        }
    }
}

fn parse_params(args: &ParamArgs) -> Result<ParamRecord, CliError> {
    let parse = |name: &str, s: &str| {
        Rational::from_str(s)
            .map_err(|e| CliError::validation(format!("--{name} {s:?}: {e}")))
    };
    let mut l1 = parse("lambda1", &args.lambda1)?;
    let mut l2 = parse("lambda2", &args.lambda2)?;
    if args.bracket {
        let four = Rational::from_int(4);
        l1 = &four * &l1;
        l2 = &four * &l2;
    }
    ParamRecord::new(l1, l2).map_err(|e| CliError::validation(e.to_string()))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        None => {
            use std::io::Write;
            // Tolerate a closed pipe (e.g. piping into `head`).
            let _ = writeln!(std::io::stdout(), "{text}");
            Ok(())
        }
        Some(path) => {
            let path = match std::env::var_os(OUTPUT_DIR_ENV) {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path.clone(),
            };
            std::fs::write(&path, format!("{text}\n"))
                .map_err(|e| CliError::validation(format!("cannot write {}: {e}", path.display())))
        }
    }
}

fn build_at(args: &ParamArgs) -> Result<DihedralAlgebra, CliError> {
    let params = parse_params(args)?;
    Ok(build_algebra(args.n, params)?)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.verb {
        Verb::Build(args) => {
            let alg = build_at(&args.params)?;
            let text = match args.format {
                DumpFormat::Json => serde_json::to_string_pretty(&alg.to_json())
                    .expect("dump serializes"),
                DumpFormat::Csv => alg.table_csv().trim_end().to_owned(),
            };
            emit(&args.output, &text)
        }
        Verb::Classify(args) => {
            let rows = classification_table();
            let text = match args.format {
                DumpFormat::Csv => render_csv(&rows).trim_end().to_owned(),
                DumpFormat::Json => serde_json::to_string_pretty(&render_json(&rows))
                    .expect("table serializes"),
            };
            emit(&args.output, &text)
        }
        Verb::Verify(args) => {
            let alg = build_at(&args.params)?;
            let report = verify_axioms(&alg);
            let text = match args.format {
                ReportFormat::Text => report.to_string(),
                ReportFormat::Json => serde_json::to_string_pretty(&report.to_json())
                    .expect("report serializes"),
            };
            emit(&args.output, &text)?;
            if report.all_passed() {
                Ok(())
            } else {
                Err(CliError::failure("verification failed (check-failure)"))
            }
        }
        Verb::Scan(args) => {
            let report = infeasibility_scan(args.bound)
                .map_err(|e| CliError::validation(e.to_string()))?;
            let text = serde_json::to_string_pretty(&report.to_json())
                .expect("report serializes");
            emit(&args.output, &text)?;
            if report.violations == 0 {
                Ok(())
            } else {
                Err(CliError::failure(format!(
                    "{} overlap sequences violate the independence bound",
                    report.violations
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
