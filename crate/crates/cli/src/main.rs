mod commands;
mod error;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use commands::{Options, Report};
use error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Trace,
    ChowTrace,
    Residue,
    TorusResidue,
    Resultant,
    MixedVolume,
    Facets,
    Denominator,
    CompareDenominators,
    Discriminant,
    EulerJacobi,
    Verify,
}

/// Exact traces, resultants and residues of polynomial systems.
#[derive(Debug, Parser)]
#[command(name = "toric-trace", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// System file (`vars:`, `f1:`, `p:`, `q:`, `A1:`, `root:`, `a:` lines).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// auto, ce, macaulay or oracle.
    #[arg(long, default_value = "auto")]
    backend: String,
    /// Mixed volume strategy: inclusion-exclusion or mixed-cells.
    #[arg(long, default_value = "inclusion-exclusion")]
    strategy: String,
    /// JSON output (the only format).
    #[arg(long, default_value_t = true)]
    json: bool,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Exponent vector such as `2,0`.
    #[arg(long, allow_hyphen_values = true)]
    monomial: Option<String>,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let opts = Options {
        seed: cli.seed,
        backend: cli.backend.clone(),
        strategy: cli.strategy.clone(),
        p: cli.p.clone(),
        q: cli.q.clone(),
        monomial: cli.monomial.clone(),
    };
    if cli.command == Command::Verify {
        return commands::verify(&opts);
    }
    let path = cli.input.as_ref().ok_or_else(|| CliError::Usage("--input is required".into()))?;
    let src = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let sys = input::parse_system(&src)?;
    match cli.command {
        Command::Trace => commands::trace(&sys, &opts),
        Command::ChowTrace => commands::chow_trace(&sys, &opts),
        Command::Residue => commands::residue(&sys, &opts),
        Command::TorusResidue => commands::torus_residue(&sys, &opts),
        Command::Resultant => commands::resultant(&sys, &opts),
        Command::MixedVolume => commands::mixed_volume(&sys, &opts),
        Command::Facets => commands::facets(&sys, &opts),
        Command::Denominator => commands::denominator(&sys, &opts),
        Command::CompareDenominators => commands::compare(&sys, &opts),
        Command::Discriminant => commands::discriminant(&sys, &opts),
        Command::EulerJacobi => commands::euler_jacobi(&sys, &opts),
        Command::Verify => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report.json).expect("serializable");
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            match report.failure {
                None => ExitCode::SUCCESS,
                Some(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
