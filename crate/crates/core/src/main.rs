use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use coring_kit::cli::{run_command, Command};
use coring_kit::spec_file::{parse_field, parse_spec};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Machine,
}

/// Decide coseparability, smoothness and cosmoothness for finite-dimensional
/// corings and comodules, with exact certificates.
#[derive(Debug, Parser)]
#[command(name = "coring-kit", version)]
struct Args {
    /// Instance file.
    spec_file: PathBuf,
    /// check | cointegral | cosplit | frobenius | central | smooth <comodule> |
    /// cosmooth-global | injective <comodule> | oracle <comodule> |
    /// dual-ring <left|right>
    #[arg(required = true, num_args = 1..=2)]
    command: Vec<String>,
    /// Seed for the random part of the oracle family.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ground field: q or fp:<p>; overrides the file.
    #[arg(long)]
    field: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn run(args: &Args) -> coring_kit::Result<String> {
    let field = args.field.as_deref().map(parse_field).transpose()?;
    let text = std::fs::read_to_string(&args.spec_file).map_err(|e| {
        coring_kit::Error::Usage(format!("{}: {e}", args.spec_file.display()))
    })?;
    let spec = parse_spec(&text, field)?;
    let command = Command::parse(&args.command)?;
    let report = run_command(&spec, &command, args.seed)?;
    Ok(match args.format {
        Format::Text => report.render_text(),
        Format::Machine => report.render_machine(),
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
