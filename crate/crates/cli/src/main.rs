use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use stickforge_cli::commands::{build_cmd, enumerate_cmd, invariant_cmd, verify_cmd};
use stickforge_cli::Format;
use stickforge_core::invariants::CompareMode;

/// Stick realizations of 2-bridge knots and links with c+2 sticks.
#[derive(Parser)]
#[command(name = "stickforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Obj,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Mirror,
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify a realization of a Conway notation.
    Build {
        #[arg(long)]
        notation: String,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[arg(long, env = "STICKFORGE_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Verify a realization document or bare coordinate file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Defaults to the notation recorded in a realization document.
        #[arg(long)]
        notation: Option<String>,
        #[arg(long, value_enum, default_value = "mirror")]
        mode: ModeArg,
    },
    /// Build and verify every type in a crossing-number range, writing a CSV report.
    Enumerate {
        #[arg(long)]
        min: u32,
        #[arg(long)]
        max: u32,
        /// CSV file; standard output when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the Jones polynomial, determinant and fraction.
    Invariant {
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        notation: Option<String>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut out, mut err) = (io::stdout(), io::stderr());
    let code = match cli.command {
        Command::Build { notation, out: path, format, seed } => {
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Obj => Format::Obj,
            };
            build_cmd(&notation, path.as_deref(), format, seed, &mut out, &mut err)
        }
        Command::Verify { input, notation, mode } => {
            let mode = match mode {
                ModeArg::Strict => CompareMode::Strict,
                ModeArg::Mirror => CompareMode::MirrorTolerant,
            };
            verify_cmd(&input, notation.as_deref(), mode, &mut out, &mut err)
        }
        Command::Enumerate { min, max, report, jobs } => {
            enumerate_cmd(min, max, report.as_deref(), jobs, &mut out, &mut err)
        }
        Command::Invariant { notation, input } => {
            invariant_cmd(notation.as_deref(), input.as_deref(), &mut out, &mut err)
        }
    };
    ExitCode::from(code)
}
