use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bellgems::{CliError, Command, Emit, PairingChoice, RunConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// SU(2) block decomposition of 2d-qubit Pauli Hamiltonians in the Bell gems
/// basis. Units: ħ = 1.
#[derive(Parser)]
#[command(name = "bellgems", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Write the Bell gems basis matrix (column I = gem I).
    Basis {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4))]
        d: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Report the interaction pattern of a spec.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write the Hamiltonian at time t in the Bell gems basis.
    Transform {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "t", default_value_t = 0.0)]
        t: f64,
        /// Also compare against the explicit change of basis.
        #[arg(long)]
        check_oracle: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Extract the 2×2 blocks at time t.
    Blocks {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "t", default_value_t = 0.0)]
        t: f64,
        #[command(flatten)]
        pairing: PairingArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Blockwise propagator over [0, T] with verification.
    Evolve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "T")]
        t_final: f64,
        /// Also compare against dense matrix exponentials.
        #[arg(long)]
        check_oracle: bool,
        #[command(flatten)]
        pairing: PairingArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    emit: Option<EmitArg>,
}

#[derive(Args)]
struct PairingArgs {
    /// Relative coupling threshold (scaled by max(1, max|M_ij|)).
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    tol: f64,
    /// `ascending` or `custom:PATH` with a JSON list of [j, k] pairs.
    #[arg(long, default_value = "ascending", value_parser = pairing_choice)]
    pairing: PairingChoice,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    Matrix,
    Report,
    Both,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn pairing_choice(s: &str) -> Result<PairingChoice, String> {
    match s {
        "ascending" => Ok(PairingChoice::Ascending),
        _ => s
            .strip_prefix("custom:")
            .filter(|p| !p.is_empty())
            .map(|p| PairingChoice::Custom(PathBuf::from(p)))
            .ok_or_else(|| format!("expected `ascending` or `custom:PATH`, got {s:?}")),
    }
}

impl From<EmitArg> for Emit {
    fn from(e: EmitArg) -> Self {
        match e {
            EmitArg::Matrix => Emit::Matrix,
            EmitArg::Report => Emit::Report,
            EmitArg::Both => Emit::Both,
        }
    }
}

fn config(sub: Sub) -> RunConfig {
    let with_out = |command, input: Option<PathBuf>, out: OutputArgs| RunConfig {
        input_path: input,
        output_path: out.output,
        emit: out.emit.map(Emit::from),
        ..RunConfig::new(command)
    };
    match sub {
        Sub::Basis { d, out } => with_out(Command::Basis { d: d as usize }, None, out),
        Sub::Classify { input, output } => RunConfig {
            input_path: Some(input),
            output_path: output,
            ..RunConfig::new(Command::Classify)
        },
        Sub::Transform {
            input,
            t,
            check_oracle,
            out,
        } => with_out(Command::Transform { t, check_oracle }, Some(input), out),
        Sub::Blocks {
            input,
            t,
            pairing,
            out,
        } => RunConfig {
            tol: pairing.tol,
            pairing: pairing.pairing,
            ..with_out(Command::Blocks { t }, Some(input), out)
        },
        Sub::Evolve {
            input,
            t_final,
            check_oracle,
            pairing,
            out,
        } => RunConfig {
            tol: pairing.tol,
            pairing: pairing.pairing,
            ..with_out(
                Command::Evolve {
                    t_final,
                    check_oracle,
                },
                Some(input),
                out,
            )
        },
    }
}

fn write(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.output_path {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(CliError::Output),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}").map_err(CliError::Output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = config(cli.command);
    match bellgems::commands::run(&config).and_then(|text| write(&config, &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
