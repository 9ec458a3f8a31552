use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tensec::cli::{self, CliError, OutputFormat, RunConfig};
use tensec_core::conditions::ProjectionOrder;
use tensec_core::quantization::CycleMode;

#[derive(Parser)]
#[command(name = "tensec", version, about = "Decide and explain non-parallelizable tensegrities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "TENSEC_SEED", default_value_t = 0)]
    seed: u64,
    /// Number of placements drawn by `verify`.
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Cycles::All)]
    cycles: Cycles,
    /// Order in which projections shorten long cycles.
    #[arg(long, global = true, value_enum, default_value_t = Order::Leading)]
    order: Order,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Line at infinity of the affine chart, as "a,b,c".
    #[arg(long, global = true, default_value = "0,0,1")]
    chart: String,
    /// Write output to this file instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cycles {
    All,
    Generators,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Leading,
    Paired,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the stress oracle, quantization and condition checks on a framework.
    Check { file: PathBuf },
    /// Compile a graph into its system of geometric conditions.
    Conditions { file: PathBuf },
    /// Compare condition verdicts with the oracle on random placements.
    Verify { file: PathBuf },
    /// Draw a framework as SVG.
    Render { file: PathBuf },
    /// Inspect the monodromy of a framed cycle.
    Monodromy { file: PathBuf },
}

fn run(cli: Cli) -> Result<(String, Option<PathBuf>), CliError> {
    let c = cli.common;
    let cfg = RunConfig {
        seed: c.seed,
        samples: c.samples,
        mode: match c.cycles {
            Cycles::All => CycleMode::All,
            Cycles::Generators => CycleMode::Generators,
        },
        order: match c.order {
            Order::Leading => ProjectionOrder::Leading,
            Order::Paired => ProjectionOrder::Paired,
        },
        format: match c.format {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        },
        chart: cli::parse_chart(&c.chart)?,
    };
    let (file, cmd): (PathBuf, fn(&str, &RunConfig) -> cli::CliResult) = match cli.command {
        Command::Check { file } => (file, cli::cmd_check),
        Command::Conditions { file } => (file, cli::cmd_conditions),
        Command::Verify { file } => (file, cli::cmd_verify),
        Command::Render { file } => (file, cli::cmd_render),
        Command::Monodromy { file } => (file, cli::cmd_monodromy),
    };
    let text = std::fs::read_to_string(&file)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", file.display())))?;
    Ok((cmd(&text, &cfg)?, c.output))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, None)) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Ok((out, Some(path))) => match std::fs::write(&path, out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                ExitCode::from(cli::EXIT_INPUT as u8)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
