use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hyperint_cli::{emit, parse_problem, run, CliError, Format, Mode, Overrides, Report};

#[derive(Parser)]
#[command(name = "hyperint", version, about = "Certified p-integrality decisions for A-hypergeometric series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Problem file (TOML); read from stdin when absent.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: OutFormat,
    /// Largest multiple of the orbit period tried in the witness search.
    #[arg(long, global = true)]
    max_b: Option<u32>,
    /// Kernel-coordinate radius of the witness search.
    #[arg(long = "box", global = true)]
    box_radius: Option<u64>,
    /// Truncation order for series expansion.
    #[arg(long, global = true)]
    order: Option<u64>,
    /// Maximum number of enumerated lattice points.
    #[arg(long, global = true)]
    guard: Option<usize>,
    /// Worker threads for the parallel loops.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Decide integrality at each prime with a certificate.
    Analyze,
    /// Residue-class criterion for a classical series.
    Classical,
    /// Analyze and list the expanded terms.
    Series,
    /// Lower bound and per-shift checks without the witness search.
    Bound,
    /// Coset check for v with entries in {-1, 0}.
    Thm63,
    /// Denominator constant of an algebraic power series.
    Eisenstein,
}

#[derive(ValueEnum, Clone, Copy)]
enum OutFormat {
    Json,
    Text,
}

impl From<Command> for Mode {
    fn from(c: Command) -> Self {
        match c {
            Command::Analyze => Mode::Analyze,
            Command::Classical => Mode::Classical,
            Command::Series => Mode::Series,
            Command::Bound => Mode::Bound,
            Command::Thm63 => Mode::Thm63,
            Command::Eisenstein => Mode::Eisenstein,
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
        }
        None => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let text = read_input(&cli.input)?;
    let problem = parse_problem(&text)?;
    let overrides = Overrides { max_b: cli.max_b, box_radius: cli.box_radius, order: cli.order, guard: cli.guard };
    let mode = Mode::from(cli.command);
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.threads {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Input(format!("--threads: {e}")))?;
        return pool.install(|| run(&problem, mode, &overrides));
    }
    run(&problem, mode, &overrides)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = execute(&cli);
    eprintln!("elapsed: {} ms", start.elapsed().as_millis());
    match result {
        Ok(report) => {
            let format = match cli.format {
                OutFormat::Json => Format::Json,
                OutFormat::Text => Format::Text,
            };
            let bytes = emit(&report, format);
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, bytes) {
                        eprintln!("{}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{bytes}"),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
