use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mmcu::gen::MmcuGenParams;
use mmcu::solver::{Mode, SolverConfig};
use mmcu_cli::format::{parse_instance, Instance};
use mmcu_cli::{CliError, Report};

/// Mixed Multiway Cut-Uncut solver, oracle and instance tools.
#[derive(Parser)]
#[command(name = "mmcu", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an mmcu or mixedcut instance.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Exhaustive search; bpvc files are accepted too.
    Oracle {
        file: PathBuf,
        /// Print every minimal solution.
        #[arg(long)]
        all_minimal: bool,
    },
    /// Check a witness file against an instance.
    Verify { file: PathBuf, witness: PathBuf },
    /// Rewrite an instance into another problem.
    Reduce {
        #[arg(value_enum)]
        kind: ReduceKind,
        file: PathBuf,
        /// Attach every side vertex with l+1 parallel copies (bpvc-to-mixedcut).
        #[arg(long)]
        bundled: bool,
    },
    /// Print a seeded random instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Sound)]
    mode: ModeArg,
    /// Replacement for the threshold q (heuristic mode only).
    #[arg(long)]
    q_override: Option<usize>,
    /// Check every answer; an inconsistency exits with status 3.
    #[arg(long)]
    audit: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    Sound,
    Heuristic,
}

#[derive(Copy, Clone, ValueEnum)]
enum ReduceKind {
    BpvcToMixedcut,
    MixedcutToMmcu,
}

#[derive(Subcommand)]
enum GenKind {
    RandomMmcu {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        min_n: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 14)]
        max_edges: usize,
        #[arg(long, default_value_t = 2)]
        min_terminals: usize,
        #[arg(long, default_value_t = 4)]
        max_terminals: usize,
        #[arg(long, default_value_t = 3)]
        max_classes: usize,
        #[arg(long, default_value_t = 2)]
        max_k: usize,
        #[arg(long, default_value_t = 2)]
        max_l: usize,
    },
    RandomBpvc {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        nx: usize,
        #[arg(long, default_value_t = 3)]
        ny: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, CliError> {
    parse_instance(&read(path)?)
}

fn printed(text: String) -> Report {
    Report { text, status: 0 }
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Solve { file, solver } => {
            let cfg = SolverConfig {
                mode: match solver.mode {
                    ModeArg::Sound => Mode::Sound,
                    ModeArg::Heuristic => Mode::Heuristic,
                },
                q_override: solver.q_override,
                audit: solver.audit,
            };
            cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            mmcu_cli::solve(load(&file)?, &cfg)
        }
        Command::Oracle { file, all_minimal } => mmcu_cli::oracle(load(&file)?, all_minimal),
        Command::Verify { file, witness } => mmcu_cli::verify(load(&file)?, &read(&witness)?),
        Command::Reduce { kind, file, bundled } => match kind {
            ReduceKind::BpvcToMixedcut => mmcu_cli::bpvc_to_mixedcut_file(load(&file)?, bundled).map(printed),
            ReduceKind::MixedcutToMmcu if bundled => Err(CliError::Usage("--bundled applies to bpvc-to-mixedcut".into())),
            ReduceKind::MixedcutToMmcu => mmcu_cli::mixedcut_to_mmcu_file(load(&file)?).map(printed),
        },
        Command::Gen { kind } => match kind {
            GenKind::RandomMmcu { seed, min_n, max_n, max_edges, min_terminals, max_terminals, max_classes, max_k, max_l } => {
                let params = MmcuGenParams {
                    n: min_n..=max_n,
                    max_edges,
                    terminals: min_terminals..=max_terminals,
                    max_classes,
                    max_k,
                    max_l,
                };
                mmcu_cli::gen_mmcu(seed, &params).map(printed)
            }
            GenKind::RandomBpvc { seed, nx, ny, density } => mmcu_cli::gen_bpvc(seed, nx, ny, density).map(printed),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.text);
            ExitCode::from(report.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
